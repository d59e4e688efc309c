"""Scripts for maintenance and development tasks."""
