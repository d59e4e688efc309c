"""Request and result models package."""
