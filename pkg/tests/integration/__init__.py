# Integration tests for the reduction pipeline, MCP tools and CLI
