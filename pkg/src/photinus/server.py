"""MCP server initialization and configuration."""

from fastmcp import FastMCP
from fastmcp.utilities.logging import configure_logging

from .config import settings
from .services.reduction import ReductionService
from .tools import compose_all_servers


def _initialize_server() -> FastMCP:
    """Initialize and configure the FastMCP server with all domain servers.

    Returns:
            Fully configured FastMCP server instance

    """
    server = FastMCP('photinus')

    # Configure logging
    configure_logging(level=settings.logging_level)

    # One reduction cache shared by every domain
    compose_all_servers(server, ReductionService())

    return server


# Create the main MCP server instance
mcp = _initialize_server()
