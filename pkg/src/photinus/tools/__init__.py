"""MCP Tools for photinus.

This module coordinates the composition of all MCP tool servers organized by domain.
Uses FastMCP's native mount() for static server composition.
"""

from fastmcp import FastMCP

from ..services.reduction import ReductionService
from .higher_order import create_higher_order_server
from .locking import create_locking_server
from .oracle import create_oracle_server
from .reduction import create_reduction_server
from .simulation import create_simulation_server


def compose_all_servers(mcp: FastMCP, reduction: ReductionService) -> None:
    """Compose all domain-specific MCP servers into the main server using static composition.

    Args:
            mcp: The main FastMCP server instance
            reduction: The ReductionService shared by every domain

    """
    mcp.mount(create_reduction_server(reduction))
    mcp.mount(create_locking_server(reduction))
    mcp.mount(create_higher_order_server(reduction))
    mcp.mount(create_oracle_server(reduction))
    mcp.mount(create_simulation_server(reduction))
