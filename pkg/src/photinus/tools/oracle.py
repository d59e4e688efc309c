"""MF-CGLE Oracle MCP Tools.

This module provides MCP tools for the closed-form MF-CGLE boundaries and for
comparing them with the numerical pipeline.
"""

from fastmcp import FastMCP

from ..models.photinus_models import (
    CompareRequest,
    CompareResult,
    OracleRequest,
    OracleResult,
    OracleTableRequest,
)
from ..services.oracle import OracleService
from ..services.reduction import ReductionService
from ._annotations import readonly_annotations


def create_oracle_server(reduction: ReductionService) -> FastMCP:
    """Create a standalone FastMCP server for oracle tools.

    Args:
        reduction: The shared ReductionService holding cached pipelines

    Returns:
        FastMCP server instance with oracle tools registered

    """
    oracle_service = OracleService(reduction)

    oracle_mcp = FastMCP('oracle')

    @oracle_mcp.tool(
        tags={'oracle'},
        annotations=readonly_annotations('MF-CGLE Boundaries'),
    )
    async def mfcgl_boundaries(req: OracleRequest) -> OracleResult:
        """Closed-form synchrony, antisynchrony and splay boundaries of the MF-CGLE network."""
        return oracle_service.boundaries(req)

    @oracle_mcp.tool(
        tags={'oracle'},
        annotations=readonly_annotations('MF-CGLE Boundary Table'),
    )
    async def mfcgl_boundary_table(req: OracleTableRequest) -> list[dict[str, float | str]]:
        """Plot-ready rows (c1, curve, eps) of every closed-form boundary over a c1 grid."""
        return oracle_service.table(req)

    @oracle_mcp.tool(
        tags={'oracle'},
        annotations=readonly_annotations('Compare With Oracle'),
    )
    async def compare_with_oracle(req: CompareRequest) -> CompareResult:
        """Maximum deviation between pipeline and closed-form boundaries over a c1 grid.

        This runs the full MF-CGLE reduction for every c1 and can take a minute.
        """
        return oracle_service.compare(req)

    return oracle_mcp
