"""Reduction MCP Tools.

This module provides MCP tools for finding periodic orbits and computing the
phase-isostable interaction functions of a node model.
"""

from fastmcp import FastMCP

from ..models.photinus_models import OrbitRequest, OrbitResult, ReduceRequest, ReduceResult
from ..services.reduction import ReductionService
from ._annotations import readonly_annotations


def create_reduction_server(reduction: ReductionService) -> FastMCP:
    """Create a standalone FastMCP server for the reduction tools.

    Args:
        reduction: The shared ReductionService holding cached pipelines

    Returns:
        FastMCP server instance with reduction tools registered

    """
    reduction_mcp = FastMCP('reduction')

    @reduction_mcp.tool(
        tags={'reduction'},
        annotations=readonly_annotations('Find Periodic Orbit'),
    )
    async def find_orbit(req: OrbitRequest) -> OrbitResult:
        """Find the stable limit cycle of a node and report its period T and Floquet exponent κ.

        Use 'mfcgl' (params c1, c2) or 'morris_lecar'. The result is cached per model.
        """
        return reduction.get_orbit(req)

    @reduction_mcp.tool(
        tags={'reduction'},
        annotations=readonly_annotations('Reduce Node'),
    )
    async def reduce_node(req: ReduceRequest) -> ReduceResult:
        """Compute response curves and the interaction functions H1..H6 of a node.

        Returns hierarchy residuals, Fourier coefficients of H1..H6 and a sampled table.
        """
        return reduction.reduce(req)

    return reduction_mcp
