"""Higher-Order Reduction MCP Tools."""

from fastmcp import FastMCP

from ..models.photinus_models import HopRequest, HopResult
from ..services.higher_order import HigherOrderService
from ..services.reduction import ReductionService
from ._annotations import readonly_annotations


def create_higher_order_server(reduction: ReductionService) -> FastMCP:
    """Create a standalone FastMCP server for the higher-order reduction tool.

    Args:
        reduction: The shared ReductionService holding cached pipelines

    Returns:
        FastMCP server instance with the higher-order tool registered

    """
    higher_order_service = HigherOrderService(reduction)

    higher_order_mcp = FastMCP('higher-order')

    @higher_order_mcp.tool(
        tags={'higher-order'},
        annotations=readonly_annotations('Higher-Order Boundaries'),
    )
    async def higher_order_boundaries(req: HopRequest) -> HopResult:
        """Boundaries of synchrony or splay in the phase reduction truncated at ε^order."""
        return higher_order_service.hop(req)

    return higher_order_mcp
