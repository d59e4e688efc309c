"""Network Simulation MCP Tools."""

from fastmcp import FastMCP

from ..models.photinus_models import SimulateRequest, SimulateResult
from ..services.reduction import ReductionService
from ..services.simulation import SimulationService
from ._annotations import readonly_annotations


def create_simulation_server(reduction: ReductionService) -> FastMCP:
    """Create a standalone FastMCP server for simulation tools.

    Args:
        reduction: The shared ReductionService holding cached pipelines

    Returns:
        FastMCP server instance with the simulation tool registered

    """
    simulation_service = SimulationService(reduction)

    simulation_mcp = FastMCP('simulation')

    @simulation_mcp.tool(
        tags={'simulation'},
        annotations=readonly_annotations('Simulate Network'),
    )
    async def simulate_network(req: SimulateRequest) -> SimulateResult:
        """Integrate the full, averaged or unaveraged network and summarise its final clusters.

        Initial conditions are drawn uniformly from the given ranges with the given seed.
        """
        _, result = simulation_service.simulate(req)
        return result

    return simulation_mcp
