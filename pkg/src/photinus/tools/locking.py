"""Locked-State MCP Tools.

This module provides MCP tools for existence and stability of phase-locked states and
for coupling-strength sweeps.
"""

from fastmcp import FastMCP

from ..models.photinus_models import LockedRequest, LockedResult, SweepRequest, SweepSummary
from ..services.locking import LockingService
from ..services.reduction import ReductionService
from ._annotations import readonly_annotations


def create_locking_server(reduction: ReductionService) -> FastMCP:
    """Create a standalone FastMCP server for locked-state tools.

    Args:
        reduction: The shared ReductionService holding cached pipelines

    Returns:
        FastMCP server instance with locked-state tools registered

    """
    locking_service = LockingService(reduction)

    locking_mcp = FastMCP('locking')

    @locking_mcp.tool(
        tags={'locking'},
        annotations=readonly_annotations('Analyse Locked State'),
    )
    async def analyse_locked_state(req: LockedRequest) -> LockedResult:
        """Existence and linear stability of synchrony, splay, balanced or two-cluster states.

        Two-cluster requests return every root χ in (0, 2π) with its verdict.
        """
        return locking_service.locked(req)

    @locking_mcp.tool(
        tags={'locking'},
        annotations=readonly_annotations('Sweep Coupling Strength'),
    )
    async def sweep_coupling(req: SweepRequest) -> SweepSummary:
        """Follow a state class over an ε range and locate Hopf, zero and limit-point crossings."""
        return locking_service.sweep(req)

    return locking_mcp
