"""Services layer for photinus.

This module contains the services that orchestrate the numerical pipeline for the CLI
and the MCP tools. Each service handles one domain and shares a ReductionService, which
memoises the orbit -> responses -> interactions pipeline per model descriptor.
"""

from .higher_order import HigherOrderService
from .locking import LockingService
from .oracle import OracleService
from .reduction import Pipeline, ReductionService
from .simulation import SimulationService

__all__ = [
    'HigherOrderService',
    'LockingService',
    'OracleService',
    'Pipeline',
    'ReductionService',
    'SimulationService',
]
