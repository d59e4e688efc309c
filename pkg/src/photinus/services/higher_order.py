"""Higher-Order Service for photinus.

This service assembles the non-pairwise interaction functions of a cached pipeline and
reports synchrony and splay boundaries of the truncated phase reduction.
"""

from ..higher_order import (
    HigherOrderKernels,
    build_higher_order,
    hop_boundaries,
    hop_stability,
    synchrony_coefficients,
)
from ..models.photinus_models import HopRequest, HopResult
from ..nodes.registry import ModelDescriptor
from .reduction import ReductionService


class HigherOrderService:
    """Service for the higher-order phase reduction."""

    def __init__(self, reduction: ReductionService) -> None:
        """Initialize the service with a shared ReductionService."""
        self._reduction = reduction
        self._kernels: dict[tuple, HigherOrderKernels] = {}

    def kernels(self, descriptor: ModelDescriptor) -> HigherOrderKernels:
        """Higher-order kernels of ``descriptor``, computed once."""
        key = descriptor.cache_key()
        if key not in self._kernels:
            self._kernels[key] = build_higher_order(self._reduction.pipeline(descriptor).kernels)
        return self._kernels[key]

    def hop(self, req: HopRequest) -> HopResult:
        """Boundaries (and optionally the spectrum) of the truncated reduction.

        Args:
                req: Request with the model, state, order and network size

        Returns:
                Real nonzero boundary values of ε

        """
        hok = self.kernels(req.model)
        state, n_nodes = ('splay', 2) if req.state == 'antisynchrony' else (req.state, req.n_nodes)
        result = HopResult(
            state=req.state,
            order=req.order,
            n_nodes=n_nodes,
            boundaries=hop_boundaries(state, req.order, n_nodes, hok),
        )
        if state == 'synchrony':
            result.synchrony_coefficients = synchrony_coefficients(hok, req.order).tolist()
        if req.epsilon is not None:
            report = hop_stability(state, req.order, n_nodes, hok, req.epsilon)
            result.verdict = report.verdict
            result.critical_real_part = report.critical_real_part
        return result
