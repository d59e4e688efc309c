"""Oracle Service for photinus.

This service evaluates the MF-CGLE closed forms and compares them with boundaries
computed by the numerical pipeline over a grid of coupling twists c1.
"""

import logging

import numpy as np

from ..errors import ConfigurationError
from ..higher_order import build_higher_order, hop_boundaries
from ..locking.sweep import StateSelection, sweep
from ..models.photinus_models import (
    CompareRequest,
    CompareResult,
    CompareRow,
    OracleRequest,
    OracleResult,
    OracleTableRequest,
)
from ..nodes.mfcgl import make_mfcgl_node
from ..nodes.registry import ModelDescriptor
from ..oracle import boundary_rows, exact_boundaries, sigma_at_boundary
from .reduction import ReductionService

logger = logging.getLogger(__name__)

ZERO_ROOT = 1e-9


class OracleService:
    """Service for closed-form boundaries and pipeline comparisons."""

    def __init__(self, reduction: ReductionService) -> None:
        """Initialize the oracle service with a shared ReductionService."""
        self._reduction = reduction

    def boundaries(self, req: OracleRequest) -> OracleResult:
        """Closed-form boundaries at one (c1, c2) and σ at each quintic root.

        Args:
                req: Request containing c1 and c2

        Returns:
                The boundary set and the Hopf frequencies of the splay boundary

        """
        boundaries = exact_boundaries(req.c1, req.c2)
        sigma = [sigma_at_boundary(req.c1, req.c2, eps) for eps in boundaries.eps_0_pi]
        return OracleResult(boundaries=boundaries, sigma=sigma)

    def table(self, req: OracleTableRequest) -> list[dict[str, float | str]]:
        """Rows (c1, curve, eps) of every closed-form boundary over a c1 grid."""
        return boundary_rows(req.c2, req.c1_values)

    def _pipeline_boundaries(self, req: CompareRequest, c1: float, responses) -> list[float]:
        _, coupling = make_mfcgl_node(c1, req.c2)
        kernels, interactions = self._reduction.coupled(responses, coupling, req.kernel_grid)

        if req.order is not None:
            if req.state == 'splay-inf':
                raise ConfigurationError('Higher-order comparisons need a finite network')
            state, n_nodes = {
                'synchrony': ('synchrony', 2),
                'antisynchrony': ('splay', 2),
                'splay': ('splay', req.n_nodes),
            }[req.state]
            return hop_boundaries(state, req.order, n_nodes, build_higher_order(kernels))

        selection = {
            'synchrony': StateSelection(state='synchrony', n_nodes=2),
            'antisynchrony': StateSelection(state='antisynchrony', n_nodes=2),
            'splay': StateSelection(state='splay', n_nodes=req.n_nodes),
            'splay-inf': StateSelection(state='splay', n_nodes=None),
        }[req.state]
        eps_values = np.linspace(req.eps_min, req.eps_max, req.eps_points)
        result = sweep(selection, interactions, eps_values)
        return [row.eps for row in result.bifurcations if row.kind != 'limit-point']

    def compare(self, req: CompareRequest) -> CompareResult:
        """Match every oracle root inside the ε window with the nearest pipeline boundary.

        Args:
                req: Request with c2, the c1 grid, the state and the ε window

        Returns:
                Per-root deviations and their maximum

        """
        _, responses = self._reduction.responses(
            ModelDescriptor(model='mfcgl', params={'c2': req.c2})
        )
        rows: list[CompareRow] = []
        for c1 in req.c1_values:
            c1 = float(c1)
            roots = [
                r
                for r in exact_boundaries(c1, req.c2).curve(req.curve)
                if req.eps_min < r < req.eps_max and abs(r) > ZERO_ROOT
            ]
            if not roots:
                continue
            found = self._pipeline_boundaries(req, c1, responses)
            for root in roots:
                nearest = min(found, key=lambda eps: abs(eps - root)) if found else None
                deviation = abs(nearest - root) if nearest is not None else float('inf')
                rows.append(CompareRow(c1=c1, oracle=root, pipeline=nearest, deviation=deviation))

        max_deviation = max((row.deviation for row in rows), default=0.0)
        logger.info(
            f'Compared {req.curve} at c2={req.c2} over {len(rows)} root(s): '
            f'max deviation {max_deviation:.3e}'
        )
        return CompareResult(curve=req.curve, rows=rows, max_deviation=max_deviation, tol=req.tol)
