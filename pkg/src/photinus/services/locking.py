"""Locking Service for photinus.

This service answers existence, stability and sweep requests for locked states of the
phase-isostable network built from a cached reduction pipeline.
"""

import numpy as np

from ..locking.existence import jacobian, solve_existence
from ..locking.network import NetworkSpec
from ..locking.sweep import StateSelection, analyse_state, sweep
from ..locking.two_cluster import two_cluster_search
from ..models.photinus_models import (
    LockedRequest,
    LockedResult,
    LockedSummary,
    SweepRequest,
    SweepSummary,
)
from .reduction import ReductionService


class LockingService:
    """Service for locked-state analyses."""

    def __init__(self, reduction: ReductionService) -> None:
        """Initialize the locking service with a shared ReductionService."""
        self._reduction = reduction

    def _network(self, req: LockedRequest) -> NetworkSpec:
        if req.matrix_file:
            return NetworkSpec.from_matrix_file(req.matrix_file, req.epsilon)
        return NetworkSpec.global_coupling(req.n_nodes or 2, req.epsilon)

    def locked(self, req: LockedRequest) -> LockedResult:
        """Existence and stability of the requested state class.

        Args:
                req: Request with the model, state class, network size and ε

        Returns:
                Every state found (two-cluster requests may return several) with verdicts

        """
        interactions = self._reduction.pipeline(req.model).interactions

        if req.state == 'generic':
            net = self._network(req)
            state = solve_existence(np.asarray(req.phases), net, interactions)
            report = jacobian(state, net, interactions)
            return LockedResult(states=[LockedSummary.from_state(state, report)])

        if req.state == 'two-cluster':
            search = two_cluster_search(
                req.n_a, req.n_nodes - req.n_a, interactions, req.epsilon
            )
            return LockedResult(
                states=[LockedSummary.from_state(s, r) for s, r in search.solutions],
                asymptotes=search.asymptotes,
            )

        weights = self._network(req).weights if req.matrix_file else None
        selection = StateSelection(
            state=req.state,
            n_nodes=req.n_nodes,
            n_clusters=req.n_clusters,
            cluster_size=req.cluster_size,
            weights=weights,
        )
        state, report = analyse_state(selection, interactions, req.epsilon)
        return LockedResult(states=[LockedSummary.from_state(state, report)])

    def sweep(self, req: SweepRequest) -> SweepSummary:
        """Follow a state class across an ε range and locate its bifurcations.

        Args:
                req: Request with the model, state class and ε range

        Returns:
                Rows in ε order, bifurcations and the ε values where the state is absent

        """
        interactions = self._reduction.pipeline(req.model).interactions
        selection = StateSelection(
            state=req.state,
            n_nodes=req.n_nodes,
            n_clusters=req.n_clusters,
            cluster_size=req.cluster_size,
            n_a=req.n_a,
        )
        return SweepSummary.from_sweep(sweep(selection, interactions, req.eps_values))
