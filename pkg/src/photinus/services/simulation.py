"""Simulation Service for photinus.

This service draws seeded initial conditions, integrates the full or reduced network
and summarises the outcome with cluster detection.
"""

from ..locking.network import NetworkSpec
from ..models.photinus_models import SimulateRequest, SimulateResult
from ..reduction.hierarchy import lift_state
from ..simulation.clusters import detect_clusters, order_parameter, reduce_trajectory
from ..simulation.integrate import (
    Trajectory,
    random_initial_conditions,
    simulate_full,
    simulate_phase_isostable,
)
from .reduction import ReductionService


class SimulationService:
    """Service for network simulations."""

    def __init__(self, reduction: ReductionService) -> None:
        """Initialize the simulation service with a shared ReductionService."""
        self._reduction = reduction

    def simulate(self, req: SimulateRequest) -> tuple[Trajectory, SimulateResult]:
        """Integrate the requested network and detect clusters at the end of the run.

        Full-model runs start from the lifted states x^γ(θ) + ψ g(1)(θ) + ψ² g(2)(θ) and
        are projected back onto (θ, ψ) inside the detection window.

        Args:
                req: Request with the model, mode, network, ε, horizon and initial ranges

        Returns:
                The trajectory and its summary

        """
        pipeline = self._reduction.pipeline(req.model)
        if req.matrix_file:
            net = NetworkSpec.from_matrix_file(req.matrix_file, req.epsilon)
        else:
            net = NetworkSpec.global_coupling(req.n_nodes, req.epsilon)
        theta0, psi0 = random_initial_conditions(
            net.size, req.theta_range, req.psi_range, req.seed
        )

        if req.mode == 'full':
            x0 = lift_state(pipeline.responses, theta0, psi0)
            trajectory = simulate_full(
                pipeline.model,
                pipeline.coupling,
                net,
                x0,
                req.t_end,
                req.dt_out,
                seed=req.seed,
            )
            start = req.window[0] if req.window else 0.9 * float(trajectory.times[-1])
            reduced = reduce_trajectory(trajectory, pipeline.responses, start=start)
        else:
            trajectory = simulate_phase_isostable(
                pipeline.interactions,
                net,
                theta0,
                psi0,
                req.t_end,
                req.dt_out,
                averaged=req.mode == 'reduced',
                kernels=pipeline.kernels,
                seed=req.seed,
            )
            reduced = trajectory

        clusters = detect_clusters(reduced, req.window, req.tol_phase, req.tol_psi)
        result = SimulateResult(
            mode=req.mode,
            t_final=float(trajectory.times[-1]),
            clusters=clusters,
            order_parameter=order_parameter(reduced, float(reduced.times[-1])),
            metadata=trajectory.metadata,
        )
        return trajectory, result
