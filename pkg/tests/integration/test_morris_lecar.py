"""Integration tests for the Morris-Lecar network.

The Morris-Lecar orbit has no closed form, so these check the reduction against
published reference values of the period, the slow Floquet exponent and the
stable two-cluster state of 200 nodes.
"""

import numpy as np
import pytest

from photinus.locking.network import LockedState, NetworkSpec
from photinus.locking.sweep import StateSelection, analyse_state, sweep
from photinus.locking.two_cluster import two_cluster_solve
from photinus.models.photinus_models import LockedRequest, SimulateRequest
from photinus.nodes.registry import ModelDescriptor
from photinus.services import LockingService, SimulationService
from photinus.simulation.clusters import detect_clusters, reduce_trajectory
from photinus.simulation.integrate import (
    Trajectory,
    perturbed_state,
    random_initial_conditions,
    simulate_phase_isostable,
)

MORRIS_LECAR = ModelDescriptor(model='morris_lecar')


def locked_residual(trajectory: Trajectory, state: LockedState) -> float:
    """Largest deviation of the final relative phases and isostable values from a state."""
    theta = trajectory.unwrapped_phases[-1]
    relative = (theta - theta[0]) - (state.phases - state.phases[0])
    phase_error = np.abs(np.angle(np.exp(1j * relative)))
    psi_error = np.abs(trajectory.isostables[-1] - state.isostables)
    return float(max(phase_error.max(), psi_error.max()))


@pytest.mark.integration
@pytest.mark.morris_lecar
@pytest.mark.slow
class TestMorrisLecar:
    """Reference values of the Morris-Lecar reduction."""

    def test_orbit(self, ml_pipeline):
        """Test T = 8.1654 and κ = -0.4094."""
        assert ml_pipeline.orbit.period == pytest.approx(8.1654, abs=1e-3)
        assert ml_pipeline.orbit.kappa == pytest.approx(-0.4094, abs=1e-3)

    def test_two_cluster_28_172(self, ml_reduction_service, ml_pipeline):
        """Test the stable (28, 172) two-cluster state at ε = 0.065."""
        request = LockedRequest(
            model=MORRIS_LECAR, state='two-cluster', epsilon=0.065, n_nodes=200, n_a=28
        )

        result = LockingService(ml_reduction_service).locked(request)

        stable = [s for s in result.states if s.verdict == 'stable']
        assert stable
        state = min(stable, key=lambda s: abs(s.details['chi'] - 2.1407))
        assert state.tag == 'two-cluster(28,172)'
        assert state.details['chi'] == pytest.approx(2.1407, abs=1e-2)
        assert state.details['psi_a'] == pytest.approx(-0.1694, abs=1e-2)
        assert state.details['psi_b'] == pytest.approx(-0.1868, abs=1e-2)

    def test_pair_synchrony(self, ml_pipeline):
        """Test two-node synchrony has equal ψ and a finite spectrum."""
        state, report = analyse_state(
            StateSelection(state='synchrony', n_nodes=2), ml_pipeline.interactions, 0.02
        )

        np.testing.assert_allclose(state.isostables, state.isostables[0])
        assert np.all(np.isfinite(report.eigenvalues))


@pytest.mark.integration
@pytest.mark.morris_lecar
@pytest.mark.locking
@pytest.mark.slow
class TestMorrisLecarPair:
    """Bifurcation set of two coupled Morris-Lecar nodes."""

    @staticmethod
    def located(result, kind: str) -> list[float]:
        """Refined ε of every bifurcation row of one kind."""
        return [row.eps for row in result.bifurcations if row.kind == kind]

    def test_synchrony(self, ml_pipeline):
        """Test the transverse-zero crossing at 0.0934 and the Hopf point at -0.407."""
        result = sweep(
            StateSelection(state='synchrony', n_nodes=2),
            ml_pipeline.interactions,
            np.linspace(-0.5, 0.15, 66),
        )

        assert any(abs(eps - 0.0934) < 2e-3 for eps in self.located(result, 'transverse-zero'))
        assert any(abs(eps + 0.407) < 5e-3 for eps in self.located(result, 'hopf-pair'))

    def test_antisynchrony_limit_point(self, ml_pipeline):
        """Test antisynchrony ends at ε∞ = 0.0961."""
        result = sweep(
            StateSelection(state='antisynchrony'),
            ml_pipeline.interactions,
            np.linspace(0.0, 0.12, 25),
        )

        assert any(abs(eps - 0.0961) < 2e-3 for eps in self.located(result, 'limit-point'))

    def test_phase_locked_branch(self, ml_pipeline):
        """Test the (1, 1) branch has its limit point at 0.0339 and a Hopf point at 0.0484."""
        result = sweep(
            StateSelection(state='two-cluster', n_nodes=2, n_a=1),
            ml_pipeline.interactions,
            np.linspace(0.02, 0.09, 71),
        )

        assert any(abs(eps - 0.0339) < 2e-3 for eps in self.located(result, 'limit-point'))
        assert any(abs(eps - 0.0484) < 2e-3 for eps in self.located(result, 'hopf-pair'))


@pytest.mark.integration
@pytest.mark.morris_lecar
@pytest.mark.simulation
@pytest.mark.slow
class TestMorrisLecarSimulation:
    """Simulations of Morris-Lecar networks against the locked-state predictions."""

    def test_reduced_network_settles_in_two_clusters(self, ml_pipeline):
        """Test 200 nodes from near synchrony end in the (28, 172) state at ε = 0.065."""
        theta0, psi0 = random_initial_conditions(
            200, (0.283725, 0.283735), (2.9794, 2.9798), seed=0
        )

        trajectory = simulate_phase_isostable(
            ml_pipeline.interactions,
            NetworkSpec.global_coupling(200, 0.065),
            theta0,
            psi0,
            t_end=400.0,
            dt_out=1.0,
            rtol=1e-8,
            atol=1e-8,
            seed=0,
        )

        early = trajectory.window(30.0, 40.0)
        assert np.max(np.abs(trajectory.isostables[early])) < 0.5
        summary = detect_clusters(trajectory, tol_psi=0.01)
        assert sorted(summary.sizes) == [28, 172]
        assert sorted(summary.mean_isostables) == [
            pytest.approx(-0.1868, abs=2e-2),
            pytest.approx(-0.1694, abs=2e-2),
        ]

    @pytest.mark.parametrize('epsilon', [0.05, 0.065])
    def test_stable_pair_states_attract_nearby_runs(self, ml_pipeline, epsilon):
        """Test every attracting two-node state is recovered after a 1e-3 perturbation."""
        interactions = ml_pipeline.interactions
        candidates = [
            analyse_state(StateSelection(state='synchrony', n_nodes=2), interactions, epsilon),
            analyse_state(StateSelection(state='antisynchrony'), interactions, epsilon),
            *two_cluster_solve(1, 1, interactions, epsilon),
        ]
        stable = [(state, report) for state, report in candidates if report.attracting]
        assert stable

        for state, report in stable:
            theta0, psi0 = perturbed_state(state, 1e-3, seed=1)
            t_end = 10.0 / -report.critical_real_part
            trajectory = simulate_phase_isostable(
                interactions,
                NetworkSpec.global_coupling(2, epsilon),
                theta0,
                psi0,
                t_end=t_end,
                dt_out=t_end / 100,
            )

            assert locked_residual(trajectory, state) < 1e-4, state.tag

    def test_full_pair_is_quasiperiodic(self, ml_reduction_service, ml_pipeline):
        """Test two full nodes at ε = 0.25 keep a fluctuating phase difference."""
        request = SimulateRequest(
            model=MORRIS_LECAR,
            mode='full',
            n_nodes=2,
            epsilon=0.25,
            t_end=500.0,
            dt_out=0.5,
            theta_range=(0.0, 0.3),
            seed=5,
        )

        trajectory, _ = SimulationService(ml_reduction_service).simulate(request)
        projected = reduce_trajectory(trajectory, ml_pipeline.responses, start=250.0)

        theta = projected.unwrapped_phases
        assert np.var(theta[:, 1] - theta[:, 0]) > 1e-3

    def test_full_network_settles_in_few_clusters(self, ml_reduction_service):
        """Test 200 full nodes from near synchrony settle in two or three clusters."""
        request = SimulateRequest(
            model=MORRIS_LECAR,
            mode='full',
            n_nodes=200,
            epsilon=0.065,
            t_end=400.0,
            dt_out=1.0,
            theta_range=(0.283725, 0.283735),
            psi_range=(2.9794, 2.9798),
            tol_psi=0.01,
        )

        _, result = SimulationService(ml_reduction_service).simulate(request)

        assert 2 <= result.clusters.n_clusters <= 3
