"""Integration tests comparing the numerical pipeline with the MF-CGLE closed forms.

These run the whole reduction for each coupling twist c1 on the cached MF-CGLE
responses and overlay the boundaries found by the sweeps on the exact curves.
"""

import numpy as np
import pytest

from photinus.models.photinus_models import CompareRequest, SimulateRequest
from photinus.nodes.registry import ModelDescriptor
from photinus.oracle import exact_boundaries
from photinus.services import OracleService, SimulationService
from photinus.simulation.clusters import reduce_trajectory


@pytest.mark.integration
@pytest.mark.mfcgl
@pytest.mark.oracle
@pytest.mark.slow
class TestOracleComparison:
    """The pipeline reproduces the exact boundaries within 1e-5."""

    @pytest.mark.parametrize('state', ['synchrony', 'antisynchrony'])
    def test_phase_isostable_boundaries(self, reduction_service, state):
        """Test synchrony and antisynchrony boundaries over a c1 grid."""
        request = CompareRequest(
            c2=1.1, state=state, c1_min=-3.0, c1_max=1.0, points=5, eps_points=240
        )

        result = OracleService(reduction_service).compare(request)

        assert result.rows
        assert result.passed, result.rows

    @pytest.mark.parametrize('state', ['splay', 'splay-inf'])
    def test_splay_boundaries(self, reduction_service, state):
        """Test N = 5 and large-N splay boundaries against the quintic roots."""
        request = CompareRequest(
            c2=1.1, state=state, n_nodes=5, c1_min=-3.0, c1_max=1.0, points=3, eps_points=240
        )

        result = OracleService(reduction_service).compare(request)

        assert result.curve == 'eps_0_pi'
        assert result.passed, result.rows

    def test_higher_order_synchrony(self, reduction_service):
        """Test second-order synchrony boundaries against their closed form."""
        request = CompareRequest(c2=1.1, state='synchrony', order=2, c1_min=-3.0, points=3)

        result = OracleService(reduction_service).compare(request)

        assert result.curve == 'eps_s_2'
        assert result.max_deviation < 1e-5

    def test_sweep_finds_eps_s(self, reduction_service):
        """Test the closed-form eps_s is among the rows at c1 = -2."""
        request = CompareRequest(c2=1.1, c1_min=-2.0, c1_max=-2.0, points=2, eps_points=240)

        result = OracleService(reduction_service).compare(request)

        assert {row.oracle for row in result.rows} == {exact_boundaries(-2.0, 1.1).eps_s}


@pytest.mark.integration
@pytest.mark.mfcgl
@pytest.mark.simulation
@pytest.mark.slow
class TestFullSimulation:
    """Full MF-CGLE networks reduced back onto phase-isostable coordinates."""

    def test_synchrony_is_attracting_above_eps_s(self, reduction_service, mfcgl_pipeline):
        """Test nearby nodes synchronise at ε = 0.8 > eps_s and settle on the orbit."""
        request = SimulateRequest(
            model=mfcgl_pipeline.descriptor,
            mode='full',
            n_nodes=3,
            epsilon=0.8,
            t_end=60.0,
            dt_out=0.5,
            theta_range=(0.0, 0.5),
            psi_range=(-0.01, 0.01),
            seed=2,
        )

        trajectory, result = SimulationService(reduction_service).simulate(request)

        assert result.clusters.classification == 'synchrony'
        reduced = reduce_trajectory(trajectory, mfcgl_pipeline.responses, start=55.0)
        assert reduced.metadata['projected'] is True
        assert np.all(np.abs(reduced.isostables) < 0.05)

    def test_default_descriptor(self, reduction_service):
        """Test the default MF-CGLE parameters give the period 2π/1.1."""
        pipeline = reduction_service.pipeline(ModelDescriptor(model='mfcgl'))

        assert pipeline.orbit.period == pytest.approx(2 * np.pi / 1.1, rel=1e-8)
