"""Unit tests for the reduction pipeline, checked against the exact MF-CGLE results."""

import numpy as np
import pytest

from photinus.errors import DimensionMismatchError
from photinus.nodes.base import CouplingModel
from photinus.oracle import MFCGL_KAPPA, closed_form_interactions, closed_form_responses
from photinus.reduction.hierarchy import (
    RESPONSE_NAMES,
    hierarchy_residuals,
    lift_state,
    normalization_residuals,
    project_state,
)
from photinus.reduction.interactions import (
    INTERACTION_NAMES,
    expand_coupling,
    export_interactions,
    interaction_coefficients,
    phase_only,
    quadrature_interaction,
)
from photinus.reduction.orbit import export_orbit

C1, C2 = -2.0, 1.1
THETA = np.linspace(0.0, 2 * np.pi, 13)
CHI = np.linspace(-np.pi, np.pi, 9)


@pytest.mark.unit
@pytest.mark.mfcgl
class TestOrbit:
    """Test cases for the periodic orbit of the MF-CGLE node."""

    def test_period_and_kappa(self, mfcgl_pipeline):
        """Test T = 2π/c2 and κ = -2."""
        orbit = mfcgl_pipeline.orbit

        assert orbit.period == pytest.approx(2 * np.pi / C2, rel=1e-8)
        assert orbit.frequency == pytest.approx(C2, rel=1e-8)
        assert orbit.kappa == pytest.approx(MFCGL_KAPPA, abs=1e-6)

    def test_samples_on_unit_circle(self, mfcgl_pipeline):
        """Test the orbit is x(θ) = (cos θ, -sin θ)."""
        orbit = mfcgl_pipeline.orbit
        theta = orbit.phases

        expected = np.stack([np.cos(theta), -np.sin(theta)], axis=-1)
        np.testing.assert_allclose(orbit.samples, expected, atol=1e-7)

    def test_export(self, mfcgl_pipeline):
        """Test orbit rows and metadata."""
        rows, metadata = export_orbit(mfcgl_pipeline.orbit)

        assert len(rows) == mfcgl_pipeline.orbit.grid
        assert list(rows[0]) == ['theta', 'x1', 'x2']
        assert metadata['period'] == mfcgl_pipeline.orbit.period
        assert metadata['exponents'][0] == 0.0


@pytest.mark.unit
@pytest.mark.mfcgl
class TestResponses:
    """Test cases for the adjoint hierarchy."""

    @pytest.mark.parametrize('name', RESPONSE_NAMES)
    def test_matches_closed_form(self, mfcgl_pipeline, name):
        """Test every response curve against its exact expression."""
        exact = closed_form_responses(C2)[name]
        numeric = getattr(mfcgl_pipeline.responses, name)

        np.testing.assert_allclose(numeric(THETA), exact(THETA), atol=1e-6)

    def test_residuals(self, mfcgl_pipeline):
        """Test the response ODEs and normalisations hold on the orbit grid."""
        responses, model = mfcgl_pipeline.responses, mfcgl_pipeline.model

        assert max(hierarchy_residuals(responses, model).values()) < 1e-6
        assert max(normalization_residuals(responses, model).values()) < 1e-6

    def test_projection_inverts_lift(self, mfcgl_pipeline):
        """Test project_state recovers (θ, ψ) of a lifted state."""
        responses = mfcgl_pipeline.responses
        x = lift_state(responses, np.array(1.0), np.array(0.05))

        theta, psi = project_state(responses, x)

        assert theta == pytest.approx(1.0, abs=1e-8)
        assert psi == pytest.approx(0.05, abs=1e-8)


@pytest.mark.unit
@pytest.mark.mfcgl
class TestInteractions:
    """Test cases for kernels and interaction functions."""

    @pytest.mark.parametrize('k', range(1, 7))
    def test_matches_closed_form(self, mfcgl_pipeline, k):
        """Test H1..H6 against their exact first-harmonic forms."""
        exact = closed_form_interactions(C1, C2)

        np.testing.assert_allclose(
            mfcgl_pipeline.interactions.value(k, CHI), exact.value(k, CHI), atol=1e-6
        )

    @pytest.mark.parametrize('k', [1, 4, 5])
    def test_quadrature_agrees_with_averaging(self, mfcgl_pipeline, k):
        """Test direct quadrature of the kernel diagonal reproduces H_k."""
        direct = quadrature_interaction(
            mfcgl_pipeline.responses, mfcgl_pipeline.coupling, k, CHI, grid=64
        )

        np.testing.assert_allclose(direct, mfcgl_pipeline.interactions.value(k, CHI), atol=1e-8)

    def test_dimension_mismatch(self, mfcgl_pipeline):
        """Test a coupling of another state dimension is rejected."""
        coupling = CouplingModel(name='diffusive3', dimension=3, rhs=lambda xi, xj: xj - xi)

        with pytest.raises(DimensionMismatchError):
            expand_coupling(mfcgl_pipeline.responses, coupling, grid=16)

    def test_phase_only(self, mfcgl_pipeline):
        """Test the classical reduction keeps H1 only."""
        reduced = phase_only(mfcgl_pipeline.interactions)

        np.testing.assert_allclose(reduced.value(1, CHI), mfcgl_pipeline.interactions.value(1, CHI))
        for k in range(2, 7):
            np.testing.assert_allclose(reduced.value(k, CHI), 0.0)

    def test_exports(self, mfcgl_pipeline):
        """Test tables and coefficient listings of H1..H6."""
        rows = export_interactions(mfcgl_pipeline.interactions, samples=32)
        coefficients = interaction_coefficients(mfcgl_pipeline.interactions)

        assert len(rows) == 32
        assert list(rows[0]) == ['chi', *INTERACTION_NAMES]
        assert set(coefficients) == set(INTERACTION_NAMES)
        assert set(coefficients['H1']) == {'modes', 'real', 'imag'}
