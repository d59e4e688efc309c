"""Unit tests for the higher-order phase reduction."""

import numpy as np
import pytest

from photinus.errors import InvalidFilterError, UnsupportedOrderError
from photinus.higher_order import (
    build_higher_order,
    compute_q_kernels,
    hop_boundaries,
    hop_stability,
    splay_row_terms,
    synchrony_coefficients,
)
from tests.fixtures.interactions import make_raw_kernels


def sine_difference(theta_i, theta_j):
    """Kernel sin(θj - θi)."""
    return np.sin(theta_j - theta_i)


@pytest.fixture
def kuramoto_hok():
    """Kernels reducing to H̄1 = sin χ with nothing beyond first order."""
    return build_higher_order(make_raw_kernels(h1=sine_difference), modes=3)


@pytest.fixture
def second_order_hok():
    """H̄1 = sin χ plus H̄2 = -sin(χ)/κ from a constant isostable drive."""
    kernels = make_raw_kernels(
        kappa=-2.0,
        h1=sine_difference,
        h2=sine_difference,
        h4=lambda a, b: np.ones_like(a),
    )
    return build_higher_order(kernels, modes=3)


@pytest.mark.unit
@pytest.mark.higher_order
class TestQKernels:
    """Test cases for the filtered isostable kernels."""

    def test_first_order_filter(self):
        """Test q(1) = Re(e^{iθi} / (iω - κ)) for h4 = cos θi."""
        kernels = make_raw_kernels(omega=1.5, kappa=-0.5, h4=lambda a, b: np.cos(a))
        hok = compute_q_kernels(kernels, modes=3)
        theta = np.linspace(0, 2 * np.pi, 7)

        expected = np.real(np.exp(1j * theta) / (1.5j + 0.5))

        np.testing.assert_allclose(hok.q(1, theta, 0.3), expected, atol=1e-12)
        assert hok.grid == 20

    def test_modes_limited_by_kernel_grid(self):
        """Test the truncation never exceeds the kernel resolution."""
        hok = compute_q_kernels(make_raw_kernels(grid=16), modes=50)

        assert hok.modes == 7

    @pytest.mark.parametrize('kappa', [0.0, 0.3])
    def test_non_decaying_filter(self, kappa):
        """Test κ >= 0 is rejected."""
        with pytest.raises(InvalidFilterError):
            compute_q_kernels(make_raw_kernels(kappa=kappa), modes=3)


@pytest.mark.unit
@pytest.mark.higher_order
class TestSynchrony:
    """Test cases for the synchrony expansion ξ(ε)."""

    def test_first_order_only(self, kuramoto_hok):
        """Test a pure sine H̄1 gives ξ = ε."""
        np.testing.assert_allclose(
            synchrony_coefficients(kuramoto_hok), [1.0, 0.0, 0.0], atol=1e-12
        )

    def test_second_order_term(self, second_order_hok):
        """Test x2 = -1/κ for the constant isostable drive."""
        np.testing.assert_allclose(
            synchrony_coefficients(second_order_hok, order=2), [1.0, 0.5], atol=1e-12
        )

    def test_stability(self, kuramoto_hok):
        """Test synchrony eigenvalues 0 and -ξ (multiplicity N - 1)."""
        report = hop_stability('synchrony', 1, 4, kuramoto_hok, 0.1)

        assert report.verdict == 'stable'
        assert report.details['xi'] == pytest.approx(0.1)
        assert np.sum(np.isclose(report.eigenvalues, -0.1)) == 3

    def test_boundaries(self, kuramoto_hok, second_order_hok):
        """Test roots of ξ(ε)/ε at each truncation."""
        assert hop_boundaries('synchrony', 1, 2, kuramoto_hok) == []
        assert hop_boundaries('synchrony', 2, 2, second_order_hok) == pytest.approx([-2.0])
        assert hop_boundaries('synchrony', 3, 2, second_order_hok) == pytest.approx([-2.0])

    def test_unsupported_order(self, kuramoto_hok):
        """Test truncations beyond third order are rejected."""
        with pytest.raises(UnsupportedOrderError):
            synchrony_coefficients(kuramoto_hok, order=4)


@pytest.mark.unit
@pytest.mark.higher_order
class TestSplay:
    """Test cases for splay in the higher-order reduction."""

    def test_row_terms(self, kuramoto_hok):
        """Test first-order circulant entries H̄1'(2πj/N)/N."""
        rows = splay_row_terms(kuramoto_hok, 3, order=2)

        phases = 2 * np.pi * np.arange(1, 4) / 3
        np.testing.assert_allclose(rows[0], np.cos(phases) / 3, atol=1e-12)
        np.testing.assert_allclose(rows[1], 0.0, atol=1e-12)

    def test_sine_splay_is_unstable(self, kuramoto_hok):
        """Test λ_1 = ε/2 for H̄1 = sin χ."""
        report = hop_stability('splay', 1, 3, kuramoto_hok, 0.1)

        assert report.verdict == 'unstable'
        assert report.critical_real_part == pytest.approx(0.05)

    def test_boundaries(self, second_order_hok):
        """Test splay boundaries are nonzero and deduplicated across p."""
        roots = hop_boundaries('splay', 2, 3, second_order_hok)

        assert len(roots) == len(set(roots))
        assert 0.0 not in roots
