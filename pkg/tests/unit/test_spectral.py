"""Unit tests for spectral utilities."""

import numpy as np
import pytest

from photinus.spectral import (
    FourierSeries,
    PeriodicVectorFunction,
    differentiation_matrix,
    phase_grid,
    spectral_derivative,
)


@pytest.mark.unit
class TestDifferentiation:
    """Test cases for spectral differentiation."""

    def test_matrix_differentiates_trigonometric_samples(self):
        """Test the dense matrix is exact on resolved modes."""
        theta = phase_grid(32)
        values = np.sin(3 * theta) + 0.5 * np.cos(theta)

        np.testing.assert_allclose(
            differentiation_matrix(32) @ values,
            3 * np.cos(3 * theta) - 0.5 * np.sin(theta),
            atol=1e-12,
        )

    def test_derivative_along_axis(self):
        """Test spectral_derivative acts along the requested axis."""
        theta = phase_grid(16)
        samples = np.stack([np.cos(theta), np.sin(2 * theta)], axis=1)

        derivative = spectral_derivative(samples, axis=0)

        np.testing.assert_allclose(derivative[:, 0], -np.sin(theta), atol=1e-12)
        np.testing.assert_allclose(derivative[:, 1], 2 * np.cos(2 * theta), atol=1e-12)


@pytest.mark.unit
class TestFourierSeries:
    """Test cases for scalar Fourier series."""

    def test_from_function_and_evaluate(self):
        """Test sampling and evaluation at off-grid phases."""
        series = FourierSeries.from_function(lambda t: 1 + np.cos(t) - 2 * np.sin(2 * t), modes=4)
        chi = np.array([0.1, 1.7, 4.0])

        np.testing.assert_allclose(series(chi), 1 + np.cos(chi) - 2 * np.sin(2 * chi), atol=1e-12)

    def test_coefficients(self):
        """Test coefficients follow the e^{imχ} convention and vanish beyond K."""
        series = FourierSeries.from_function(lambda t: np.sin(t), modes=2)

        assert series.coefficient(1) == pytest.approx(-0.5j)
        assert series.coefficient(-1) == pytest.approx(0.5j)
        assert series.coefficient(5) == 0

    def test_derivative(self):
        """Test the spectral derivative of a series."""
        series = FourierSeries.from_modes({-2: 0.5, 2: 0.5})  # cos 2χ

        np.testing.assert_allclose(series.derivative()(0.3), -2 * np.sin(0.6), atol=1e-12)

    def test_samples_roundtrip(self):
        """Test uniform samples reproduce the function."""
        series = FourierSeries.from_modes({-1: 1j, 0: 2.0, 1: -1j})
        theta = phase_grid(8)

        np.testing.assert_allclose(series.samples(8), series(theta), atol=1e-12)

    def test_too_many_modes_for_grid(self):
        """Test truncation refuses unresolved modes."""
        with pytest.raises(ValueError, match='cannot be resolved'):
            FourierSeries.from_samples(np.ones(8), modes=4)

    def test_tail_ratio(self):
        """Test the tail ratio measures the outermost coefficients."""
        series = FourierSeries.from_modes({-2: 0.01, 0: 1.0, 2: 0.01})

        assert series.tail_ratio() == pytest.approx(0.01)
        assert FourierSeries.zero(3).tail_ratio() == 0.0


@pytest.mark.unit
class TestPeriodicVectorFunction:
    """Test cases for vector-valued periodic functions."""

    def test_from_samples(self):
        """Test evaluation shape and values."""
        theta = phase_grid(64)
        fn = PeriodicVectorFunction.from_samples(
            np.stack([np.cos(theta), -np.sin(theta)], axis=1), modes=8
        )
        chi = np.array([[0.2, 1.0], [2.0, 3.0]])

        values = fn(chi)

        assert values.shape == (2, 2, 2)
        np.testing.assert_allclose(values[..., 0], np.cos(chi), atol=1e-12)
        np.testing.assert_allclose(fn.derivative()(chi)[..., 1], -np.cos(chi), atol=1e-12)
        assert fn.dimension == 2
        assert fn.max_mode == 8
