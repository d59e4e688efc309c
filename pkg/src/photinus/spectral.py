"""Truncated Fourier representations of 2π-periodic functions.

This module provides the scalar ``FourierSeries`` used for interaction functions, the
vector-valued ``PeriodicVectorFunction`` used for orbits and response curves, and the
periodic spectral differentiation operators shared by the collocation solvers.
"""

import logging
from typing import Callable, Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import circulant

logger = logging.getLogger(__name__)


def wavenumbers(size: int) -> np.ndarray:
    """Integer mode numbers of an FFT of the given length, with the Nyquist mode zeroed."""
    k = np.fft.fftfreq(size, d=1.0 / size)
    if size % 2 == 0:
        k[size // 2] = 0.0
    return k


def differentiation_matrix(size: int) -> np.ndarray:
    """Dense d/dθ on a uniform periodic grid of ``size`` points (θ_m = 2πm/size)."""
    column = np.real(np.fft.ifft(1j * wavenumbers(size)))
    return circulant(column)


def spectral_derivative(samples: np.ndarray, axis: int = 0) -> np.ndarray:
    """Differentiate uniformly sampled periodic data with respect to θ along ``axis``."""
    samples = np.asarray(samples, dtype=float)
    k = wavenumbers(samples.shape[axis])
    shape = [1] * samples.ndim
    shape[axis] = -1
    spectrum = np.fft.fft(samples, axis=axis) * (1j * k.reshape(shape))
    return np.real(np.fft.ifft(spectrum, axis=axis))


def phase_grid(size: int) -> np.ndarray:
    """Uniform grid θ_m = 2πm/size, m = 0..size-1."""
    return 2 * np.pi * np.arange(size) / size


def _truncate(spectrum: np.ndarray, modes: int) -> np.ndarray:
    """Pick modes -modes..modes (normalised by the grid size) from an FFT along axis 0."""
    size = spectrum.shape[0]
    if 2 * modes >= size:
        raise ValueError(f'{modes} modes cannot be resolved on {size} samples')
    index = np.arange(-modes, modes + 1) % size
    return spectrum[index] / size


def _synthesise(coefficients: np.ndarray, size: int) -> np.ndarray:
    """Sample a truncated series (modes along axis 0) on a uniform grid of ``size`` points."""
    modes = (coefficients.shape[0] - 1) // 2
    if 2 * modes >= size:
        raise ValueError(f'{modes} modes cannot be sampled on {size} points without aliasing')
    spectrum = np.zeros((size,) + coefficients.shape[1:], dtype=complex)
    spectrum[np.arange(-modes, modes + 1) % size] = coefficients
    return np.real(np.fft.ifft(spectrum, axis=0)) * size


class FourierSeries(BaseModel):
    """Real 2π-periodic scalar function stored by its coefficients for modes -K..K."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coefficients: np.ndarray = Field(..., description='Complex coefficients for modes -K..K')

    @property
    def max_mode(self) -> int:
        """Highest retained mode K."""
        return (len(self.coefficients) - 1) // 2

    @property
    def modes(self) -> np.ndarray:
        """Mode numbers -K..K."""
        return np.arange(-self.max_mode, self.max_mode + 1)

    @classmethod
    def from_samples(cls, samples: np.ndarray, modes: int) -> 'FourierSeries':
        """Build from uniform samples over [0, 2π)."""
        spectrum = np.fft.fft(np.asarray(samples, dtype=float))
        coefficients = _truncate(spectrum, modes)
        coefficients = 0.5 * (coefficients + np.conj(coefficients[::-1]))
        return cls(coefficients=coefficients)

    @classmethod
    def from_function(
        cls, fn: Callable[[np.ndarray], np.ndarray], modes: int, grid: int | None = None
    ) -> 'FourierSeries':
        """Build by sampling ``fn`` on a grid (default 4 * modes + 4 points)."""
        grid = grid or 4 * modes + 4
        return cls.from_samples(fn(phase_grid(grid)), modes)

    @classmethod
    def from_modes(cls, terms: Mapping[int, complex], modes: int | None = None) -> 'FourierSeries':
        """Build from explicit coefficients; negative modes must be given explicitly."""
        top = max([abs(m) for m in terms] + [modes or 0])
        coefficients = np.zeros(2 * top + 1, dtype=complex)
        for m, value in terms.items():
            coefficients[m + top] = value
        return cls(coefficients=coefficients)

    @classmethod
    def zero(cls, modes: int = 0) -> 'FourierSeries':
        """The identically zero function."""
        return cls(coefficients=np.zeros(2 * modes + 1, dtype=complex))

    def __call__(self, chi: np.ndarray | float) -> np.ndarray:
        """Evaluate at arbitrary phases."""
        chi = np.asarray(chi, dtype=float)
        basis = np.exp(1j * np.multiply.outer(chi, self.modes))
        return np.real(basis @ self.coefficients)

    def coefficient(self, mode: int) -> complex:
        """Coefficient of e^{i mode χ}; zero beyond the truncation."""
        if abs(mode) > self.max_mode:
            return 0j
        return complex(self.coefficients[mode + self.max_mode])

    def derivative(self, order: int = 1) -> 'FourierSeries':
        """Spectral derivative of the given order."""
        return FourierSeries(coefficients=self.coefficients * (1j * self.modes) ** order)

    def samples(self, size: int) -> np.ndarray:
        """Values on the uniform grid of ``size`` points."""
        return _synthesise(self.coefficients, size)

    def tail_ratio(self) -> float:
        """Largest magnitude at |m| = K relative to the largest coefficient."""
        peak = np.max(np.abs(self.coefficients))
        if peak == 0:
            return 0.0
        return float(max(abs(self.coefficients[0]), abs(self.coefficients[-1])) / peak)


class PeriodicVectorFunction(BaseModel):
    """Real 2π-periodic function of θ with values in R^n, truncated to modes |m| <= K."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coefficients: np.ndarray = Field(
        ..., description='Complex coefficients, shape (2K + 1, n), modes -K..K along axis 0'
    )

    @property
    def max_mode(self) -> int:
        """Highest retained mode K."""
        return (self.coefficients.shape[0] - 1) // 2

    @property
    def dimension(self) -> int:
        """Number of components n."""
        return self.coefficients.shape[1]

    @property
    def modes(self) -> np.ndarray:
        """Mode numbers -K..K."""
        return np.arange(-self.max_mode, self.max_mode + 1)

    @classmethod
    def from_samples(
        cls, samples: np.ndarray, modes: int, name: str | None = None, tail_tol: float = 0.0
    ) -> 'PeriodicVectorFunction':
        """Build from uniform samples of shape (M, n) over [0, 2π).

        A warning is logged when the retained tail exceeds ``tail_tol`` of the peak.
        """
        spectrum = np.fft.fft(np.asarray(samples, dtype=float), axis=0)
        coefficients = _truncate(spectrum, modes)
        coefficients = 0.5 * (coefficients + np.conj(coefficients[::-1]))
        function = cls(coefficients=coefficients)
        if tail_tol > 0 and function.tail_ratio() > tail_tol:
            logger.warning(
                f'{name or "periodic function"} not resolved by {modes} modes '
                f'(tail ratio {function.tail_ratio():.2e})'
            )
        return function

    def __call__(self, theta: np.ndarray | float) -> np.ndarray:
        """Evaluate at arbitrary phases; result has shape theta.shape + (n,)."""
        theta = np.asarray(theta, dtype=float)
        basis = np.exp(1j * np.multiply.outer(theta, self.modes))
        return np.real(basis @ self.coefficients)

    def derivative(self) -> 'PeriodicVectorFunction':
        """Spectral d/dθ."""
        return PeriodicVectorFunction(coefficients=self.coefficients * (1j * self.modes)[:, None])

    def samples(self, size: int) -> np.ndarray:
        """Values on the uniform grid of ``size`` points, shape (size, n)."""
        return _synthesise(self.coefficients, size)

    def tail_ratio(self) -> float:
        """Largest magnitude at |m| = K relative to the largest coefficient."""
        peak = np.max(np.abs(self.coefficients))
        if peak == 0:
            return 0.0
        edge = np.max(np.abs(self.coefficients[[0, -1]]))
        return float(edge / peak)
