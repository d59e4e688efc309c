"""Interaction kernels and averaged interaction functions.

This module provides ``expand_coupling``, which evaluates the coupling expanded to
quadratic order in the isostable coordinate as the two-variable kernels h1..h9, and
``average_to_H``, which averages the first six kernels along the diagonal into the
2π-periodic interaction functions H1..H6 of the phase-difference dynamics.
"""

import logging
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..config import settings
from ..errors import DimensionMismatchError, ResolutionError
from ..nodes.base import CouplingModel
from ..spectral import FourierSeries, phase_grid
from .hierarchy import ResponseSet

logger = logging.getLogger(__name__)

KERNEL_NAMES = tuple(f'h{k}' for k in range(1, 10))
INTERACTION_NAMES = tuple(f'H{k}' for k in range(1, 7))


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum('...a,...a->...', a, b)


def _apply(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    return np.einsum('...ab,...b->...a', matrix, vector)


def _quadratic(hessian: np.ndarray, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return np.einsum('...qab,...a,...b->...q', hessian, left, right)


def kernel_values(
    responses: ResponseSet,
    coupling: CouplingModel,
    theta_i: np.ndarray,
    theta_j: np.ndarray,
) -> dict[str, np.ndarray]:
    """Evaluate h1..h9 and the expansion pieces K1, K2, L at broadcastable phase pairs.

    Raises:
        DimensionMismatchError: If responses and coupling live in different dimensions

    """
    if responses.dimension != coupling.dimension:
        logger.error(
            f'Responses of dimension {responses.dimension} vs coupling {coupling.dimension}'
        )
        raise DimensionMismatchError(
            f'Responses have dimension {responses.dimension}, coupling {coupling.dimension}'
        )

    theta_i = np.asarray(theta_i, dtype=float)
    theta_j = np.asarray(theta_j, dtype=float)
    xi, xj = responses.curve(theta_i), responses.curve(theta_j)
    g1i, g1j = responses.g1(theta_i), responses.g1(theta_j)
    g2i, g2j = responses.g2(theta_i), responses.g2(theta_j)
    z0, z1, z2 = responses.z0(theta_i), responses.z1(theta_i), responses.z2(theta_i)
    i0, i1 = responses.i0(theta_i), responses.i1(theta_i)

    direct = coupling(xi, xj)
    j1, j2 = coupling.jacobians(xi, xj)
    j1g1 = _apply(j1, g1i)
    j2g1 = _apply(j2, g1j)

    k1 = _apply(j1, g2i)
    k2 = _apply(j2, g2j)
    if coupling.linear:
        cross = np.zeros_like(direct)
    else:
        h11, h12, h21, h22 = coupling.hessian_blocks(xi, xj)
        k1 = k1 + 0.5 * _quadratic(h11, g1i, g1i)
        k2 = k2 + 0.5 * _quadratic(h22, g1j, g1j)
        cross = 0.5 * (_quadratic(h12, g1i, g1j) + _quadratic(h21, g1j, g1i))

    return {
        'h1': _dot(z0, direct),
        'h2': _dot(z0, j1g1) + _dot(z1, direct),
        'h3': _dot(z0, j2g1),
        'h4': _dot(i0, direct),
        'h5': _dot(i0, j1g1) + _dot(i1, direct),
        'h6': _dot(i0, j2g1),
        'h7': _dot(z0, k1) + _dot(z1, j1g1) + _dot(z2, direct),
        'h8': _dot(z0, k2),
        'h9': _dot(z0, cross) + _dot(z1, j2g1),
        'K1': k1,
        'K2': k2,
        'L': cross,
    }


class RawKernelSet(BaseModel):
    """Kernels h1..h9 sampled on a uniform grid in (θ_i, θ_j) with their 2-D spectra."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    grid: int = Field(..., description='Samples per axis G')
    kernels: dict[str, np.ndarray] = Field(..., description='h1..h9 samples, shape (G, G)')
    pieces: dict[str, np.ndarray] = Field(..., description='K1, K2, L samples, shape (G, G, n)')
    spectra: dict[str, np.ndarray] = Field(
        ..., description='2-D Fourier coefficients of h1..h9, FFT ordering'
    )
    omega: float = Field(..., description='Frequency of the underlying orbit')
    kappa: float = Field(..., description='Slow Floquet exponent of the underlying orbit')

    @property
    def modes(self) -> np.ndarray:
        """Signed mode numbers along each axis, FFT ordering."""
        return np.fft.fftfreq(self.grid, d=1.0 / self.grid).astype(int)

    def tail_ratio(self, name: str) -> float:
        """Largest coefficient in the outer band |m| > 3G/8 relative to the peak."""
        spectrum = np.abs(self.spectra[name])
        peak = spectrum.max()
        if peak == 0:
            return 0.0
        outer = np.abs(self.modes) > 3 * self.grid // 8
        band = max(spectrum[outer, :].max(), spectrum[:, outer].max())
        return float(band / peak)

    def evaluate(self, name: str, theta_i: np.ndarray, theta_j: np.ndarray) -> np.ndarray:
        """Evaluate a kernel from its spectrum at paired phases of equal shape."""
        theta_i, theta_j = np.broadcast_arrays(
            np.asarray(theta_i, dtype=float), np.asarray(theta_j, dtype=float)
        )
        basis_i = np.exp(1j * np.multiply.outer(theta_i.ravel(), self.modes))
        basis_j = np.exp(1j * np.multiply.outer(theta_j.ravel(), self.modes))
        values = np.einsum('pa,ab,pb->p', basis_i, self.spectra[name], basis_j)
        return np.real(values).reshape(theta_i.shape)


def expand_coupling(
    responses: ResponseSet, coupling: CouplingModel, grid: int | None = None
) -> RawKernelSet:
    """Sample h1..h9 on a ``grid`` x ``grid`` mesh and transform them.

    Raises:
        DimensionMismatchError: If responses and coupling live in different dimensions

    """
    grid = grid or settings.kernel_grid
    theta = phase_grid(grid)
    values = kernel_values(responses, coupling, theta[:, None], theta[None, :])
    kernels = {
        name: np.broadcast_to(values[name], (grid, grid)).copy() for name in KERNEL_NAMES
    }
    n = responses.dimension
    pieces = {
        name: np.broadcast_to(values[name], (grid, grid, n)).copy() for name in ('K1', 'K2', 'L')
    }
    spectra = {name: np.fft.fft2(kernels[name]) / grid**2 for name in KERNEL_NAMES}
    logger.info(f'Expanded {coupling.name} coupling on a {grid}x{grid} kernel grid')
    return RawKernelSet(
        grid=grid,
        kernels=kernels,
        pieces=pieces,
        spectra=spectra,
        omega=responses.omega,
        kappa=responses.kappa,
    )


class InteractionSet(BaseModel):
    """The six averaged interaction functions H1..H6 with the node's ω and κ."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    series: tuple[FourierSeries, ...] = Field(..., min_length=6, max_length=6)
    omega: float = Field(..., description='Natural frequency ω')
    kappa: float = Field(..., description='Slow Floquet exponent κ')

    def function(self, k: int) -> FourierSeries:
        """H_k for k = 1..6."""
        return self.series[k - 1]

    def value(self, k: int, chi: np.ndarray | float) -> np.ndarray:
        """H_k(χ)."""
        return self.series[k - 1](chi)

    def slope(self, k: int, chi: np.ndarray | float) -> np.ndarray:
        """H_k'(χ)."""
        return self.series[k - 1].derivative()(chi)

    def coefficient(self, k: int, mode: int) -> complex:
        """Fourier coefficient (H_k)_mode."""
        return self.series[k - 1].coefficient(mode)

    @property
    def max_mode(self) -> int:
        """Largest retained mode across H1..H6."""
        return max(fn.max_mode for fn in self.series)


def average_to_H(
    kernels: RawKernelSet, modes: int | None = None, tail_tol: float | None = None
) -> InteractionSet:
    """Average h1..h6 along the diagonal: H_k(χ) = (1/2π) ∫ h_k(u, u + χ) du.

    The coefficient of e^{ibχ} is the kernel coefficient at mode (-b, b).

    Raises:
        ResolutionError: If a kernel spectrum has not decayed in its outer band

    """
    modes = min(modes or settings.fourier_modes, kernels.grid // 2 - 1)
    tail_tol = tail_tol or settings.tail_tol
    series = []
    for k in range(1, 7):
        name = f'h{k}'
        ratio = kernels.tail_ratio(name)
        if ratio > tail_tol:
            logger.error(f'{name} not resolved on a {kernels.grid} grid (tail {ratio:.2e})')
            raise ResolutionError(
                f'Kernel {name} is not resolved on a {kernels.grid}-point grid '
                f'(tail ratio {ratio:.2e})'
            )
        b = np.arange(-modes, modes + 1)
        coefficients = kernels.spectra[name][(-b) % kernels.grid, b % kernels.grid]
        coefficients = 0.5 * (coefficients + np.conj(coefficients[::-1]))
        series.append(FourierSeries(coefficients=coefficients))
    return InteractionSet(series=tuple(series), omega=kernels.omega, kappa=kernels.kappa)


def quadrature_interaction(
    responses: ResponseSet,
    coupling: CouplingModel,
    k: int,
    chi: np.ndarray | float,
    grid: int | None = None,
) -> np.ndarray:
    """H_k(χ) by direct trapezoid quadrature of the kernel along the shifted diagonal."""
    grid = grid or settings.kernel_grid
    u = phase_grid(grid)
    chi = np.asarray(chi, dtype=float)
    theta_i = u.reshape((1,) * chi.ndim + (grid,))
    theta_j = theta_i + chi[..., None]
    values = kernel_values(responses, coupling, theta_i, theta_j)[f'h{k}']
    return np.broadcast_to(values, chi.shape + (grid,)).mean(axis=-1)


def phase_only(interactions: InteractionSet) -> InteractionSet:
    """Keep H1 and zero H2..H6 (classical phase reduction)."""
    zero = FourierSeries.zero()
    return interactions.model_copy(
        update={'series': (interactions.series[0],) + (zero,) * 5}
    )


def interaction_coefficients(interactions: InteractionSet) -> dict[str, dict[str, Any]]:
    """Fourier coefficients of H1..H6 as JSON-ready lists."""
    return {
        name: {
            'modes': fn.modes.tolist(),
            'real': np.real(fn.coefficients).tolist(),
            'imag': np.imag(fn.coefficients).tolist(),
        }
        for name, fn in zip(INTERACTION_NAMES, interactions.series)
    }


def export_interactions(interactions: InteractionSet, samples: int = 256) -> list[dict[str, float]]:
    """Tabulate H1..H6 on a uniform χ grid."""
    chi = phase_grid(samples)
    values = [fn(chi) for fn in interactions.series]
    return [
        {'chi': float(c), **{name: float(v[m]) for name, v in zip(INTERACTION_NAMES, values)}}
        for m, c in enumerate(chi)
    ]
