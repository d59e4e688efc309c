"""Test data factories for interaction functions."""

from typing import Callable

import numpy as np

from photinus.oracle import closed_form_interactions
from photinus.reduction.interactions import InteractionSet, RawKernelSet
from photinus.spectral import FourierSeries


def make_trig(constant: float, cosine: float, sine: float) -> FourierSeries:
    """Create d + a cos χ + b sin χ as a FourierSeries."""
    return FourierSeries.from_modes(
        {-1: (cosine + 1j * sine) / 2, 0: constant, 1: (cosine - 1j * sine) / 2}
    )


def make_kuramoto_interactions(
    coupling: float = 1.0, omega: float = 1.0, kappa: float = -1.0
) -> InteractionSet:
    """Create phase-only interactions H1 = coupling sin χ with H2..H6 = 0."""
    zero = FourierSeries.zero()
    return InteractionSet(
        series=(make_trig(0.0, 0.0, coupling),) + (zero,) * 5, omega=omega, kappa=kappa
    )


def make_mfcgl_interactions(c1: float = -2.0, c2: float = 1.1) -> InteractionSet:
    """Create the exact MF-CGLE interaction functions."""
    return closed_form_interactions(c1, c2)


def make_raw_kernels(
    grid: int = 16, omega: float = 1.0, kappa: float = -2.0, **functions: Callable
) -> RawKernelSet:
    """Create a RawKernelSet from kernels given as f(θi, θj); unnamed kernels are zero."""
    theta = 2 * np.pi * np.arange(grid) / grid
    theta_i, theta_j = np.meshgrid(theta, theta, indexing='ij')
    kernels = {
        f'h{k}': np.asarray(
            functions.get(f'h{k}', lambda a, b: np.zeros_like(a))(theta_i, theta_j), dtype=float
        )
        for k in range(1, 10)
    }
    return RawKernelSet(
        grid=grid,
        kernels=kernels,
        pieces={},
        spectra={name: np.fft.fft2(values) / grid**2 for name, values in kernels.items()},
        omega=omega,
        kappa=kappa,
    )
