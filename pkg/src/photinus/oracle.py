"""Closed-form results for the mean-field complex Ginzburg-Landau network.

Everything here is exact for the MF-CGLE node with diffusive twist coupling: the
response curves, the six interaction functions, the marginal stability boundaries of the
full network, of its phase-isostable approximation and of the second and third order phase
reductions. Boundaries given implicitly are returned as the real roots of their
polynomials, computed from companion-matrix eigenvalues.
"""

import logging
from typing import Callable

import numpy as np
from pydantic import BaseModel, Field

from .errors import DomainError
from .reduction.interactions import InteractionSet
from .spectral import FourierSeries

logger = logging.getLogger(__name__)

MFCGL_KAPPA = -2.0

BOUNDARY_CURVES = (
    'eps_s',
    'eps_a',
    'eps_0',
    'eps_a_pi',
    'eps_0_pi',
    'eps_s_2',
    'eps_s_3',
    'eps_s_3_star',
    'eps_a_2',
    'eps_a_3',
    'eps_0_2',
    'eps_0_3',
    'eps_0_3_star',
)


def real_roots(coefficients: list[float], tol: float = 1e-9) -> list[float]:
    """Sorted real roots of a polynomial given with descending coefficients."""
    coefficients = np.trim_zeros(np.asarray(coefficients, dtype=float), 'f')
    if len(coefficients) < 2:
        return []
    roots = np.roots(coefficients)
    scale = max(1.0, float(np.max(np.abs(roots))))
    return sorted(float(r.real) for r in roots if abs(r.imag) <= tol * scale)


def splay_quintic(c1: float, c2: float) -> np.ndarray:
    """Descending coefficients of the large-N splay boundary polynomial."""
    s = 1 + c1 * c2
    return np.array(
        [
            (c2**2 + 9) * s * (c1 * c2 - 5),
            8 * c2**3 * c1 + (5 - 19 * c1**2) * c2**2 + 152 * c1 * c2 + 9 * c1**2 + 177,
            -4 * c2**3 * c1 + 8 * (2 * c1**2 + 1) * c2**2 - 260 * c1 * c2 - 20 * c1**2 - 284,
            -4 * (3 + c1**2) * c2**2 + 224 * c1 * c2 + 16 * c1**2 + 232,
            4 * (c2**2 - c1**2) - 96 * s,
            16 * s,
        ]
    )


class BoundarySet(BaseModel):
    """All closed-form marginal stability values of the MF-CGLE network at one (c1, c2)."""

    c1: float
    c2: float
    eps_s: float = Field(..., description='Synchrony, full network (= phase-isostable)')
    eps_a: list[float] = Field(..., description='Antisynchrony (N = 2), full network')
    eps_0: list[float] = Field(..., description='Splay (N >= 3), full network')
    eps_a_pi: list[float] = Field(..., description='Antisynchrony, phase-isostable')
    eps_0_pi: list[float] = Field(..., description='Splay, phase-isostable (quintic)')
    eps_s_2: list[float] = Field(..., description='Synchrony, second-order phase reduction')
    eps_s_3: list[float] = Field(..., description='Synchrony, third-order phase reduction')
    eps_s_3_star: list[float] = Field(..., description='Synchrony, isochron-based third order')
    eps_a_2: list[float] = Field(..., description='Antisynchrony, second-order reduction')
    eps_a_3: list[float] = Field(..., description='Antisynchrony, third-order reduction')
    eps_0_2: list[float] = Field(..., description='Splay, second-order reduction')
    eps_0_3: list[float] = Field(..., description='Splay, third-order reduction')
    eps_0_3_star: list[float] = Field(..., description='Splay, isochron-based third order')

    def curve(self, name: str) -> list[float]:
        """Roots of one named curve as a list."""
        value = getattr(self, name)
        return [value] if isinstance(value, float) else list(value)


def exact_boundaries(c1: float, c2: float) -> BoundarySet:
    """Evaluate every closed-form boundary polynomial at (c1, c2)."""
    s = 1 + c1 * c2
    b = 1 + c2**2
    return BoundarySet(
        c1=c1,
        c2=c2,
        eps_s=-2 * s / (1 + c1**2),
        eps_a=real_roots([c1**2 + 2 * c1 * c2 + 3, -2 * s, 0.0]),
        eps_0=real_roots(
            [
                2 * c1**2 + 8 * c1 * c2 - c2**2 + 9,
                -(c1**2) - 12 * c1 * c2 + c2**2 - 12,
                4 * s,
            ]
        ),
        eps_a_pi=real_roots([c1**2 * c2**2 - 2 * c1 * c2 - 3, 4 * c1 * c2 + c1**2 + 5, -2 * s]),
        eps_0_pi=real_roots(list(splay_quintic(c1, c2))),
        eps_s_2=real_roots([c1**2 * b, 2 * s]),
        eps_s_3=real_roots([(c1 * c2 - 1) * b * c1**2, 2 * b * c1**2, 4 * s]),
        eps_s_3_star=real_roots([b * c1**3 * c2, b * c1**2, 2 * s]),
        eps_a_2=real_roots([c1**2 * b, -2 * s]),
        eps_a_3=real_roots([b * c1**2 * (c1 * c2 - 3), -2 * b * c1**2, 4 * s]),
        eps_0_2=real_roots([(c1**2 - 1) * b, -4 * s]),
        eps_0_3=real_roots(
            [
                b * (c2 * c1**3 - 3 * c1 * c2 - 7 * c1**2 + 5),
                4 * (1 - c1**2) * b,
                16 * s,
            ]
        ),
        eps_0_3_star=real_roots(
            [
                b * (2 - 2 * c1**2 - 3 * c1 * c2 + c1**3 * c2),
                2 * b * (1 - c1**2),
                8 * s,
            ]
        ),
    )


def sigma_at_boundary(c1: float, c2: float, epsilon: float, tol: float = 1e-6) -> float:
    """Frequency σ of the purely imaginary splay pair μ = ±iσ on the quintic boundary.

    Raises:
        DomainError: If ``epsilon`` is not a root of the quintic, or is 1 or 2/3

    """
    if epsilon == 0:
        return 0.0
    coefficients = splay_quintic(c1, c2)
    powers = epsilon ** np.arange(5, -1, -1)
    residual = float(coefficients @ powers)
    scale = float(np.abs(coefficients) @ np.abs(powers))
    if abs(residual) > tol * scale:
        logger.error(f'eps={epsilon} is not on the splay boundary (residual {residual:.3e})')
        raise DomainError(f'epsilon={epsilon} is not a root of the splay boundary polynomial')
    denominator = 2 * (epsilon - 1) * (3 * epsilon - 2)
    if abs(denominator) < 1e-12:
        logger.error(f'sigma undefined at eps={epsilon}')
        raise DomainError(f'sigma is undefined at epsilon={epsilon}')
    numerator = (c2**2 * c1 - 2 * c2 + 3 * c1) * epsilon**2 + 2 * (c2 - c1) * (2 * epsilon - 1)
    return epsilon * numerator / denominator


def splay_blocks_large_n(c1: float, c2: float, epsilon: float) -> np.ndarray:
    """The q = 1 block Λ1 of the large-N splay Jacobian.

    Raises:
        DomainError: At ε = 1, where the splay orbit collapses

    """
    if epsilon == 1:
        raise DomainError('The splay state does not exist at epsilon=1')
    a = (1 + c2**2) ** -0.5
    return np.array(
        [
            [
                -epsilon * 1j * (1j * (1 + c1 * c2) + c2 - c1) / 2,
                epsilon * a * (1 + c2**2) * (1j - c1) / 2,
            ],
            [
                epsilon * 1j * (1 + 1j * c1) / (2 * a * (epsilon - 1)),
                MFCGL_KAPPA + epsilon * ((1j - c1) * c2 + 1j * c1 + 5) / 2,
            ],
        ]
    )


def _check_c2(c2: float) -> None:
    if c2 <= 0:
        logger.error(f'Closed forms need c2 > 0, got {c2}')
        raise DomainError(f'The MF-CGLE node oscillates only for c2 > 0, got {c2}')


def closed_form_responses(c2: float) -> dict[str, Callable[[np.ndarray], np.ndarray]]:
    """g(1), g(2), Z(0..2) and I(0..2) of the MF-CGLE orbit as functions of θ.

    Raises:
        DomainError: If c2 <= 0

    """
    _check_c2(c2)
    a = (1 + c2**2) ** -0.5

    def radial(theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return np.stack([np.cos(theta), -np.sin(theta)], axis=-1)

    def angular(theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return np.stack([np.sin(theta), np.cos(theta)], axis=-1)

    def combine(r: float, p: float) -> Callable[[np.ndarray], np.ndarray]:
        return lambda theta: r * radial(theta) + p * angular(theta)

    return {
        'curve': combine(1.0, 0.0),
        'g1': combine(a, a * c2),
        'g2': combine(a**2 * (3 - c2**2) / 2, 2 * a**2 * c2),
        'z0': combine(c2, -1.0),
        'z1': combine(0.0, 1 / a),
        'z2': combine(-c2 / 2, 0.5),
        'i0': combine(1 / a, 0.0),
        'i1': combine(-3.0, c2),
        'i2': combine(a * (3 - c2**2) / 2, -2 * a * c2),
    }


def _trig(constant: float, cosine: float, sine: float) -> FourierSeries:
    """d + a cos χ + b sin χ as a Fourier series."""
    return FourierSeries.from_modes(
        {-1: (cosine + 1j * sine) / 2, 0: constant, 1: (cosine - 1j * sine) / 2}
    )


def closed_form_interactions(c1: float, c2: float) -> InteractionSet:
    """H1..H6 of the MF-CGLE network.

    Raises:
        DomainError: If c2 <= 0

    """
    _check_c2(c2)
    a = (1 + c2**2) ** -0.5
    h2 = a * (1 + c2**2)
    series = (
        _trig(-(c2 - c1), c2 - c1, 1 + c1 * c2),
        _trig(0.0, h2 * c1, -h2),
        _trig(0.0, -h2 * c1, h2),
        _trig(-1 / a, 1 / a, c1 / a),
        _trig(2.0, c1 * c2 - 3, -(3 * c1 + c2)),
        _trig(0.0, 1 - c1 * c2, c1 + c2),
    )
    return InteractionSet(series=series, omega=c2, kappa=MFCGL_KAPPA)


def boundary_rows(c2: float, c1_values: np.ndarray) -> list[dict[str, float | str]]:
    """Plot-ready rows (c1, curve, eps) of every boundary over a c1 grid."""
    rows: list[dict[str, float | str]] = []
    for c1 in np.asarray(c1_values, dtype=float):
        boundaries = exact_boundaries(float(c1), c2)
        for name in BOUNDARY_CURVES:
            for eps in boundaries.curve(name):
                rows.append({'c1': float(c1), 'curve': name, 'eps': eps})
    return rows
