"""Higher-order phase reduction with non-pairwise interactions.

The isostable coordinate is slaved to the phases order by order in ε; its first two
orders are the filtered kernels q(1), q(2), q(3). Substituting them into the phase
equation and averaging gives the interaction functions H̄1 (one phase difference),
H̄2, H̄3 (two) and H̄4..H̄8 (three). Everything is kept spectral on a grid of 6K + 2
points per axis, which is alias free for the products of K-mode kernels involved.
"""

import logging
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .config import settings
from .errors import InvalidFilterError, UnsupportedOrderError
from .locking.network import StabilityReport, stability_report
from .reduction.interactions import RawKernelSet

logger = logging.getLogger(__name__)

HopState = Literal['synchrony', 'splay']

PAIRWISE = (2, 3)
TRIPLE = (4, 5, 6, 7, 8)


def _modes(grid: int) -> np.ndarray:
    return np.fft.fftfreq(grid, d=1.0 / grid)


def _embed(spectrum: np.ndarray, source_grid: int, modes: int, grid: int) -> np.ndarray:
    """Copy the |m| <= modes block of a 2-D FFT-ordered spectrum onto another grid."""
    m = np.arange(-modes, modes + 1)
    out = np.zeros((grid, grid), dtype=complex)
    out[np.ix_(m % grid, m % grid)] = spectrum[np.ix_(m % source_grid, m % source_grid)]
    return out


def _samples(coefficients: np.ndarray) -> np.ndarray:
    """Real samples of an FFT-ordered multidimensional coefficient array."""
    return np.real(np.fft.ifftn(coefficients)) * coefficients.size


def _coefficients(samples: np.ndarray) -> np.ndarray:
    return np.fft.fftn(samples) / samples.size


def _evaluate(coefficients: np.ndarray, *thetas: np.ndarray | float) -> np.ndarray:
    """Evaluate a d-variable Fourier series at broadcastable phase arrays."""
    arrays = np.broadcast_arrays(*[np.asarray(t, dtype=float) for t in thetas])
    shape = arrays[0].shape
    m = _modes(coefficients.shape[0])
    bases = [np.exp(1j * np.multiply.outer(a.ravel(), m)) for a in arrays]
    letters = 'abcd'[: coefficients.ndim]
    subscripts = letters + ',' + ','.join(f'p{c}' for c in letters) + '->p'
    return np.real(np.einsum(subscripts, coefficients, *bases)).reshape(shape)


class HigherOrderKernels(BaseModel):
    """Filtered kernels q(1..3) and averaged functions H̄1..H̄8, all as FFT-ordered spectra."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    modes: int = Field(..., ge=1, description='Mode truncation K of the input kernels')
    grid: int = Field(..., description='Points per axis, 6K + 2')
    omega: float
    kappa: float
    q1: np.ndarray = Field(..., description='q(1)(θi, θk) coefficients, shape (G, G)')
    q2: np.ndarray = Field(..., description='q(2)(θi, θk, θl) coefficients, shape (G, G, G)')
    q3: np.ndarray = Field(..., description='q(3)(θi, θk, θl) coefficients, shape (G, G, G)')
    hbar: dict[int, np.ndarray] = Field(
        default_factory=dict, description='H̄1..H̄8 coefficients keyed by index'
    )

    def q(self, order: int, *thetas: np.ndarray | float) -> np.ndarray:
        """Evaluate q(order) at the given phases."""
        return _evaluate((self.q1, self.q2, self.q3)[order - 1], *thetas)

    def value(self, index: int, *differences: np.ndarray | float) -> np.ndarray:
        """Evaluate H̄_index at phase differences (χ), (χ, η) or (χ, η, ξ)."""
        return _evaluate(self.hbar[index], *differences)

    def gradient_sum_at_origin(self, index: int) -> float:
        """Sum of all first partial derivatives of H̄_index at the origin."""
        coefficients = self.hbar[index]
        m = _modes(self.grid)
        total = np.zeros(coefficients.shape)
        for axis in range(coefficients.ndim):
            shape = [1] * coefficients.ndim
            shape[axis] = self.grid
            total = total + m.reshape(shape)
        return float(np.real(np.sum(1j * total * coefficients)))


def compute_q_kernels(
    kernels: RawKernelSet,
    kappa: float | None = None,
    omega: float | None = None,
    modes: int | None = None,
) -> HigherOrderKernels:
    """Filter the isostable kernels into q(1), q(2) and q(3).

    A kernel mode with total index ν is retarded by e^{κs - iνωs}; integrating over s ≥ 0
    divides it by iνω - κ.

    Raises:
        InvalidFilterError: If κ >= 0 (the integrals do not converge)

    """
    kappa = kernels.kappa if kappa is None else kappa
    omega = kernels.omega if omega is None else omega
    if kappa >= 0:
        logger.error(f'Exponential filter needs kappa < 0, got {kappa}')
        raise InvalidFilterError(f'Slaved isostable kernels need kappa < 0, got {kappa}')
    modes = min(modes or settings.hop_modes, kernels.grid // 2 - 1)
    grid = 6 * modes + 2
    m = _modes(grid)

    for name in ('h4', 'h5', 'h6'):
        spectrum = np.abs(kernels.spectra[name])
        signed = kernels.modes
        outside = (np.abs(signed)[:, None] > modes) | (np.abs(signed)[None, :] > modes)
        peak = spectrum.max()
        if peak > 0 and spectrum[outside].max(initial=0.0) > settings.tail_tol * peak:
            logger.warning(
                f'{name} has content beyond {modes} modes '
                f'({spectrum[outside].max() / peak:.2e} of peak); truncating'
            )

    h4, h5, h6 = (
        _embed(kernels.spectra[name], kernels.grid, modes, grid) for name in ('h4', 'h5', 'h6')
    )
    q1 = h4 / (1j * (m[:, None] + m[None, :]) * omega - kappa)
    q1_samples = _samples(q1)
    h5_samples, h6_samples = _samples(h5), _samples(h6)

    total = m[:, None, None] + m[None, :, None] + m[None, None, :]
    filter_3d = 1j * total * omega - kappa
    forcing_2 = q1_samples[:, None, :] * h5_samples[:, :, None]
    forcing_3 = q1_samples[None, :, :] * h6_samples[:, :, None]
    q2 = _coefficients(forcing_2) / filter_3d
    q3 = _coefficients(forcing_3) / filter_3d

    logger.debug(f'Filtered q kernels with K={modes} on a {grid}-point grid')
    return HigherOrderKernels(
        modes=modes, grid=grid, omega=omega, kappa=kappa, q1=q1, q2=q2, q3=q3
    )


def compute_Hbar(kernels: RawKernelSet, q_kernels: HigherOrderKernels) -> HigherOrderKernels:
    """Assemble h̄1..h̄8 from the q kernels and average them along the diagonal."""
    grid, modes = q_kernels.grid, q_kernels.modes
    pair = {
        name: _samples(_embed(kernels.spectra[name], kernels.grid, modes, grid))
        for name in ('h2', 'h3', 'h7', 'h8', 'h9')
    }
    q1 = _samples(q_kernels.q1)
    q2 = _samples(q_kernels.q2)
    q3 = _samples(q_kernels.q3)

    sums = {k: np.zeros((grid, grid)) for k in PAIRWISE}
    sums.update({k: np.zeros((grid, grid, grid)) for k in TRIPLE})
    for n in range(grid):
        # rows indexed by the phase difference, i.e. f(u, u + χ) with u = θ_n
        row = {name: np.roll(values[n], -n) for name, values in pair.items()}
        q1_row = np.roll(q1[n], -n)
        q1_shift = np.roll(q1, (-n, -n), axis=(0, 1))
        q2_row = np.roll(q2[n], (-n, -n), axis=(0, 1))
        q3_row = np.roll(q3[n], (-n, -n), axis=(0, 1))
        q2_shift = np.roll(q2, (-n, -n, -n), axis=(0, 1, 2))
        q3_shift = np.roll(q3, (-n, -n, -n), axis=(0, 1, 2))

        chi = (slice(None), None, None)
        sums[2] += row['h2'][:, None] * q1_row[None, :]
        sums[3] += row['h3'][:, None] * q1_shift
        sums[4] += row['h2'][chi] * q2_row[None] + row['h7'][chi] * (
            q1_row[None, :, None] * q1_row[None, None, :]
        )
        sums[5] += row['h2'][chi] * q3_row[None]
        sums[6] += row['h3'][chi] * q2_shift + row['h8'][chi] * (
            q1_shift[:, :, None] * q1_shift[:, None, :]
        )
        sums[7] += row['h3'][chi] * q3_shift
        sums[8] += row['h9'][chi] * q1_row[None, :, None] * q1_shift[:, None, :]

    b = _modes(grid).astype(int)
    h1 = np.zeros(grid, dtype=complex)
    inside = np.abs(b) <= modes
    h1[inside] = kernels.spectra['h1'][(-b[inside]) % kernels.grid, b[inside] % kernels.grid]

    hbar = {1: h1}
    hbar.update({k: _coefficients(total / grid) for k, total in sums.items()})
    logger.info(f'Assembled non-pairwise interaction functions on a {grid}-point grid')
    return q_kernels.model_copy(update={'hbar': hbar})


def build_higher_order(
    kernels: RawKernelSet, modes: int | None = None, kappa: float | None = None
) -> HigherOrderKernels:
    """compute_q_kernels followed by compute_Hbar."""
    return compute_Hbar(kernels, compute_q_kernels(kernels, kappa=kappa, modes=modes))


def _check_order(order: int) -> None:
    if order not in (1, 2, 3):
        logger.error(f'Higher-order reduction requested at order {order}')
        raise UnsupportedOrderError(f'Higher-order reduction supports orders 1..3, not {order}')


def synchrony_coefficients(hok: HigherOrderKernels, order: int = 3) -> np.ndarray:
    """Coefficients (x1, x2, x3) of ξ(ε) = x1 ε + x2 ε² + x3 ε³, truncated at ``order``."""
    _check_order(order)
    x1 = hok.gradient_sum_at_origin(1)
    x2 = sum(hok.gradient_sum_at_origin(k) for k in PAIRWISE)
    x3 = sum(hok.gradient_sum_at_origin(k) for k in TRIPLE)
    return np.array([x1, x2, x3])[:order]


def splay_row_terms(hok: HigherOrderKernels, n_nodes: int, order: int = 3) -> np.ndarray:
    """Circulant entries A_j split by order: row k - 1 holds the ε^k coefficient, j = 1..N."""
    _check_order(order)
    phases = 2 * np.pi * np.arange(1, n_nodes + 1) / n_nodes
    m = _modes(hok.grid)
    wave = np.exp(1j * np.multiply.outer(phases, m))
    total = wave.sum(axis=0)

    rows = np.zeros((3, n_nodes))
    rows[0] = np.real(wave @ (1j * m * hok.hbar[1])) / n_nodes
    for k in PAIRWISE:
        c = hok.hbar[k]
        rows[1] += np.real(
            np.einsum('ab,ja,b->j', 1j * m[:, None] * c, wave, total)
            + np.einsum('ab,a,jb->j', 1j * m[None, :] * c, total, wave)
        ) / n_nodes**2
    for k in TRIPLE:
        c = hok.hbar[k]
        rows[2] += np.real(
            np.einsum('abc,ja,b,c->j', 1j * m[:, None, None] * c, wave, total, total)
            + np.einsum('abc,a,jb,c->j', 1j * m[None, :, None] * c, total, wave, total)
            + np.einsum('abc,a,b,jc->j', 1j * m[None, None, :] * c, total, total, wave)
        ) / n_nodes**3
    return rows[:order]


def _splay_eigenvalue_terms(hok: HigherOrderKernels, n_nodes: int, order: int) -> np.ndarray:
    """λ_p split by order, shape (order, N): λ_p = Σ_k ε^k Σ_j A_j^(k) (e^{2πijp/N} - 1)."""
    rows = splay_row_terms(hok, n_nodes, order)
    j = np.arange(1, n_nodes + 1)
    p = np.arange(n_nodes)
    factors = np.exp(2j * np.pi * np.outer(j, p) / n_nodes) - 1
    return rows @ factors


def hop_stability(
    state: HopState, order: int, n_nodes: int, hok: HigherOrderKernels, epsilon: float
) -> StabilityReport:
    """Phase-only spectrum of synchrony or splay in the reduction truncated at ``order``.

    Synchrony has eigenvalues 0 and -ξ (multiplicity N - 1); splay has λ_p, p = 0..N-1.

    Raises:
        UnsupportedOrderError: If ``order`` is not 1, 2 or 3

    """
    powers = epsilon ** np.arange(1, order + 1)
    if state == 'synchrony':
        xi = float(synchrony_coefficients(hok, order) @ powers)
        values = np.concatenate([[0.0], np.full(n_nodes - 1, -xi)])
        return stability_report(values, details={'xi': xi, 'order': float(order)})

    values = powers @ _splay_eigenvalue_terms(hok, n_nodes, order)
    return stability_report(values, details={'order': float(order)})


def _real_roots(coefficients: np.ndarray, scale: float) -> list[float]:
    """Real roots of Σ c_k ε^k (ascending coefficients) via the companion matrix.

    Coefficients below 1e-12 * scale are treated as zero.
    """
    coefficients = np.asarray(coefficients, dtype=float).copy()
    coefficients[np.abs(coefficients) <= 1e-12 * scale] = 0.0
    coefficients = np.trim_zeros(coefficients, 'b')
    if len(coefficients) < 2:
        return []
    roots = np.roots(coefficients[::-1])
    size = max(1.0, float(np.max(np.abs(roots)))) if len(roots) else 1.0
    return sorted(float(r.real) for r in roots if abs(r.imag) <= 1e-9 * size)


def hop_boundaries(
    state: HopState, order: int, n_nodes: int, hok: HigherOrderKernels
) -> list[float]:
    """Nonzero ε where synchrony or splay changes stability at the given truncation.

    Roots of ξ(ε)/ε for synchrony; for splay, the union over p of the roots of Re λ_p(ε)/ε.
    """
    if state == 'synchrony':
        coefficients = synchrony_coefficients(hok, order)
        return _real_roots(coefficients, float(np.max(np.abs(coefficients))))

    terms = np.real(_splay_eigenvalue_terms(hok, n_nodes, order))
    scale = float(np.max(np.abs(terms)))
    roots: list[float] = []
    for p in range(1, n_nodes):
        for root in _real_roots(terms[:, p], scale):
            if not any(abs(root - r) <= 1e-9 * max(1.0, abs(r)) for r in roots):
                roots.append(root)
    return sorted(roots)
