"""Floquet eigenfunctions and phase/isostable response curves of a periodic orbit.

This module provides ``solve_hierarchy``, which computes g(1), g(2) and the response
expansions Z(0..2), I(0..2) as periodic solutions of their linear ODEs. Every solve is a
Fourier collocation on the orbit grid: homogeneous orders are one-dimensional null spaces
and forced orders are least-squares solves with an appended normalisation row where the
operator is singular.
"""

import logging
from typing import Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import block_diag, lstsq, svd
from scipy.optimize import least_squares

from ..config import settings
from ..errors import DependencyError, DimensionMismatchError, ResonanceError, UnsupportedOrderError
from ..nodes.base import VectorFieldModel
from ..spectral import PeriodicVectorFunction, differentiation_matrix, phase_grid
from .orbit import PeriodicOrbit

logger = logging.getLogger(__name__)

RESPONSE_NAMES = ('g1', 'g2', 'z0', 'z1', 'z2', 'i0', 'i1', 'i2')


class ResponseSet(BaseModel):
    """Isostable eigenfunctions and response curves of one orbit."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    orbit: PeriodicOrbit
    curve: PeriodicVectorFunction = Field(..., description='Orbit x^γ(θ)')
    g1: PeriodicVectorFunction = Field(..., description='Floquet eigenfunction g(1)')
    g2: PeriodicVectorFunction = Field(..., description='Second-order eigenfunction g(2)')
    z0: PeriodicVectorFunction = Field(..., description='Phase response Z(0)')
    z1: PeriodicVectorFunction = Field(..., description='Phase response correction Z(1)')
    z2: PeriodicVectorFunction = Field(..., description='Phase response correction Z(2)')
    i0: PeriodicVectorFunction = Field(..., description='Isostable response I(0)')
    i1: PeriodicVectorFunction = Field(..., description='Isostable response correction I(1)')
    i2: PeriodicVectorFunction = Field(..., description='Isostable response correction I(2)')

    @property
    def kappa(self) -> float:
        """Slow Floquet exponent κ."""
        return self.orbit.kappa

    @property
    def omega(self) -> float:
        """Angular frequency ω."""
        return self.orbit.frequency

    @property
    def dimension(self) -> int:
        """State dimension n."""
        return self.orbit.dimension

    @property
    def functions(self) -> dict[str, PeriodicVectorFunction]:
        """Response functions keyed by name."""
        return {name: getattr(self, name) for name in RESPONSE_NAMES}


def _require(store: Mapping[int, np.ndarray], keys: tuple[int, ...], what: str) -> None:
    missing = [k for k in keys if k not in store]
    if missing:
        logger.error(f'Missing {what} of order {missing}')
        raise DependencyError(f'Missing {what} of order(s) {missing}')


def assemble_alpha(
    order: int, g: Mapping[int, np.ndarray], tensors: Mapping[int, np.ndarray]
) -> np.ndarray:
    """Forcing α(k) of the g(k) equation on the θ-grid.

    α(2)_i = ½ g(1)ᵀ F_i(2) g(1), written with the full derivative arrays.

    Args:
        order: Expansion order k (only 2 is needed at this truncation)
        g: Grid samples of the lower g's keyed by order, shape (M, n)
        tensors: Full derivative arrays on the grid keyed by order, e.g. tensors[2] of
            shape (M, n, n, n)

    Returns:
        Samples of α(k), shape (M, n)

    """
    if order != 2:
        logger.error(f'alpha requested at order {order}')
        raise UnsupportedOrderError(f'alpha is only assembled at order 2, got {order}')
    _require(g, (1,), 'g')
    _require(tensors, (2,), 'derivative tensor')
    return 0.5 * np.einsum('mqab,ma,mb->mq', tensors[2], g[1], g[1])


def _b_all(
    order: int, g: Mapping[int, np.ndarray], tensors: Mapping[int, np.ndarray]
) -> np.ndarray:
    """All b_i(j) vectors, shape (M, i, a)."""
    if order == 1:
        _require(g, (1,), 'g')
        _require(tensors, (2,), 'derivative tensor')
        return np.einsum('miab,mb->mia', tensors[2], g[1])
    if order == 2:
        _require(g, (1, 2), 'g')
        _require(tensors, (2, 3), 'derivative tensor')
        return np.einsum('miab,mb->mia', tensors[2], g[2]) + 0.5 * np.einsum(
            'miabc,mb,mc->mia', tensors[3], g[1], g[1]
        )
    logger.error(f'b requested at order {order}')
    raise UnsupportedOrderError(f'b is only assembled at orders 1 and 2, got {order}')


def assemble_b(
    component: int, order: int, g: Mapping[int, np.ndarray], tensors: Mapping[int, np.ndarray]
) -> np.ndarray:
    """Coefficient b_i(j) on the θ-grid for one component i of F.

    b_i(1) = F_i(2) g(1) and b_i(2) = F_i(2) g(2) + ½ F_i(3)(g(1), g(1)).

    Returns:
        Samples of b_i(j), shape (M, n)

    """
    b = _b_all(order, g, tensors)
    if not 0 <= component < b.shape[1]:
        logger.error(f'b requested for component {component} of a {b.shape[1]}-d field')
        raise DimensionMismatchError(f'Component {component} outside 0..{b.shape[1] - 1}')
    return b[:, component, :]


def _null_vector(operator: np.ndarray, order: str, null_tol: float, resonance_tol: float):
    """One-dimensional null space of a collocation operator."""
    _, s, vh = svd(operator)
    ratio = s / s[0]
    logger.debug(f'{order}: smallest relative singular values {ratio[-3:]}')
    if ratio[-1] > null_tol or ratio[-2] < resonance_tol:
        logger.error(f'{order}: null space is not one-dimensional, singular values {ratio[-2:]}')
        raise ResonanceError(
            f'Periodic solution of {order} is not unique (relative singular values '
            f'{ratio[-2]:.2e}, {ratio[-1]:.2e})',
            order=order,
        )
    return vh[-1]


def _forced_solve(operator: np.ndarray, forcing: np.ndarray, order: str, resonance_tol: float):
    """Least-squares collocation solve with a conditioning check."""
    solution, _, _, s = lstsq(operator, forcing, lapack_driver='gelsd')
    ratio = s[-1] / s[0]
    logger.debug(f'{order}: relative smallest singular value {ratio:.3e}')
    if ratio < resonance_tol:
        logger.error(f'{order}: periodic solve is resonant ({ratio:.2e})')
        raise ResonanceError(
            f'Periodic solve for {order} is singular (relative singular value {ratio:.2e})',
            order=order,
        )
    return solution


def solve_hierarchy(
    orbit: PeriodicOrbit,
    model: VectorFieldModel,
    *,
    modes: int | None = None,
    null_tol: float | None = None,
    resonance_tol: float | None = None,
) -> ResponseSet:
    """Solve the adjoint hierarchy of ``orbit`` up to second order in ψ.

    Order of solution: g(1), then Z(0) and I(0), g(2), Z(1) and I(1), Z(2) and I(2).
    Normalisations: |g(1)(0)| = 1 with g(1)(0) pointing out of the orbit,
    Z(0)·F = ω, I(0)(0)·g(1)(0) = 1 and I(1)(0)·F(0) = κ - I(0)(0)·J(0) g(1)(0).

    Args:
        orbit: Periodic orbit of ``model``
        model: Node vector field
        modes: Retained Fourier modes of the returned functions
        null_tol: Relative singular value accepted as a null direction
        resonance_tol: Smallest admissible relative singular value of a forced solve

    Returns:
        The response set of the orbit

    Raises:
        DimensionMismatchError: If orbit and model dimensions differ
        ResonanceError: If a periodic solve is singular

    """
    if orbit.dimension != model.dimension:
        logger.error(f'Orbit dimension {orbit.dimension} vs model {model.dimension}')
        raise DimensionMismatchError(
            f'Orbit has dimension {orbit.dimension}, model {model.dimension}'
        )

    modes = modes or settings.fourier_modes
    null_tol = null_tol or settings.null_space_tol
    resonance_tol = resonance_tol or settings.resonance_tol
    x = orbit.samples
    grid, n = x.shape
    omega, kappa = orbit.frequency, orbit.kappa

    jac = model.jacobian(x)
    tensors = {2: model.derivative(2, x), 3: model.derivative(3, x)}
    identity = np.eye(grid * n)
    derivative = omega * np.kron(differentiation_matrix(grid), np.eye(n))
    forward = block_diag(*jac)
    adjoint = block_diag(*np.transpose(jac, (0, 2, 1)))

    def grid_major(vector: np.ndarray) -> np.ndarray:
        return vector.reshape(grid, n)

    g1 = grid_major(
        _null_vector(derivative - forward + kappa * identity, 'g1', null_tol, resonance_tol)
    )
    g1 = g1 / np.linalg.norm(g1[0])
    if g1[0] @ orbit.right_vector < 0:
        g1 = -g1

    flow0 = model(x[0])
    z0 = grid_major(_null_vector(derivative + adjoint, 'z0', null_tol, resonance_tol))
    z0 = z0 * omega / (z0[0] @ flow0)
    i0 = grid_major(
        _null_vector(derivative + adjoint - kappa * identity, 'i0', null_tol, resonance_tol)
    )
    i0 = i0 / (i0[0] @ g1[0])

    alpha2 = assemble_alpha(2, {1: g1}, tensors)
    g2 = grid_major(
        _forced_solve(
            derivative - forward + 2 * kappa * identity, alpha2.ravel(), 'g2', resonance_tol
        )
    )

    b1 = _b_all(1, {1: g1}, tensors)
    b2 = _b_all(2, {1: g1, 2: g2}, tensors)

    def contract(weights: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum('mi,mia->ma', weights, b)

    z1 = grid_major(
        _forced_solve(
            derivative + adjoint + kappa * identity,
            -contract(z0, b1).ravel(),
            'z1',
            resonance_tol,
        )
    )

    pin = np.zeros((1, grid * n))
    pin[0, :n] = flow0
    target = kappa - i0[0] @ jac[0] @ g1[0]
    i1 = grid_major(
        _forced_solve(
            np.vstack([derivative + adjoint, pin]),
            np.concatenate([-contract(i0, b1).ravel(), [target]]),
            'i1',
            resonance_tol,
        )
    )

    z2 = grid_major(
        _forced_solve(
            derivative + adjoint + 2 * kappa * identity,
            -(contract(z0, b2) + contract(z1, b1)).ravel(),
            'z2',
            resonance_tol,
        )
    )
    i2 = grid_major(
        _forced_solve(
            derivative + adjoint + kappa * identity,
            -(contract(i0, b2) + contract(i1, b1)).ravel(),
            'i2',
            resonance_tol,
        )
    )

    samples = {'g1': g1, 'g2': g2, 'z0': z0, 'z1': z1, 'z2': z2, 'i0': i0, 'i1': i1, 'i2': i2}
    functions = {
        name: PeriodicVectorFunction.from_samples(
            values, modes, name=name, tail_tol=settings.tail_tol
        )
        for name, values in samples.items()
    }
    logger.info(f'Response hierarchy solved on {grid} points with {modes} modes')
    return ResponseSet(orbit=orbit, curve=orbit.curve(modes), **functions)


def _grid_quantities(responses: ResponseSet, model: VectorFieldModel):
    x = responses.orbit.samples
    grid = x.shape[0]
    values = {name: fn.samples(grid) for name, fn in responses.functions.items()}
    rates = {
        name: responses.omega * fn.derivative().samples(grid)
        for name, fn in responses.functions.items()
    }
    tensors = {2: model.derivative(2, x), 3: model.derivative(3, x)}
    return x, values, rates, model.jacobian(x), tensors


def hierarchy_residuals(responses: ResponseSet, model: VectorFieldModel) -> dict[str, float]:
    """Sup-norm residual of each response ODE on the orbit grid."""
    x, v, rate, jac, tensors = _grid_quantities(responses, model)
    kappa = responses.kappa
    alpha2 = assemble_alpha(2, {1: v['g1']}, tensors)
    b1 = _b_all(1, {1: v['g1']}, tensors)
    b2 = _b_all(2, {1: v['g1'], 2: v['g2']}, tensors)

    def forward(y: np.ndarray) -> np.ndarray:
        return np.einsum('mab,mb->ma', jac, y)

    def adjoint(y: np.ndarray) -> np.ndarray:
        return np.einsum('mba,mb->ma', jac, y)

    def contract(weights: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum('mi,mia->ma', weights, b)

    residuals = {
        'g1': rate['g1'] - forward(v['g1']) + kappa * v['g1'],
        'g2': rate['g2'] - forward(v['g2']) + 2 * kappa * v['g2'] - alpha2,
        'z0': rate['z0'] + adjoint(v['z0']),
        'z1': rate['z1'] + adjoint(v['z1']) + kappa * v['z1'] + contract(v['z0'], b1),
        'z2': rate['z2']
        + adjoint(v['z2'])
        + 2 * kappa * v['z2']
        + contract(v['z0'], b2)
        + contract(v['z1'], b1),
        'i0': rate['i0'] + adjoint(v['i0']) - kappa * v['i0'],
        'i1': rate['i1'] + adjoint(v['i1']) + contract(v['i0'], b1),
        'i2': rate['i2']
        + adjoint(v['i2'])
        + kappa * v['i2']
        + contract(v['i0'], b2)
        + contract(v['i1'], b1),
    }
    return {name: float(np.max(np.abs(r))) for name, r in residuals.items()}


def normalization_residuals(responses: ResponseSet, model: VectorFieldModel) -> dict[str, float]:
    """Deviation from each normalisation identity of the hierarchy on the orbit grid."""
    x, v, _, jac, tensors = _grid_quantities(responses, model)
    flow = model(x)
    alpha2 = assemble_alpha(2, {1: v['g1']}, tensors)

    def dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum('ma,ma->m', a, b)

    def jdot(weights: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum('ma,mab,mb->m', weights, jac, y)

    checks = {
        'z0_flow': dot(v['z0'], flow) - responses.omega,
        'z1_identity': dot(v['z1'], flow) + jdot(v['z0'], v['g1']),
        'z2_identity': dot(v['z2'], flow)
        + jdot(v['z0'], v['g2'])
        + jdot(v['z1'], v['g1'])
        + dot(v['z0'], alpha2),
        'i1_identity': dot(v['i1'], flow) + jdot(v['i0'], v['g1']) - responses.kappa,
        'i2_identity': dot(v['i2'], flow)
        + jdot(v['i0'], v['g2'])
        + jdot(v['i1'], v['g1'])
        + dot(v['i0'], alpha2),
    }
    result = {name: float(np.max(np.abs(r))) for name, r in checks.items()}
    result['i0_g1'] = float(abs(v['i0'][0] @ v['g1'][0] - 1))
    result['g1_norm'] = float(abs(np.linalg.norm(v['g1'][0]) - 1))
    return result


def lift_state(responses: ResponseSet, theta: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Approximate state x^γ(θ) + ψ g(1)(θ) + ψ² g(2)(θ), shape theta.shape + (n,)."""
    theta = np.asarray(theta, dtype=float)
    psi = np.asarray(psi, dtype=float)[..., None]
    return responses.curve(theta) + psi * responses.g1(theta) + psi**2 * responses.g2(theta)


def project_state(responses: ResponseSet, x: np.ndarray, grid: int = 256) -> tuple[float, float]:
    """Find (θ, ψ) whose lifted state best matches ``x`` in least squares.

    The search is seeded on a phase grid with the linear isostable estimate
    ψ ≈ I(0)(θ)·(x - x^γ(θ)).
    """
    x = np.asarray(x, dtype=float)
    theta = phase_grid(grid)
    offset = x - responses.curve(theta)
    psi = np.einsum('ma,ma->m', responses.i0(theta), offset)
    errors = np.linalg.norm(lift_state(responses, theta, psi) - x, axis=-1)
    best = int(np.argmin(errors))

    def mismatch(p: np.ndarray) -> np.ndarray:
        return lift_state(responses, p[0], p[1]) - x

    fit = least_squares(mismatch, np.array([theta[best], psi[best]]), xtol=1e-14, ftol=1e-14)
    return float(np.mod(fit.x[0], 2 * np.pi)), float(fit.x[1])
