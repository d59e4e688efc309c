"""Node vector fields and pairwise coupling functions.

This module provides the two model abstractions the reduction pipeline is built on:
``VectorFieldModel`` for the uncoupled node dynamics dx/dt = F(x) and ``CouplingModel``
for the pairwise interaction G(x_i, x_j). Both evaluate analytic derivatives when the
model supplies them and fall back to nested central differences otherwise.
"""

import logging
from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import UnsupportedOrderError

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]
PairEvaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]

MAX_DERIVATIVE_ORDER = 3


def central_difference(fn: Evaluator, x: np.ndarray) -> np.ndarray:
    """Differentiate ``fn`` at ``x`` with per-axis central differences.

    The step on axis ``a`` is ``max(1e-4, 1e-4 * |x_a|)``. ``fn`` maps points of shape
    (..., n) to arrays of shape (..., *s); the result has shape (..., *s, n) with the
    differentiation axis last.

    Args:
        fn: Vectorised function of the state
        x: Evaluation points, shape (..., n)

    Returns:
        Array of partial derivatives with the new axis appended

    """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    steps = np.maximum(1e-4, 1e-4 * np.abs(x))
    columns = []
    for axis in range(n):
        shift = np.zeros_like(x)
        shift[..., axis] = steps[..., axis]
        upper = np.asarray(fn(x + shift))
        lower = np.asarray(fn(x - shift))
        width = 2.0 * steps[..., axis]
        width = width.reshape(width.shape + (1,) * (upper.ndim - width.ndim))
        columns.append((upper - lower) / width)
    return np.stack(columns, axis=-1)


class VectorFieldModel(BaseModel):
    """Autonomous node dynamics dx/dt = F(x) with derivatives up to third order.

    Derivative arrays are full and symmetric: order k evaluates to shape (..., n, n, ..., n)
    with k + 1 trailing axes, the first being the component q of F.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = Field(..., description='Registry name of the model')
    dimension: int = Field(..., gt=0, description='State dimension n')
    params: dict[str, float] = Field(default_factory=dict, description='Model parameters')
    rhs: Evaluator = Field(..., description='Vectorised F(x)')
    derivatives: dict[int, Evaluator] = Field(
        default_factory=dict, description='Analytic derivative evaluators keyed by order'
    )
    bounds: np.ndarray = Field(..., description='Bounding box, shape (n, 2)')
    orbit_guess: np.ndarray = Field(..., description='Point near the stable periodic orbit')
    period_guess: float = Field(..., gt=0, description='Rough period of the orbit')
    section_axis: int | None = Field(
        default=None,
        description='Coordinate whose increasing crossing of the guess defines the section; '
        'None uses the hyperplane normal to F(guess)',
    )

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Evaluate F at points of shape (..., n)."""
        return np.asarray(self.rhs(np.asarray(x, dtype=float)), dtype=float)

    def derivative_source(self, order: int) -> Literal['analytic', 'finite-difference']:
        """Report how derivatives of the given order are obtained."""
        return 'analytic' if order in self.derivatives else 'finite-difference'

    def derivative(self, order: int, x: np.ndarray) -> np.ndarray:
        """Evaluate the full derivative array of F of the given order.

        Args:
            order: Derivative order k, 1 <= k <= 3
            x: Evaluation points, shape (..., n)

        Returns:
            Array of shape (..., n) + (n,) * k

        Raises:
            UnsupportedOrderError: If the order is outside 1..3

        """
        if order < 1 or order > MAX_DERIVATIVE_ORDER:
            logger.error(f'Derivative order {order} requested for {self.name}')
            raise UnsupportedOrderError(
                f'Derivative order must be between 1 and {MAX_DERIVATIVE_ORDER}, got {order}'
            )

        x = np.asarray(x, dtype=float)
        if order in self.derivatives:
            return np.asarray(self.derivatives[order](x), dtype=float)
        if order == 1:
            return central_difference(self, x)
        return central_difference(lambda y: self.derivative(order - 1, y), x)

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        """Evaluate DF at points of shape (..., n)."""
        return self.derivative(1, x)

    def stacked_tensor(self, order: int, x: np.ndarray) -> np.ndarray:
        """Evaluate F_q^(k) in the vec-stacked layout, shape (..., n, n**(k-1), n)."""
        full = self.derivative(order, x)
        n = self.dimension
        return full.reshape(full.shape[: -(order + 1)] + (n, n ** (order - 1), n))

    def contains(self, x: np.ndarray) -> np.ndarray:
        """Check which points lie inside the declared bounding box."""
        x = np.asarray(x, dtype=float)
        inside = (x >= self.bounds[:, 0]) & (x <= self.bounds[:, 1])
        return np.all(inside, axis=-1)

    def with_finite_differences(self) -> 'VectorFieldModel':
        """Return a copy that differentiates F numerically at every order."""
        return self.model_copy(update={'derivatives': {}})


class CouplingModel(BaseModel):
    """Pairwise coupling G(x_i, x_j) with Jacobians and Hessian blocks."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = Field(..., description='Registry name of the coupling')
    dimension: int = Field(..., gt=0, description='State dimension n of each node')
    rhs: PairEvaluator = Field(..., description='Vectorised G(x_i, x_j)')
    jacobian_fn: Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]] | None = (
        Field(default=None, description='Analytic (J1, J2) evaluator')
    )
    hessian_fn: PairEvaluator | None = Field(
        default=None,
        description='Analytic second derivatives over the stacked pair (x_i, x_j), '
        'shape (..., n, 2n, 2n)',
    )
    linear: bool = Field(default=False, description='True when all Hessian blocks vanish')

    def __call__(self, xi: np.ndarray, xj: np.ndarray) -> np.ndarray:
        """Evaluate G for broadcastable node states."""
        xi, xj = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(xj, dtype=float))
        return np.asarray(self.rhs(xi, xj), dtype=float)

    def derivative_source(self) -> Literal['analytic', 'finite-difference']:
        """Report how the coupling derivatives are obtained."""
        return 'analytic' if self.jacobian_fn is not None else 'finite-difference'

    def _stacked(self, z: np.ndarray) -> np.ndarray:
        n = self.dimension
        return self.rhs(z[..., :n], z[..., n:])

    def jacobians(self, xi: np.ndarray, xj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate J1 = dG/dx_i and J2 = dG/dx_j, each of shape (..., n, n)."""
        xi, xj = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(xj, dtype=float))
        if self.jacobian_fn is not None:
            j1, j2 = self.jacobian_fn(xi, xj)
            return np.asarray(j1, dtype=float), np.asarray(j2, dtype=float)

        n = self.dimension
        full = central_difference(self._stacked, np.concatenate([xi, xj], axis=-1))
        return full[..., :n], full[..., n:]

    def hessian_blocks(
        self, xi: np.ndarray, xj: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Evaluate the Hessian blocks (H11, H12, H21, H22), each of shape (..., n, n, n).

        Block ``Hkl[..., q, a, b]`` is the second derivative of G_q with respect to
        component a of the k-th argument and component b of the l-th argument.
        """
        xi, xj = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(xj, dtype=float))
        n = self.dimension
        if self.linear:
            zeros = np.zeros(xi.shape[:-1] + (n, n, n))
            return zeros, zeros, zeros, zeros

        z = np.concatenate([xi, xj], axis=-1)
        if self.hessian_fn is not None:
            full = np.asarray(self.hessian_fn(xi, xj), dtype=float)
        else:

            def stacked_jacobian(y: np.ndarray) -> np.ndarray:
                j1, j2 = self.jacobians(y[..., :n], y[..., n:])
                return np.concatenate([j1, j2], axis=-1)

            full = central_difference(stacked_jacobian, z)

        return (
            full[..., :n, :n],
            full[..., :n, n:],
            full[..., n:, :n],
            full[..., n:, n:],
        )

    def with_finite_differences(self) -> 'CouplingModel':
        """Return a copy that differentiates G numerically."""
        return self.model_copy(update={'jacobian_fn': None, 'hessian_fn': None})


def eval_derivative_tensor(model: VectorFieldModel, order: int, x: np.ndarray) -> np.ndarray:
    """Evaluate the vec-stacked derivative tensor F_q^(k)(x) for every component q.

    Args:
        model: Node vector field
        order: Derivative order k, 1 <= k <= 3
        x: Evaluation point(s), shape (..., n)

    Returns:
        Array of shape (..., n, n**(k-1), n)

    Raises:
        UnsupportedOrderError: If the order exceeds three

    """
    return model.stacked_tensor(order, x)
