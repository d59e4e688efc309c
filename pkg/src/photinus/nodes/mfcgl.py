"""Mean-field complex Ginzburg-Landau node: Stuart-Landau oscillators with diffusive coupling."""

import logging

import numpy as np

from ..errors import ConfigurationError
from .base import CouplingModel, VectorFieldModel

logger = logging.getLogger(__name__)

MFCGL_DEFAULTS: dict[str, float] = {'c1': -2.0, 'c2': 1.1}


def make_mfcgl_node(c1: float, c2: float) -> tuple[VectorFieldModel, CouplingModel]:
    """Build the Stuart-Landau field and its diffusive coupling.

    F(x, y) = (x - (x - c2 y) r^2, y - (y + c2 x) r^2) with r^2 = x^2 + y^2, whose stable
    orbit is the unit circle traversed clockwise at frequency c2. The coupling is
    G = (dx - c1 dy, dy + c1 dx) with d = x_j - x_i.

    Args:
        c1: Coupling twist
        c2: Nonlinear frequency shift, must be positive

    Returns:
        Tuple of node vector field and coupling

    Raises:
        ConfigurationError: If c2 is not positive (no rotating orbit)

    """
    if c2 <= 0:
        logger.error(f'MF-CGLE node requested with c2={c2}')
        raise ConfigurationError(f'c2 must be positive for a rotating limit cycle, got {c2}')

    def rhs(p: np.ndarray) -> np.ndarray:
        x, y = p[..., 0], p[..., 1]
        r2 = x * x + y * y
        return np.stack([x - (x - c2 * y) * r2, y - (y + c2 * x) * r2], axis=-1)

    def jacobian(p: np.ndarray) -> np.ndarray:
        x, y = p[..., 0], p[..., 1]
        r2 = x * x + y * y
        row1 = np.stack(
            [1 - r2 - 2 * x * x + 2 * c2 * x * y, -2 * x * y + c2 * r2 + 2 * c2 * y * y]
        )
        row2 = np.stack(
            [-2 * x * y - c2 * r2 - 2 * c2 * x * x, 1 - r2 - 2 * y * y - 2 * c2 * x * y]
        )
        return np.moveaxis(np.stack([row1, row2]), (0, 1), (-2, -1))

    def hessian(p: np.ndarray) -> np.ndarray:
        x, y = p[..., 0], p[..., 1]
        fxy = -2 * y + 2 * c2 * x
        gxy = -2 * x - 2 * c2 * y
        first = [[-6 * x + 2 * c2 * y, fxy], [fxy, -2 * x + 6 * c2 * y]]
        second = [[-2 * y - 6 * c2 * x, gxy], [gxy, -6 * y - 2 * c2 * x]]
        out = np.array([first, second])
        return np.moveaxis(out, (0, 1, 2), (-3, -2, -1))

    third_derivative = np.array(
        [
            [[[-6.0, 2 * c2], [2 * c2, -2.0]], [[2 * c2, -2.0], [-2.0, 6 * c2]]],
            [[[-6 * c2, -2.0], [-2.0, -2 * c2]], [[-2.0, -2 * c2], [-2 * c2, -6.0]]],
        ]
    )

    def third(p: np.ndarray) -> np.ndarray:
        return np.broadcast_to(third_derivative, p.shape[:-1] + (2, 2, 2, 2)).copy()

    node = VectorFieldModel(
        name='mfcgl',
        dimension=2,
        params={'c1': c1, 'c2': c2},
        rhs=rhs,
        derivatives={1: jacobian, 2: hessian, 3: third},
        bounds=np.array([[-3.0, 3.0], [-3.0, 3.0]]),
        orbit_guess=np.array([1.0, 0.0]),
        period_guess=2 * np.pi / c2,
    )

    twist = np.array([[1.0, -c1], [c1, 1.0]])

    def coupling(xi: np.ndarray, xj: np.ndarray) -> np.ndarray:
        return (xj - xi) @ twist.T

    def coupling_jacobians(xi: np.ndarray, xj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        j2 = np.broadcast_to(twist, xi.shape[:-1] + (2, 2)).copy()
        return -j2, j2

    return node, CouplingModel(
        name='mfcgl',
        dimension=2,
        rhs=coupling,
        jacobian_fn=coupling_jacobians,
        linear=True,
    )
