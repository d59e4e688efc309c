"""Morris-Lecar conductance-based neuron with voltage-diffusive coupling."""

import logging
from typing import Mapping

import numpy as np

from ..errors import UnsupportedInputError
from .base import CouplingModel, VectorFieldModel

logger = logging.getLogger(__name__)

MORRIS_LECAR_DEFAULTS: dict[str, float] = {
    'phi': 1.15,
    'g_ca': 1.0,
    'g_k': 2.0,
    'g_l': 0.5,
    'e_ca': 1.0,
    'e_k': -0.7,
    'e_l': -0.5,
    'v1': -0.01,
    'v2': 0.15,
    'v3': 0.1,
    'v4': 0.145,
    'c_m': 1.0,
    'i_b': 0.075,
}


def _sigmoid_derivatives(v: np.ndarray, centre: float, width: float) -> list[np.ndarray]:
    """Return 0.5 (1 + tanh((v - centre) / width)) and its first three derivatives."""
    s = np.tanh((v - centre) / width)
    sech2 = 1 - s * s
    return [
        0.5 * (1 + s),
        0.5 * sech2 / width,
        -s * sech2 / width**2,
        -sech2 * (1 - 3 * s * s) / width**3,
    ]


def _rate_derivatives(v: np.ndarray, centre: float, width: float) -> list[np.ndarray]:
    """Return cosh((v - centre) / (2 width)) and its first three derivatives."""
    z = (v - centre) / (2 * width)
    scale = 1 / (2 * width)
    return [np.cosh(z), np.sinh(z) * scale, np.cosh(z) * scale**2, np.sinh(z) * scale**3]


def make_morris_lecar_node(
    params: Mapping[str, float] | None = None,
) -> tuple[VectorFieldModel, CouplingModel]:
    """Build the (v, w) Morris-Lecar field and the coupling G = (v_j - v_i, 0).

    C_m dv/dt = I_b - g_L (v - E_L) - g_K w (v - E_K) - g_Ca m(v) (v - E_Ca) and
    dw/dt = phi (w_inf(v) - w) lambda(v).

    Args:
        params: Overrides of ``MORRIS_LECAR_DEFAULTS``

    Returns:
        Tuple of node vector field and coupling

    Raises:
        UnsupportedInputError: If an unknown parameter name is given

    """
    overrides = dict(params or {})
    unknown = sorted(set(overrides) - set(MORRIS_LECAR_DEFAULTS))
    if unknown:
        logger.error(f'Unknown Morris-Lecar parameters: {unknown}')
        raise UnsupportedInputError(f'Unknown Morris-Lecar parameters: {", ".join(unknown)}')
    p = {**MORRIS_LECAR_DEFAULTS, **{k: float(v) for k, v in overrides.items()}}

    c_m, i_b, phi = p['c_m'], p['i_b'], p['phi']
    g_ca, g_k, g_l = p['g_ca'], p['g_k'], p['g_l']
    e_ca, e_k, e_l = p['e_ca'], p['e_k'], p['e_l']

    def gating(v: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray], list[np.ndarray]]:
        return (
            _sigmoid_derivatives(v, p['v1'], p['v2']),
            _sigmoid_derivatives(v, p['v3'], p['v4']),
            _rate_derivatives(v, p['v3'], p['v4']),
        )

    def rhs(x: np.ndarray) -> np.ndarray:
        v, w = x[..., 0], x[..., 1]
        m, w_inf, lam = gating(v)
        dv = (i_b - g_l * (v - e_l) - g_k * w * (v - e_k) - g_ca * m[0] * (v - e_ca)) / c_m
        dw = phi * (w_inf[0] - w) * lam[0]
        return np.stack([dv, dw], axis=-1)

    def jacobian(x: np.ndarray) -> np.ndarray:
        v, w = x[..., 0], x[..., 1]
        m, w_inf, lam = gating(v)
        f_v = (-g_l - g_k * w - g_ca * (m[1] * (v - e_ca) + m[0])) / c_m
        f_w = -g_k * (v - e_k) / c_m
        g_v = phi * (w_inf[1] * lam[0] + (w_inf[0] - w) * lam[1])
        g_w = -phi * lam[0]
        out = np.array([[f_v, f_w], [g_v, g_w]])
        return np.moveaxis(out, (0, 1), (-2, -1))

    def hessian(x: np.ndarray) -> np.ndarray:
        v, w = x[..., 0], x[..., 1]
        m, w_inf, lam = gating(v)
        zero = np.zeros_like(v)
        f_vv = -g_ca * (m[2] * (v - e_ca) + 2 * m[1]) / c_m
        f_vw = np.full_like(v, -g_k / c_m)
        g_vv = phi * (w_inf[2] * lam[0] + 2 * w_inf[1] * lam[1] + (w_inf[0] - w) * lam[2])
        g_vw = -phi * lam[1]
        out = np.array([[[f_vv, f_vw], [f_vw, zero]], [[g_vv, g_vw], [g_vw, zero]]])
        return np.moveaxis(out, (0, 1, 2), (-3, -2, -1))

    def third(x: np.ndarray) -> np.ndarray:
        v, w = x[..., 0], x[..., 1]
        m, w_inf, lam = gating(v)
        zero = np.zeros_like(v)
        f_vvv = -g_ca * (m[3] * (v - e_ca) + 3 * m[2]) / c_m
        g_vvv = phi * (
            w_inf[3] * lam[0]
            + 3 * w_inf[2] * lam[1]
            + 3 * w_inf[1] * lam[2]
            + (w_inf[0] - w) * lam[3]
        )
        g_vvw = -phi * lam[2]
        f = [[[f_vvv, zero], [zero, zero]], [[zero, zero], [zero, zero]]]
        g = [[[g_vvv, g_vvw], [g_vvw, zero]], [[g_vvw, zero], [zero, zero]]]
        return np.moveaxis(np.array([f, g]), (0, 1, 2, 3), (-4, -3, -2, -1))

    node = VectorFieldModel(
        name='morris_lecar',
        dimension=2,
        params=p,
        rhs=rhs,
        derivatives={1: jacobian, 2: hessian, 3: third},
        bounds=np.array([[-1.0, 1.0], [-0.2, 1.0]]),
        orbit_guess=np.array([-0.1, 0.07]),
        period_guess=8.0,
        section_axis=0,
    )

    selector = np.array([[1.0, 0.0], [0.0, 0.0]])

    def coupling(xi: np.ndarray, xj: np.ndarray) -> np.ndarray:
        return (xj - xi) @ selector

    def coupling_jacobians(xi: np.ndarray, xj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        j2 = np.broadcast_to(selector, xi.shape[:-1] + (2, 2)).copy()
        return -j2, j2

    return node, CouplingModel(
        name='morris_lecar',
        dimension=2,
        rhs=coupling,
        jacobian_fn=coupling_jacobians,
        linear=True,
    )


def m_inf(v: np.ndarray | float, params: Mapping[str, float] | None = None) -> np.ndarray:
    """Evaluate the steady-state calcium activation m_inf(v)."""
    p = {**MORRIS_LECAR_DEFAULTS, **dict(params or {})}
    return _sigmoid_derivatives(np.asarray(v, dtype=float), p['v1'], p['v2'])[0]


def w_inf(v: np.ndarray | float, params: Mapping[str, float] | None = None) -> np.ndarray:
    """Evaluate the steady-state potassium activation w_inf(v)."""
    p = {**MORRIS_LECAR_DEFAULTS, **dict(params or {})}
    return _sigmoid_derivatives(np.asarray(v, dtype=float), p['v3'], p['v4'])[0]
