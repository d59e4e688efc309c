"""Existence and linear stability of phase-locked states on arbitrary networks.

This module provides ``solve_existence``, which determines the isostable values and the
collective frequency of a prescribed relative-phase pattern, and ``jacobian``, which
linearises the averaged phase-isostable network about a locked state.
"""

import logging

import numpy as np
from scipy.linalg import eigvals

from ..errors import AsymptoteError, NonExistenceError
from ..reduction.interactions import InteractionSet
from .network import LockedState, NetworkSpec, StabilityReport, stability_report

logger = logging.getLogger(__name__)

EXISTENCE_TOL = 1e-9
CONDITION_LIMIT = 1e12


def _differences(phases: np.ndarray) -> np.ndarray:
    """Matrix of φ_j - φ_i."""
    return phases[None, :] - phases[:, None]


def _isostable_system(
    phases: np.ndarray, net: NetworkSpec, interactions: InteractionSet, kappa: float
) -> tuple[np.ndarray, np.ndarray]:
    """Return (εQ, q) so that Ψ = ε (εQ)^{-1} q with εQ kept finite at ε = 0."""
    w, eps = net.weights, net.epsilon
    delta = _differences(phases)
    q = np.sum(w * interactions.value(4, delta), axis=1)
    scaled = -eps * w * interactions.value(6, delta)
    scaled[np.diag_indices_from(scaled)] -= eps * np.sum(w * interactions.value(5, delta), axis=1)
    scaled[np.diag_indices_from(scaled)] -= kappa
    return scaled, q


def _frequencies(
    phases: np.ndarray, isostables: np.ndarray, net: NetworkSpec, interactions: InteractionSet
) -> np.ndarray:
    """Per-node frequency offsets ε Σ_j w_ij [H1 + Ψ_i H2 + Ψ_j H3]."""
    w, eps = net.weights, net.epsilon
    delta = _differences(phases)
    terms = (
        interactions.value(1, delta)
        + isostables[:, None] * interactions.value(2, delta)
        + isostables[None, :] * interactions.value(3, delta)
    )
    return eps * np.sum(w * terms, axis=1)


def existence_residual(
    state: LockedState, net: NetworkSpec, interactions: InteractionSet, kappa: float | None = None
) -> float:
    """Largest violation of the locking equations at ``state``."""
    kappa = interactions.kappa if kappa is None else kappa
    w, eps = net.weights, net.epsilon
    delta = _differences(state.phases)
    psi = state.isostables
    isostable_rates = kappa * psi + eps * np.sum(
        w
        * (
            interactions.value(4, delta)
            + psi[:, None] * interactions.value(5, delta)
            + psi[None, :] * interactions.value(6, delta)
        ),
        axis=1,
    )
    phase_rates = interactions.omega + _frequencies(state.phases, psi, net, interactions)
    return float(
        max(np.max(np.abs(isostable_rates)), np.max(np.abs(phase_rates - state.frequency)))
    )


def solve_existence(
    phases: np.ndarray,
    net: NetworkSpec,
    interactions: InteractionSet,
    kappa: float | None = None,
    omega: float | None = None,
    tag: str = 'generic',
) -> LockedState:
    """Solve for Ψ and Ω of the relative-phase pattern Φ.

    Ψ solves the linear isostable balance, and the N frequency equations must then agree
    on a single Ω.

    Args:
        phases: Relative phases Φ
        net: Network
        interactions: Interaction functions H1..H6
        kappa: Slow Floquet exponent (defaults to the interaction set's)
        omega: Natural frequency (defaults to the interaction set's)
        tag: Classification stored on the state

    Returns:
        The locked state

    Raises:
        AsymptoteError: If the isostable system is singular (Ψ diverges)
        NonExistenceError: If the per-node frequencies differ by more than 1e-9

    """
    kappa = interactions.kappa if kappa is None else kappa
    omega = interactions.omega if omega is None else omega
    phases = np.asarray(phases, dtype=float)
    eps = net.epsilon

    scaled, q = _isostable_system(phases, net, interactions, kappa)
    if np.linalg.cond(scaled) > CONDITION_LIMIT:
        logger.error(f'Isostable system singular at epsilon={eps}')
        raise AsymptoteError(f'Isostable values diverge at epsilon={eps}', parameter=eps)
    psi = eps * np.linalg.solve(scaled, q)

    offsets = _frequencies(phases, psi, net, interactions)
    spread = float(np.max(offsets) - np.min(offsets))
    if spread > EXISTENCE_TOL:
        logger.error(f'No common frequency for {tag} at epsilon={eps}: spread {spread:.3e}')
        raise NonExistenceError(
            f'Phase pattern is not locked at epsilon={eps} (frequency spread {spread:.3e})',
            spread=spread,
        )

    state = LockedState(
        phases=phases,
        isostables=psi,
        frequency=float(omega + np.mean(offsets)),
        tag=tag,
        epsilon=eps,
    )
    return state.model_copy(
        update={'residual': existence_residual(state, net, interactions, kappa)}
    )


def jacobian_matrix(
    state: LockedState, net: NetworkSpec, interactions: InteractionSet, kappa: float | None = None
) -> np.ndarray:
    """Assemble the 2N x 2N Jacobian [[H(1), H(2)], [H(3), H(4)]] about a locked state."""
    kappa = interactions.kappa if kappa is None else kappa
    w, eps = net.weights, net.epsilon
    delta = _differences(state.phases)
    psi = state.isostables
    psi_i, psi_j = psi[:, None], psi[None, :]

    xi_theta = (
        interactions.slope(1, delta)
        + psi_i * interactions.slope(2, delta)
        + psi_j * interactions.slope(3, delta)
    )
    xi_psi = (
        interactions.slope(4, delta)
        + psi_i * interactions.slope(5, delta)
        + psi_j * interactions.slope(6, delta)
    )

    def coupled(values: np.ndarray, diagonal: np.ndarray) -> np.ndarray:
        block = eps * w * values
        block[np.diag_indices_from(block)] += diagonal
        return block

    h1 = coupled(xi_theta, -eps * np.sum(w * xi_theta, axis=1))
    h2 = coupled(
        interactions.value(3, delta), eps * np.sum(w * interactions.value(2, delta), axis=1)
    )
    h3 = coupled(xi_psi, -eps * np.sum(w * xi_psi, axis=1))
    h4 = coupled(
        interactions.value(6, delta),
        kappa + eps * np.sum(w * interactions.value(5, delta), axis=1),
    )
    return np.block([[h1, h2], [h3, h4]])


def jacobian(
    state: LockedState, net: NetworkSpec, interactions: InteractionSet, kappa: float | None = None
) -> StabilityReport:
    """Eigenvalues and verdict of the full 2N x 2N Jacobian about ``state``.

    Raises:
        InconsistencyError: If the rotational zero mode is missing

    """
    matrix = jacobian_matrix(state, net, interactions, kappa)
    return stability_report(eigvals(matrix))
