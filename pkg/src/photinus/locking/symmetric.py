"""Closed-form analyses of symmetric locked states.

This module provides fast paths for synchrony, splay (finite N and the large-N limit)
and balanced cluster states, where the network symmetry reduces the 2N x 2N Jacobian to
small blocks.
"""

import logging

import numpy as np
from scipy.linalg import eigvals

from ..config import settings
from ..errors import AsymptoteError, NonExistenceError
from ..reduction.interactions import InteractionSet
from .network import LockedState, NetworkSpec, StabilityReport, stability_report

logger = logging.getLogger(__name__)

PHASE_ZERO_TOL = 1e-9


def _check_denominator(denominator: float, numerator: float, kappa: float, what: str, eps: float):
    """Raise when an isostable denominator vanishes relative to the problem scale."""
    scale = max(abs(numerator), abs(kappa))
    if abs(denominator) <= settings.asymptote_tol * scale:
        logger.error(f'{what}: isostable denominator {denominator:.3e} vanishes at eps={eps}')
        raise AsymptoteError(
            f'{what} isostable value diverges at epsilon={eps} (limit point)', parameter=eps
        )


def synchrony_analysis(
    net: NetworkSpec,
    interactions: InteractionSet,
    kappa: float | None = None,
    omega: float | None = None,
) -> tuple[LockedState, StabilityReport]:
    """Existence and stability of the synchronous state Φ = 0.

    With constant row sums c the common isostable value is
    Ψ = -εcH4(0) / (κ + εc(H5(0) + H6(0))); with non-constant row sums synchrony exists
    only if H1(0) = H4(0) = 0, and then Ψ = 0 and Ω = ω.

    Raises:
        AsymptoteError: If the denominator of Ψ vanishes
        NonExistenceError: If neither existence case applies

    """
    kappa = interactions.kappa if kappa is None else kappa
    omega = interactions.omega if omega is None else omega
    eps, n = net.epsilon, net.size
    h = {k: float(interactions.value(k, 0.0)) for k in range(1, 7)}
    hp = {k: float(interactions.slope(k, 0.0)) for k in range(1, 7)}
    c = net.row_sums
    spread = float(np.ptp(c))

    if spread <= 1e-12 * max(1.0, float(np.max(np.abs(c)))):
        row_sum = float(np.mean(c))
        denominator = kappa + eps * row_sum * (h[5] + h[6])
        numerator = eps * row_sum * h[4]
        _check_denominator(denominator, numerator, kappa, 'synchrony', eps)
        psi = -numerator / denominator
        frequency = omega + eps * row_sum * (h[1] + psi * (h[2] + h[3]))
    elif abs(h[1]) <= PHASE_ZERO_TOL and abs(h[4]) <= PHASE_ZERO_TOL:
        denominator, psi, frequency = kappa, 0.0, omega
    else:
        gap = abs(eps) * spread * max(abs(h[1]), abs(h[4]))
        logger.error(f'Synchrony does not exist on this network at eps={eps}')
        raise NonExistenceError(
            'Synchrony needs constant row sums or H1(0) = H4(0) = 0', spread=gap
        )

    state = LockedState(
        phases=np.zeros(n),
        isostables=np.full(n, psi),
        frequency=frequency,
        tag='synchrony',
        epsilon=eps,
        details={'psi': psi, 'denominator': denominator},
    )

    phase_slope = hp[1] + psi * (hp[2] + hp[3])
    isostable_slope = hp[4] + psi * (hp[5] + hp[6])
    laplacian_part = -eps * np.array([[phase_slope, h[3]], [isostable_slope, h[6]]])
    row_part = eps * np.array([[0.0, h[2] + h[3]], [0.0, h[5] + h[6]]])
    uncoupled = np.array([[0.0, 0.0], [0.0, kappa]])

    if net.is_global:
        transverse = laplacian_part + row_part + uncoupled
        rotational = np.array([0.0, kappa + eps * (h[5] + h[6])], dtype=complex)
        blocks = {'rotational': rotational, 'transverse': eigvals(transverse)}
        values = np.concatenate([rotational, np.tile(blocks['transverse'], n - 1)])
    else:
        matrix = (
            np.kron(laplacian_part, net.laplacian)
            + np.kron(row_part, np.diag(c))
            + np.kron(uncoupled, np.eye(n))
        )
        values = eigvals(matrix)
        blocks = {}

    return state, stability_report(values, blocks=blocks, details={'psi': psi})


def _splay_sums(n_points: int, interactions: InteractionSet) -> tuple[np.ndarray, dict, dict]:
    phases = 2 * np.pi * np.arange(1, n_points + 1) / n_points
    values = {k: interactions.value(k, phases) for k in range(1, 7)}
    slopes = {k: interactions.slope(k, phases) for k in range(1, 7)}
    return phases, values, slopes


def _finite_splay_blocks(
    n_points: int, interactions: InteractionSet, eps: float, kappa: float, psi: float
) -> dict[int, np.ndarray]:
    """2 x 2 blocks Λ_q of the circulant splay Jacobian, q = 0..n_points-1."""
    phases, h, hp = _splay_sums(n_points, interactions)
    phase_slope = hp[1] + psi * (hp[2] + hp[3])
    isostable_slope = hp[4] + psi * (hp[5] + hp[6])
    blocks = {}
    for q in range(n_points):
        wave = np.exp(1j * q * phases)
        blocks[q] = (eps / n_points) * np.array(
            [
                [np.sum(phase_slope * (wave - 1)), np.sum(h[3] * wave + h[2])],
                [np.sum(isostable_slope * (wave - 1)), np.sum(h[6] * wave + h[5])],
            ]
        ) + np.array([[0, 0], [0, kappa]])
    return blocks


def _large_n_splay_blocks(
    interactions: InteractionSet, eps: float, kappa: float, psi: float
) -> dict[int, np.ndarray]:
    """Blocks Λ_q of the N → ∞ splay, q = 0..K+1 (K the Fourier truncation)."""

    def c(k: int, mode: int) -> complex:
        return interactions.coefficient(k, mode)

    blocks = {}
    for q in range(interactions.max_mode + 2):
        blocks[q] = np.array(
            [
                [
                    -eps * 1j * q * (c(1, -q) + psi * (c(2, -q) + c(3, -q))),
                    eps * (c(3, -q) + c(2, 0)),
                ],
                [
                    -eps * 1j * q * (c(4, -q) + psi * (c(5, -q) + c(6, -q))),
                    kappa + eps * (c(6, -q) + c(5, 0)),
                ],
            ]
        )
    return blocks


def splay_asymptote(
    n_nodes: int | None, interactions: InteractionSet, kappa: float | None = None
) -> float | None:
    """Coupling strength ε∞ = -Nκ/(β5 + β6) where the splay isostable value diverges.

    Returns None when β5 + β6 vanishes (no limit point).
    """
    kappa = interactions.kappa if kappa is None else kappa
    if n_nodes is None:
        total = (interactions.coefficient(5, 0) + interactions.coefficient(6, 0)).real
        n_eff = 1.0
    else:
        _, h, _ = _splay_sums(n_nodes, interactions)
        total = float(np.sum(h[5] + h[6]))
        n_eff = float(n_nodes)
    if abs(total) < 1e-14:
        return None
    return -n_eff * kappa / total


def splay_analysis(
    n_nodes: int | None,
    interactions: InteractionSet,
    epsilon: float,
    kappa: float | None = None,
    omega: float | None = None,
) -> tuple[LockedState, StabilityReport]:
    """Existence and stability of the splay state on a globally coupled network.

    ``n_nodes=None`` selects the large-N limit, where the circulant sums become Fourier
    coefficients (H_k)_{-q}.

    Raises:
        AsymptoteError: If the denominator Nκ + ε(β5 + β6) vanishes

    """
    kappa = interactions.kappa if kappa is None else kappa
    omega = interactions.omega if omega is None else omega
    eps = epsilon

    if n_nodes is None:
        mean = {k: interactions.coefficient(k, 0).real for k in range(1, 7)}
        denominator = kappa + eps * (mean[5] + mean[6])
        numerator = eps * mean[4]
        _check_denominator(denominator, numerator, kappa, 'splay', eps)
        psi = -numerator / denominator
        frequency = omega + eps * (mean[1] + psi * (mean[2] + mean[3]))
        blocks = _large_n_splay_blocks(interactions, eps, kappa, psi)
        values = [eigvals(blocks[0])]
        for q in range(1, len(blocks)):
            block_values = eigvals(blocks[q])
            values.extend([block_values, np.conj(block_values)])
        phases = np.zeros(0)
        tag = 'splay(inf)'
    else:
        _, h, _ = _splay_sums(n_nodes, interactions)
        beta = {k: float(np.sum(h[k])) for k in range(1, 7)}
        denominator = n_nodes * kappa + eps * (beta[5] + beta[6])
        numerator = eps * beta[4]
        _check_denominator(denominator, numerator, n_nodes * kappa, 'splay', eps)
        psi = -numerator / denominator
        frequency = omega + (eps / n_nodes) * (beta[1] + psi * (beta[2] + beta[3]))
        blocks = _finite_splay_blocks(n_nodes, interactions, eps, kappa, psi)
        values = [eigvals(block) for block in blocks.values()]
        phases = 2 * np.pi * np.arange(n_nodes) / n_nodes
        tag = f'splay({n_nodes})'

    state = LockedState(
        phases=phases,
        isostables=np.full(len(phases), psi),
        frequency=float(np.real(frequency)),
        tag=tag,
        epsilon=eps,
        details={'psi': float(psi), 'denominator': float(denominator)},
    )
    report = stability_report(
        np.concatenate(values),
        blocks={f'q={q}': eigvals(block) for q, block in blocks.items()},
        details={'psi': float(psi)},
    )
    return state, report


def balanced_cluster_analysis(
    n_clusters: int,
    cluster_size: int,
    interactions: InteractionSet,
    epsilon: float,
    kappa: float | None = None,
    omega: float | None = None,
) -> tuple[LockedState, StabilityReport]:
    """Existence and stability of M equal clusters of m nodes spaced 2π/M apart.

    Intracluster eigenvalues (multiplicity N - M) come from a single 2 x 2 block;
    intercluster eigenvalues are the splay blocks of an M-node network.

    Raises:
        AsymptoteError: If the denominator Mκ + ε(σ5 + σ6) vanishes

    """
    kappa = interactions.kappa if kappa is None else kappa
    omega = interactions.omega if omega is None else omega
    eps, big_m = epsilon, n_clusters
    n_nodes = n_clusters * cluster_size

    _, h, hp = _splay_sums(big_m, interactions)
    sigma = {k: float(np.sum(h[k])) for k in range(1, 7)}
    sigma_slope = {k: float(np.sum(hp[k])) for k in range(1, 7)}
    denominator = big_m * kappa + eps * (sigma[5] + sigma[6])
    numerator = eps * sigma[4]
    _check_denominator(denominator, numerator, big_m * kappa, 'balanced cluster', eps)
    psi = -numerator / denominator
    frequency = omega + (eps / big_m) * (sigma[1] + psi * (sigma[2] + sigma[3]))

    intra = np.array(
        [
            [
                -(eps / big_m) * (sigma_slope[1] + psi * (sigma_slope[2] + sigma_slope[3])),
                (eps / big_m) * sigma[2],
            ],
            [
                -(eps / big_m) * (sigma_slope[4] + psi * (sigma_slope[5] + sigma_slope[6])),
                (eps / big_m) * sigma[5] + kappa,
            ],
        ]
    )
    inter = _finite_splay_blocks(big_m, interactions, eps, kappa, psi)

    intra_values = eigvals(intra)
    values = [np.tile(intra_values, n_nodes - big_m)] + [eigvals(b) for b in inter.values()]
    blocks = {'intracluster': intra_values}
    blocks.update({f'q={q}': eigvals(block) for q, block in inter.items()})

    state = LockedState(
        phases=2 * np.pi * (np.arange(n_nodes) // cluster_size) / big_m,
        isostables=np.full(n_nodes, psi),
        frequency=frequency,
        tag=f'balanced({big_m},{cluster_size})',
        epsilon=eps,
        details={'psi': psi, 'denominator': denominator},
    )
    return state, stability_report(np.concatenate(values), blocks=blocks, details={'psi': psi})
