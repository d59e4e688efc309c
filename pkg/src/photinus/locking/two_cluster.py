"""Two-cluster states of globally coupled networks.

Clusters A (N_A nodes at phase 0) and B (N_B nodes at phase χ) run on different orbits,
so each carries its own isostable value. For a given χ the two isostable balances are a
2 x 2 linear system; the remaining condition is that both clusters share one frequency,
which is a scalar equation in χ solved by a sign-change scan followed by bisection.
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import eigvals
from scipy.optimize import bisect

from ..config import settings
from ..errors import ConfigurationError
from ..reduction.interactions import InteractionSet
from .existence import existence_residual
from .network import LockedState, NetworkSpec, StabilityReport, stability_report

logger = logging.getLogger(__name__)


class ClusterBalance(BaseModel):
    """Isostable values and frequency mismatch of a two-cluster pattern, vectorised over χ."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    chi: np.ndarray
    psi_a: np.ndarray
    psi_b: np.ndarray
    frequency_a: np.ndarray
    frequency_b: np.ndarray
    determinant: np.ndarray = Field(..., description='Determinant of the isostable system')

    @property
    def mismatch(self) -> np.ndarray:
        """Ω_A - Ω_B."""
        return self.frequency_a - self.frequency_b


class TwoClusterSearch(BaseModel):
    """All two-cluster solutions found for one (N_A, N_B, ε)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_a: int = Field(..., ge=1)
    n_b: int = Field(..., ge=1)
    epsilon: float
    roots: list[float] = Field(default_factory=list, description='Phase gaps χ of the solutions')
    asymptotes: list[float] = Field(
        default_factory=list, description='Phase gaps where the isostable system is singular'
    )
    solutions: list[tuple[LockedState, StabilityReport]] = Field(default_factory=list)


def cluster_balance(
    chi: np.ndarray | float,
    n_a: int,
    n_b: int,
    interactions: InteractionSet,
    epsilon: float,
    kappa: float | None = None,
    omega: float | None = None,
) -> ClusterBalance:
    """Eliminate Ψ_A, Ψ_B at phase gap ``chi`` and evaluate both cluster frequencies."""
    kappa = interactions.kappa if kappa is None else kappa
    omega = interactions.omega if omega is None else omega
    chi = np.atleast_1d(np.asarray(chi, dtype=float))
    s = epsilon / (n_a + n_b)

    h0 = {k: float(interactions.value(k, 0.0)) for k in range(1, 7)}
    hp = {k: interactions.value(k, chi) for k in range(1, 7)}
    hm = {k: interactions.value(k, -chi) for k in range(1, 7)}

    m11 = kappa + s * (n_a * (h0[5] + h0[6]) + n_b * hp[5])
    m12 = s * n_b * hp[6]
    m21 = s * n_a * hm[6]
    m22 = kappa + s * (n_a * hm[5] + n_b * (h0[5] + h0[6]))
    r1 = -s * (n_a * h0[4] + n_b * hp[4])
    r2 = -s * (n_a * hm[4] + n_b * h0[4])
    det = m11 * m22 - m12 * m21

    with np.errstate(divide='ignore', invalid='ignore'):
        psi_a = (r1 * m22 - m12 * r2) / det
        psi_b = (m11 * r2 - m21 * r1) / det

    frequency_a = omega + s * (
        n_a * (h0[1] + psi_a * (h0[2] + h0[3]))
        + n_b * (hp[1] + psi_a * hp[2] + psi_b * hp[3])
    )
    frequency_b = omega + s * (
        n_a * (hm[1] + psi_b * hm[2] + psi_a * hm[3])
        + n_b * (h0[1] + psi_b * (h0[2] + h0[3]))
    )
    return ClusterBalance(
        chi=chi,
        psi_a=psi_a,
        psi_b=psi_b,
        frequency_a=frequency_a,
        frequency_b=frequency_b,
        determinant=det,
    )


def _pair_block(
    interactions: InteractionSet, delta: float, psi_i: float, psi_j: float
) -> np.ndarray:
    """Off-diagonal 2 x 2 Jacobian entry of node j acting on node i, before the ε/N factor."""
    theta = (
        interactions.slope(1, delta)
        + psi_i * interactions.slope(2, delta)
        + psi_j * interactions.slope(3, delta)
    )
    psi = (
        interactions.slope(4, delta)
        + psi_i * interactions.slope(5, delta)
        + psi_j * interactions.slope(6, delta)
    )
    return np.array(
        [[theta, interactions.value(3, delta)], [psi, interactions.value(6, delta)]], dtype=float
    )


def _diagonal_block(
    interactions: InteractionSet,
    kappa: float,
    scale: float,
    own: tuple[int, float],
    other: tuple[int, float, float],
    psi: float,
) -> np.ndarray:
    """Diagonal 2 x 2 Jacobian entry of a node, self-coupling included.

    ``own`` is (cluster size, 0) and ``other`` is (size, phase gap, isostable value) of the
    opposite cluster, both seen from the node.
    """
    n_own, _ = own
    n_other, gap, psi_other = other

    def summed(k: int, derivative: bool) -> float:
        fn = interactions.slope if derivative else interactions.value
        return float(n_own * fn(k, 0.0) + n_other * fn(k, gap))

    theta_sum = (
        summed(1, True)
        + psi * summed(2, True)
        + psi * n_own * float(interactions.slope(3, 0.0))
        + psi_other * n_other * float(interactions.slope(3, gap))
    )
    psi_sum = (
        summed(4, True)
        + psi * summed(5, True)
        + psi * n_own * float(interactions.slope(6, 0.0))
        + psi_other * n_other * float(interactions.slope(6, gap))
    )
    own_coupling = scale * _pair_block(interactions, 0.0, psi, psi)
    return own_coupling + np.array(
        [
            [-scale * theta_sum, scale * summed(2, False)],
            [-scale * psi_sum, kappa + scale * summed(5, False)],
        ]
    )


def routh_stable(matrix: np.ndarray) -> bool:
    """Routh conditions on the cubic left after removing the zero root of a 4 x 4 matrix.

    The characteristic polynomial λ⁴ + q1λ³ + q2λ² + q3λ + q4 has q4 = 0; the remaining
    cubic is stable iff q1, q2, q3 > 0 and q1q2 > q3.
    """
    coefficients = np.real(np.poly(matrix))
    q1, q2, q3 = coefficients[1], coefficients[2], coefficients[3]
    return bool(q1 > 0 and q2 > 0 and q3 > 0 and q1 * q2 > q3)


def two_cluster_blocks(
    state: LockedState, n_a: int, n_b: int, interactions: InteractionSet, kappa: float
) -> dict[str, np.ndarray]:
    """Intracluster blocks S_A, S_B and the 4 x 4 intercluster matrix J_M."""
    chi = float(state.details['chi'])
    psi_a, psi_b = float(state.details['psi_a']), float(state.details['psi_b'])
    scale = state.epsilon / (n_a + n_b)

    diag_a = _diagonal_block(interactions, kappa, scale, (n_a, 0.0), (n_b, chi, psi_b), psi_a)
    diag_b = _diagonal_block(interactions, kappa, scale, (n_b, 0.0), (n_a, -chi, psi_a), psi_b)
    block_aa = scale * _pair_block(interactions, 0.0, psi_a, psi_a)
    block_ab = scale * _pair_block(interactions, chi, psi_a, psi_b)
    block_ba = scale * _pair_block(interactions, -chi, psi_b, psi_a)
    block_bb = scale * _pair_block(interactions, 0.0, psi_b, psi_b)

    s_a = diag_a - block_aa
    s_b = diag_b - block_bb
    j_m = np.block([[s_a + n_a * block_aa, n_b * block_ab], [n_a * block_ba, s_b + n_b * block_bb]])
    return {'S_A': s_a, 'S_B': s_b, 'J_M': j_m}


def _locked_state(
    chi: float,
    balance: ClusterBalance,
    n_a: int,
    n_b: int,
    interactions: InteractionSet,
    epsilon: float,
    kappa: float,
) -> LockedState:
    psi_a, psi_b = float(balance.psi_a[0]), float(balance.psi_b[0])
    state = LockedState(
        phases=np.concatenate([np.zeros(n_a), np.full(n_b, chi)]),
        isostables=np.concatenate([np.full(n_a, psi_a), np.full(n_b, psi_b)]),
        frequency=float(0.5 * (balance.frequency_a[0] + balance.frequency_b[0])),
        tag=f'two-cluster({n_a},{n_b})',
        epsilon=epsilon,
        details={
            'chi': chi,
            'psi_a': psi_a,
            'psi_b': psi_b,
            'denominator': float(balance.determinant[0]),
        },
    )
    net = NetworkSpec.global_coupling(n_a + n_b, epsilon)
    residual = existence_residual(state, net, interactions, kappa)
    return state.model_copy(update={'residual': residual})


def two_cluster_stability(
    state: LockedState, n_a: int, n_b: int, interactions: InteractionSet, kappa: float
) -> StabilityReport:
    """Stability of a two-cluster state from its block decomposition."""
    blocks = two_cluster_blocks(state, n_a, n_b, interactions, kappa)
    intra_a, intra_b = eigvals(blocks['S_A']), eigvals(blocks['S_B'])
    inter = eigvals(blocks['J_M'])
    values = np.concatenate([np.tile(intra_a, n_a - 1), np.tile(intra_b, n_b - 1), inter])
    routh = routh_stable(blocks['J_M'])
    # the rotational mode is the intercluster eigenvalue of smallest magnitude
    transverse = np.delete(inter, int(np.argmin(np.abs(inter))))
    inter_decays = bool(np.all(transverse.real < 0))
    if routh != inter_decays:
        logger.warning(
            f'Routh test ({routh}) disagrees with the intercluster spectrum at '
            f'chi={state.details["chi"]:.6f}'
        )
    return stability_report(
        values,
        blocks={'intracluster_A': intra_a, 'intracluster_B': intra_b, 'intercluster': inter},
        details={
            'chi': state.details['chi'],
            'routh_stable': float(routh),
            'routh_agrees': float(routh == inter_decays),
        },
    )


def two_cluster_search(
    n_a: int,
    n_b: int,
    interactions: InteractionSet,
    epsilon: float,
    kappa: float | None = None,
    omega: float | None = None,
    *,
    samples: int | None = None,
    root_tol: float | None = None,
) -> TwoClusterSearch:
    """Locate every two-cluster solution with χ in (0, 2π).

    The mismatch Ω_A - Ω_B is sampled at χ_k = 2πk/S; each sign change is refined by
    bisection. A bracket in which the isostable determinant changes sign holds a pole of
    the mismatch: the pole is reported as an asymptote and the mismatch is searched for
    roots separately on either side of it.

    Raises:
        ConfigurationError: If a cluster is empty

    """
    if n_a < 1 or n_b < 1:
        raise ConfigurationError(f'Both clusters need at least one node, got ({n_a}, {n_b})')
    kappa = interactions.kappa if kappa is None else kappa
    omega = interactions.omega if omega is None else omega
    samples = samples or settings.two_cluster_samples
    root_tol = root_tol or settings.root_tol

    search = TwoClusterSearch(n_a=n_a, n_b=n_b, epsilon=epsilon)
    if epsilon == 0:
        logger.info('Uncoupled network: every phase gap is neutral, no isolated two-cluster root')
        return search

    def balance(chi: float) -> ClusterBalance:
        return cluster_balance(chi, n_a, n_b, interactions, epsilon, kappa, omega)

    def mismatch(chi: float) -> float:
        return float(balance(chi).mismatch[0])

    def determinant(chi: float) -> float:
        return float(balance(chi).determinant[0])

    def add_root(lo: float, hi: float, f_lo: float, f_hi: float) -> None:
        if np.isfinite(f_lo) and np.isfinite(f_hi) and f_lo * f_hi < 0:
            search.roots.append(float(bisect(mismatch, lo, hi, xtol=root_tol)))

    def add_pole(pole: float) -> None:
        logger.warning(f'Two-cluster isostable values diverge near chi={pole:.6f}')
        search.asymptotes.append(float(pole))

    chi = 2 * np.pi * np.arange(1, samples) / samples
    scan = cluster_balance(chi, n_a, n_b, interactions, epsilon, kappa, omega)
    f, det = scan.mismatch, scan.determinant
    # roots are searched this far from the refined pole
    gap = max(100 * root_tol, 1e-9)

    for k in range(len(chi) - 1):
        lo, hi = float(chi[k]), float(chi[k + 1])
        if det[k] == 0:
            add_pole(lo)
            add_root(lo + gap, hi, mismatch(lo + gap), f[k + 1])
            continue
        if f[k] == 0:
            search.roots.append(lo)
            continue
        if det[k] * det[k + 1] < 0:
            pole = bisect(determinant, lo, hi, xtol=root_tol)
            add_pole(pole)
            if pole - gap > lo:
                add_root(lo, pole - gap, f[k], mismatch(pole - gap))
            if pole + gap < hi:
                add_root(pole + gap, hi, mismatch(pole + gap), f[k + 1])
            continue
        add_root(lo, hi, f[k], f[k + 1])

    if det[-1] == 0:
        add_pole(float(chi[-1]))
    elif f[-1] == 0:
        search.roots.append(float(chi[-1]))

    for root in search.roots:
        state = _locked_state(root, balance(root), n_a, n_b, interactions, epsilon, kappa)
        report = two_cluster_stability(state, n_a, n_b, interactions, kappa)
        search.solutions.append((state, report))

    logger.info(
        f'Two-cluster ({n_a},{n_b}) at eps={epsilon}: {len(search.roots)} root(s), '
        f'{len(search.asymptotes)} asymptote(s)'
    )
    return search


def two_cluster_solve(
    n_a: int,
    n_b: int,
    interactions: InteractionSet,
    epsilon: float,
    kappa: float | None = None,
    omega: float | None = None,
) -> list[tuple[LockedState, StabilityReport]]:
    """Existence and stability of all two-cluster states, asymptotic roots excluded."""
    return two_cluster_search(n_a, n_b, interactions, epsilon, kappa, omega).solutions
