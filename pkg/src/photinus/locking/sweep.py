"""Coupling-strength sweeps with bifurcation detection.

A sweep evaluates one state class on an ε grid and reports, between consecutive grid
points, where the stability changes (transverse zero or Hopf pair) or where the branch
ends at a limit point. Crossings are refined by bisection.
"""

import logging
from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import bisect

from ..config import settings
from ..errors import AsymptoteError, ConfigurationError, NonExistenceError
from ..reduction.interactions import InteractionSet
from .network import LockedState, NetworkSpec, StabilityReport, Verdict
from .symmetric import balanced_cluster_analysis, splay_analysis, synchrony_analysis
from .two_cluster import two_cluster_search

logger = logging.getLogger(__name__)

StateClass = Literal['synchrony', 'splay', 'antisynchrony', 'balanced', 'two-cluster']
BifurcationKind = Literal['transverse-zero', 'hopf-pair', 'limit-point']


class StateSelection(BaseModel):
    """Which locked state a sweep follows."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    state: StateClass = Field(default='synchrony', description='State class')
    n_nodes: int | None = Field(
        default=2, ge=2, description='Network size N (None selects the large-N splay limit)'
    )
    n_clusters: int | None = Field(default=None, ge=1, description='Balanced clusters M')
    cluster_size: int | None = Field(default=None, ge=1, description='Nodes per cluster m')
    n_a: int | None = Field(default=None, ge=1, description='Size of two-cluster cluster A')
    weights: np.ndarray | None = Field(
        default=None, description='Weight matrix for synchrony on a non-global network'
    )


class SweepRow(BaseModel):
    """One point of a coupling-strength sweep."""

    eps: float
    state: str = Field(..., description='State tag')
    frequency: float = Field(..., description='Collective frequency Ω')
    psi_min: float
    psi_max: float
    critical_real_part: float = Field(..., description='Largest real part of non-neutral modes')
    verdict: Verdict
    chi: float | None = Field(default=None, description='Two-cluster phase gap')


class BifurcationRow(BaseModel):
    """A stability change or branch end located between two sweep points."""

    kind: BifurcationKind
    state: str
    eps: float = Field(..., description='Refined parameter value')
    eps_low: float
    eps_high: float
    frequency: float | None = Field(
        default=None, description='Imaginary part of the critical pair at a Hopf crossing'
    )


class SweepResult(BaseModel):
    """Rows in ε order plus detected bifurcations."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    selection: StateSelection
    rows: list[SweepRow] = Field(default_factory=list)
    bifurcations: list[BifurcationRow] = Field(default_factory=list)
    missing: list[float] = Field(
        default_factory=list, description='ε values where the state does not exist'
    )


def analyse_state(
    selection: StateSelection,
    interactions: InteractionSet,
    epsilon: float,
    previous_chi: float | None = None,
) -> tuple[LockedState, StabilityReport]:
    """Existence and stability of the selected state at one ε.

    Two-cluster states follow the root closest to ``previous_chi`` (smallest χ without one).

    Raises:
        ConfigurationError: If the selection lacks the parameters its class needs
        AsymptoteError: At a limit point of the branch
        NonExistenceError: If the state does not exist at ``epsilon``

    """
    state = selection.state
    n = selection.n_nodes
    if state == 'synchrony':
        if selection.weights is not None:
            net = NetworkSpec(weights=selection.weights, epsilon=epsilon)
        else:
            net = NetworkSpec.global_coupling(n or 2, epsilon)
        return synchrony_analysis(net, interactions)
    if state == 'splay':
        return splay_analysis(n, interactions, epsilon)
    if state == 'antisynchrony':
        return splay_analysis(2, interactions, epsilon)
    if state == 'balanced':
        if selection.n_clusters is None or selection.cluster_size is None:
            raise ConfigurationError('Balanced cluster sweeps need n_clusters and cluster_size')
        return balanced_cluster_analysis(
            selection.n_clusters, selection.cluster_size, interactions, epsilon
        )

    if selection.n_a is None or n is None or selection.n_a >= n:
        raise ConfigurationError('Two-cluster sweeps need 1 <= n_a < n_nodes')
    search = two_cluster_search(selection.n_a, n - selection.n_a, interactions, epsilon)
    if not search.solutions:
        raise NonExistenceError(f'No two-cluster state at epsilon={epsilon}', spread=np.inf)
    if previous_chi is None:
        return search.solutions[0]
    gaps = [
        abs(np.angle(np.exp(1j * (s.details['chi'] - previous_chi)))) for s, _ in search.solutions
    ]
    return search.solutions[int(np.argmin(gaps))]


def _row(state: LockedState, report: StabilityReport) -> SweepRow:
    psi = state.isostables if len(state.isostables) else np.array([state.details['psi']])
    return SweepRow(
        eps=state.epsilon,
        state=state.tag,
        frequency=state.frequency,
        psi_min=float(np.min(psi)),
        psi_max=float(np.max(psi)),
        critical_real_part=report.critical_real_part,
        verdict=report.verdict,
        chi=state.details.get('chi'),
    )


def _refine_crossing(
    selection: StateSelection,
    interactions: InteractionSet,
    low: float,
    high: float,
    chi: float | None,
    unstable: StabilityReport,
    tol: float,
) -> BifurcationRow:
    """Bisect the sign change of the critical real part between ``low`` and ``high``.

    The crossing is a Hopf pair when the critical eigenvalue on the unstable side of the
    bracket is complex.
    """

    def critical(eps: float) -> float:
        _, report = analyse_state(selection, interactions, eps, chi)
        return report.critical_real_part

    eps = bisect(critical, low, high, xtol=tol)
    state, _ = analyse_state(selection, interactions, eps, chi)
    omega = abs(unstable.critical_eigenvalue.imag)
    hopf = omega > settings.zero_mode_tol * max(unstable.spectral_radius, 1.0)
    return BifurcationRow(
        kind='hopf-pair' if hopf else 'transverse-zero',
        state=state.tag,
        eps=eps,
        eps_low=low,
        eps_high=high,
        frequency=omega if hopf else None,
    )


def _refine_branch_end(
    selection: StateSelection,
    interactions: InteractionSet,
    present: float,
    absent: float,
    chi: float | None,
    tol: float,
) -> float:
    """Bisect between a point where the state exists and one where it does not."""
    while abs(absent - present) > tol:
        middle = 0.5 * (present + absent)
        try:
            analyse_state(selection, interactions, middle, chi)
        except (AsymptoteError, NonExistenceError):
            absent = middle
        else:
            present = middle
    return 0.5 * (present + absent)


def _refine_pole(
    selection: StateSelection,
    interactions: InteractionSet,
    low: float,
    high: float,
    tol: float,
) -> float:
    """Bisect the sign change of the isostable denominator."""

    def denominator(eps: float) -> float:
        try:
            state, _ = analyse_state(selection, interactions, eps)
        except AsymptoteError:
            return 0.0
        return state.details['denominator']

    return bisect(denominator, low, high, xtol=tol)


def sweep(
    selection: StateSelection,
    interactions: InteractionSet,
    eps_values: np.ndarray,
    *,
    bifurcation_tol: float | None = None,
) -> SweepResult:
    """Follow one state class across ``eps_values`` and locate its bifurcations.

    Rows are returned in the order of ``eps_values``; bifurcation rows in the order they are
    bracketed. A stability sign change is ignored when the isostable denominator also changes
    sign in the same bracket, since the spectrum passes through a pole there.
    """
    tol = bifurcation_tol or settings.bifurcation_tol
    eps_values = np.asarray(eps_values, dtype=float)
    result = SweepResult(selection=selection)

    points: list[tuple[float, LockedState | None, StabilityReport | None]] = []
    chi = None
    for eps in eps_values:
        try:
            state, report = analyse_state(selection, interactions, float(eps), chi)
        except (AsymptoteError, NonExistenceError) as e:
            logger.debug(f'{selection.state} absent at eps={eps}: {e}')
            result.missing.append(float(eps))
            points.append((float(eps), None, None))
            continue
        chi = state.details.get('chi', chi)
        result.rows.append(_row(state, report))
        points.append((float(eps), state, report))

    for (low, s0, r0), (high, s1, r1) in zip(points, points[1:]):
        if s0 is None and s1 is None:
            continue
        if s0 is None or s1 is None:
            present, absent = (high, low) if s0 is None else (low, high)
            anchor = s1 if s0 is None else s0
            eps = _refine_branch_end(
                selection, interactions, present, absent, anchor.details.get('chi'), tol
            )
            result.bifurcations.append(
                BifurcationRow(
                    kind='limit-point', state=anchor.tag, eps=eps, eps_low=low, eps_high=high
                )
            )
            continue

        d0, d1 = s0.details.get('denominator'), s1.details.get('denominator')
        across_pole = d0 is not None and d1 is not None and d0 * d1 < 0
        if across_pole and selection.state != 'two-cluster':
            eps = _refine_pole(selection, interactions, low, high, tol)
            result.bifurcations.append(
                BifurcationRow(
                    kind='limit-point', state=s0.tag, eps=eps, eps_low=low, eps_high=high
                )
            )
            continue

        c0, c1 = r0.critical_real_part, r1.critical_real_part
        if not (np.isfinite(c0) and np.isfinite(c1)) or c0 * c1 >= 0 or across_pole:
            continue
        unstable = r0 if c0 > 0 else r1
        try:
            row = _refine_crossing(
                selection, interactions, low, high, s0.details.get('chi'), unstable, tol
            )
        except (AsymptoteError, NonExistenceError, ValueError) as e:
            logger.warning(f'Could not refine crossing in [{low}, {high}]: {e}')
            continue
        result.bifurcations.append(row)

    logger.info(
        f'Sweep of {selection.state} over {len(eps_values)} points: '
        f'{len(result.bifurcations)} bifurcation(s)'
    )
    return result


def stability_region(
    interactions_for: Callable[[float], InteractionSet],
    parameter_values: np.ndarray,
    eps_values: np.ndarray,
    n_nodes: int | None = None,
) -> dict[str, np.ndarray]:
    """Boolean maps of attracting synchrony and splay over (parameter, ε).

    ``interactions_for`` builds the interaction set at each value of the node parameter
    (e.g. c1 of the MF-CGLE). Entries where a state does not exist are False.
    """
    parameter_values = np.asarray(parameter_values, dtype=float)
    eps_values = np.asarray(eps_values, dtype=float)
    shape = (len(parameter_values), len(eps_values))
    synchrony = np.zeros(shape, dtype=bool)
    splay = np.zeros(shape, dtype=bool)
    network_size = n_nodes or 2

    for i, value in enumerate(parameter_values):
        interactions = interactions_for(float(value))
        for j, eps in enumerate(eps_values):
            net = NetworkSpec.global_coupling(network_size, float(eps))
            try:
                synchrony[i, j] = synchrony_analysis(net, interactions)[1].attracting
            except (AsymptoteError, NonExistenceError):
                pass
            try:
                splay[i, j] = splay_analysis(n_nodes, interactions, float(eps))[1].attracting
            except (AsymptoteError, NonExistenceError):
                pass

    return {'synchrony': synchrony, 'splay': splay, 'bistable': synchrony & splay}
