"""Cluster detection and order parameters for simulated networks."""

import logging
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform

from ..errors import ConfigurationError, UnsupportedInputError
from ..reduction.hierarchy import ResponseSet, project_state
from .integrate import Trajectory

logger = logging.getLogger(__name__)

DEFAULT_TOL_PHASE = 0.05
DEFAULT_TOL_PSI = 0.02

Classification = Literal['synchrony', 'splay', 'M-cluster', 'incoherent']


class ClusterSummary(BaseModel):
    """Partition of the nodes into phase-isostable clusters over a time window."""

    labels: list[int] = Field(..., description='Cluster index of each node')
    clusters: list[list[int]] = Field(..., description='Node indices per cluster, largest first')
    mean_phases: list[float] = Field(..., description='Mean relative phase per cluster')
    mean_isostables: list[float] = Field(..., description='Mean ψ per cluster')
    phase_gaps: list[float] = Field(
        ..., description='Mean phase of each cluster minus that of the first, mod 2π'
    )
    classification: Classification
    drift: float = Field(..., ge=0, description='Largest phase-difference excursion in window')
    window: tuple[float, float]

    @property
    def sizes(self) -> list[int]:
        """Cluster sizes, largest first."""
        return [len(c) for c in self.clusters]

    @property
    def n_clusters(self) -> int:
        """Number of clusters."""
        return len(self.clusters)


def _circular_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(np.angle(np.exp(1j * (a - b))))


def _classify(
    mean_phases: np.ndarray, n_nodes: int, drift: float, tol_phase: float
) -> Classification:
    count = len(mean_phases)
    if count == 1:
        return 'synchrony'
    if drift > tol_phase:
        return 'incoherent'
    if count == n_nodes:
        ordered = np.sort(np.mod(mean_phases, 2 * np.pi))
        gaps = np.diff(np.append(ordered, ordered[0] + 2 * np.pi))
        if np.all(np.abs(gaps - 2 * np.pi / n_nodes) < tol_phase):
            return 'splay'
    return 'M-cluster'


def detect_clusters(
    trajectory: Trajectory,
    window: tuple[float, float] | None = None,
    tol_phase: float = DEFAULT_TOL_PHASE,
    tol_psi: float = DEFAULT_TOL_PSI,
) -> ClusterSummary:
    """Group nodes with matching window-averaged relative phase and isostable value.

    Relative phases are taken against node 0 and averaged on the circle; two nodes are
    linked when their circular distance is below ``tol_phase`` and their ψ difference below
    ``tol_psi``, and clusters are the single-linkage components. ``window`` defaults to the
    last tenth of the run.

    Raises:
        ConfigurationError: If the window holds no samples
        UnsupportedInputError: For full trajectories (see ``reduce_trajectory``)

    """
    if trajectory.kind != 'reduced':
        raise UnsupportedInputError('Cluster detection needs a reduced trajectory')
    t0, t1 = float(trajectory.times[0]), float(trajectory.times[-1])
    window = window or (t1 - 0.1 * (t1 - t0), t1)
    index = trajectory.window(*window)
    if len(index) == 0:
        raise ConfigurationError(f'No samples in window {window}')

    theta = trajectory.unwrapped_phases[index]
    psi = trajectory.isostables[index]
    relative = np.exp(1j * (theta - theta[:, :1]))
    mean_relative = relative.mean(axis=0)
    mean_phases = np.angle(mean_relative)
    mean_psi = psi.mean(axis=0)
    drift = float(np.max(_circular_distance(np.angle(relative), mean_phases[None, :])))

    n_nodes = trajectory.n_nodes
    if n_nodes == 1:
        labels = np.zeros(1, dtype=int)
    else:
        phase_distance = _circular_distance(mean_phases[:, None], mean_phases[None, :])
        psi_distance = np.abs(mean_psi[:, None] - mean_psi[None, :])
        scaled = np.maximum(phase_distance / tol_phase, psi_distance / tol_psi)
        np.fill_diagonal(scaled, 0.0)
        tree = linkage(squareform(scaled, checks=False), method='single')
        labels = fcluster(tree, t=1.0, criterion='distance') - 1

    groups = [np.flatnonzero(labels == k) for k in np.unique(labels)]
    groups.sort(key=lambda g: (-len(g), g[0]))
    cluster_phases = np.array([np.angle(mean_relative[g].mean()) for g in groups])
    relabelled = np.empty(n_nodes, dtype=int)
    for k, group in enumerate(groups):
        relabelled[group] = k

    classification = _classify(cluster_phases, n_nodes, drift, tol_phase)
    logger.info(
        f'Detected {len(groups)} cluster(s) of sizes {[len(g) for g in groups]}: {classification}'
    )
    return ClusterSummary(
        labels=relabelled.tolist(),
        clusters=[g.tolist() for g in groups],
        mean_phases=cluster_phases.tolist(),
        mean_isostables=[float(mean_psi[g].mean()) for g in groups],
        phase_gaps=np.mod(cluster_phases - cluster_phases[0], 2 * np.pi).tolist(),
        classification=classification,
        drift=drift,
        window=(float(window[0]), float(window[1])),
    )


def reduce_trajectory(
    trajectory: Trajectory, responses: ResponseSet, start: float | None = None
) -> Trajectory:
    """Project the samples of a full trajectory from ``start`` on onto (θ, ψ) coordinates."""
    if trajectory.kind == 'reduced':
        return trajectory
    index = trajectory.window(trajectory.times[0] if start is None else start)
    states = np.array(
        [[project_state(responses, x) for x in trajectory.states[k]] for k in index]
    )
    # θ continuous in time
    states[..., 0] = np.unwrap(states[..., 0], axis=0)
    return Trajectory(
        kind='reduced',
        times=trajectory.times[index],
        states=states,
        metadata={**trajectory.metadata, 'projected': True},
    )


def order_parameter(trajectory: Trajectory, t: float) -> tuple[float, float]:
    """Order parameter (R, Θ), R e^{iΘ} = (1/N) Σ_j e^{iθ_j}, at the sample nearest t.

    Raises:
        UnsupportedInputError: For full trajectories

    """
    if trajectory.kind != 'reduced':
        logger.error('Order parameter requested for a full trajectory')
        raise UnsupportedInputError(
            'The order parameter needs the phases of a reduced trajectory'
        )
    k = int(np.argmin(np.abs(trajectory.times - t)))
    z = np.mean(np.exp(1j * trajectory.unwrapped_phases[k]))
    return float(np.abs(z)), float(np.angle(z))
