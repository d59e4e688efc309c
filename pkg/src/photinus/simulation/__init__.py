"""Direct simulation of full and reduced networks."""

from .clusters import (
    ClusterSummary,
    detect_clusters,
    order_parameter,
    reduce_trajectory,
)
from .integrate import (
    Trajectory,
    export_trajectory,
    perturbed_state,
    random_initial_conditions,
    simulate_full,
    simulate_phase_isostable,
    simulate_unaveraged,
)

__all__ = [
    'ClusterSummary',
    'Trajectory',
    'detect_clusters',
    'export_trajectory',
    'order_parameter',
    'perturbed_state',
    'random_initial_conditions',
    'reduce_trajectory',
    'simulate_full',
    'simulate_phase_isostable',
    'simulate_unaveraged',
]
