"""Existence and stability of phase-locked states of oscillator networks."""

from .existence import existence_residual, jacobian, jacobian_matrix, solve_existence
from .network import (
    LockedState,
    NetworkSpec,
    StabilityReport,
    Verdict,
    sort_eigenvalues,
    stability_report,
)
from .sweep import (
    BifurcationRow,
    StateSelection,
    SweepResult,
    SweepRow,
    analyse_state,
    stability_region,
    sweep,
)
from .symmetric import (
    balanced_cluster_analysis,
    splay_analysis,
    splay_asymptote,
    synchrony_analysis,
)
from .two_cluster import (
    ClusterBalance,
    TwoClusterSearch,
    cluster_balance,
    routh_stable,
    two_cluster_blocks,
    two_cluster_search,
    two_cluster_solve,
)

__all__ = [
    'BifurcationRow',
    'ClusterBalance',
    'LockedState',
    'NetworkSpec',
    'StabilityReport',
    'StateSelection',
    'SweepResult',
    'SweepRow',
    'TwoClusterSearch',
    'Verdict',
    'analyse_state',
    'balanced_cluster_analysis',
    'cluster_balance',
    'existence_residual',
    'jacobian',
    'jacobian_matrix',
    'routh_stable',
    'solve_existence',
    'sort_eigenvalues',
    'splay_analysis',
    'splay_asymptote',
    'stability_region',
    'stability_report',
    'sweep',
    'synchrony_analysis',
    'two_cluster_blocks',
    'two_cluster_search',
    'two_cluster_solve',
]
