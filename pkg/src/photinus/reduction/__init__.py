"""Limit cycles, response curves and interaction functions of a single node."""

from .hierarchy import (
    RESPONSE_NAMES,
    ResponseSet,
    assemble_alpha,
    assemble_b,
    hierarchy_residuals,
    lift_state,
    normalization_residuals,
    project_state,
    solve_hierarchy,
)
from .interactions import (
    INTERACTION_NAMES,
    KERNEL_NAMES,
    InteractionSet,
    RawKernelSet,
    average_to_H,
    expand_coupling,
    export_interactions,
    interaction_coefficients,
    kernel_values,
    phase_only,
    quadrature_interaction,
)
from .orbit import PeriodicOrbit, export_orbit, find_periodic_orbit

__all__ = [
    'INTERACTION_NAMES',
    'InteractionSet',
    'KERNEL_NAMES',
    'PeriodicOrbit',
    'RESPONSE_NAMES',
    'RawKernelSet',
    'ResponseSet',
    'assemble_alpha',
    'assemble_b',
    'average_to_H',
    'expand_coupling',
    'export_interactions',
    'export_orbit',
    'find_periodic_orbit',
    'hierarchy_residuals',
    'interaction_coefficients',
    'kernel_values',
    'lift_state',
    'normalization_residuals',
    'phase_only',
    'project_state',
    'quadrature_interaction',
    'solve_hierarchy',
]
