"""Node vector fields, couplings and the built-in oscillator models."""

from .base import CouplingModel, VectorFieldModel, central_difference, eval_derivative_tensor
from .mfcgl import MFCGL_DEFAULTS, make_mfcgl_node
from .morris_lecar import MORRIS_LECAR_DEFAULTS, m_inf, make_morris_lecar_node, w_inf
from .registry import ModelDescriptor, available_models, model_from_descriptor, register_model

__all__ = [
    'CouplingModel',
    'MFCGL_DEFAULTS',
    'MORRIS_LECAR_DEFAULTS',
    'ModelDescriptor',
    'VectorFieldModel',
    'available_models',
    'central_difference',
    'eval_derivative_tensor',
    'm_inf',
    'make_mfcgl_node',
    'make_morris_lecar_node',
    'model_from_descriptor',
    'register_model',
    'w_inf',
]
