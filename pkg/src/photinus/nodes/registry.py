"""Name-based registry of node models used by model descriptors."""

import logging
from typing import Any, Callable, Mapping

from pydantic import BaseModel, Field

from ..errors import UnsupportedInputError
from .base import CouplingModel, VectorFieldModel
from .mfcgl import MFCGL_DEFAULTS, make_mfcgl_node
from .morris_lecar import MORRIS_LECAR_DEFAULTS, make_morris_lecar_node

logger = logging.getLogger(__name__)

NodeFactory = Callable[[dict[str, float]], tuple[VectorFieldModel, CouplingModel]]


class ModelDescriptor(BaseModel):
    """JSON-serialisable reference to a registered model and its parameters."""

    model: str = Field(..., description='Registered model name', examples=['mfcgl'])
    params: dict[str, float] = Field(
        default_factory=dict,
        description='Parameter overrides; unspecified parameters keep their defaults',
        examples=[{'c1': -2.0, 'c2': 1.1}],
    )

    def cache_key(self) -> tuple[str, tuple[tuple[str, float], ...]]:
        """Hashable identity used to memoise pipelines."""
        return self.model, tuple(sorted(self.params.items()))


_REGISTRY: dict[str, tuple[NodeFactory, dict[str, float]]] = {
    'mfcgl': (lambda p: make_mfcgl_node(p['c1'], p['c2']), MFCGL_DEFAULTS),
    'morris_lecar': (make_morris_lecar_node, MORRIS_LECAR_DEFAULTS),
}


def register_model(name: str, factory: NodeFactory, defaults: Mapping[str, float]) -> None:
    """Register a custom model factory under ``name``.

    Args:
        name: Descriptor name
        factory: Callable taking the full parameter map
        defaults: Parameter defaults; descriptors may only override these keys

    """
    _REGISTRY[name] = (factory, dict(defaults))
    logger.debug(f'Registered model {name} with parameters {sorted(defaults)}')


def available_models() -> dict[str, dict[str, float]]:
    """List registered models with their default parameters."""
    return {name: dict(defaults) for name, (_, defaults) in sorted(_REGISTRY.items())}


def model_from_descriptor(
    descriptor: ModelDescriptor | Mapping[str, Any],
) -> tuple[VectorFieldModel, CouplingModel]:
    """Resolve a descriptor such as ``{"model": "mfcgl", "params": {"c2": 0.5}}``.

    Raises:
        UnsupportedInputError: For unknown model names or parameter keys

    """
    if not isinstance(descriptor, ModelDescriptor):
        descriptor = ModelDescriptor.model_validate(descriptor)

    if descriptor.model not in _REGISTRY:
        logger.error(f'Unknown model {descriptor.model!r}')
        raise UnsupportedInputError(
            f'Unknown model {descriptor.model!r}; available: {", ".join(sorted(_REGISTRY))}'
        )

    factory, defaults = _REGISTRY[descriptor.model]
    unknown = sorted(set(descriptor.params) - set(defaults))
    if unknown:
        logger.error(f'Unknown parameters for {descriptor.model}: {unknown}')
        raise UnsupportedInputError(
            f'Unknown parameters for {descriptor.model}: {", ".join(unknown)}'
        )

    return factory({**defaults, **descriptor.params})
