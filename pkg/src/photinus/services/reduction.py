"""Reduction Service for photinus.

This service resolves model descriptors and runs the orbit -> responses -> interactions
pipeline, memoising each stage per descriptor and grid sizes.
"""

import logging

from pydantic import BaseModel, ConfigDict

from ..config import settings
from ..models.photinus_models import OrbitRequest, OrbitResult, ReduceRequest, ReduceResult
from ..nodes.base import CouplingModel, VectorFieldModel
from ..nodes.registry import ModelDescriptor, model_from_descriptor
from ..reduction.hierarchy import (
    ResponseSet,
    hierarchy_residuals,
    normalization_residuals,
    solve_hierarchy,
)
from ..reduction.interactions import (
    InteractionSet,
    RawKernelSet,
    average_to_H,
    expand_coupling,
    export_interactions,
    interaction_coefficients,
)
from ..reduction.orbit import PeriodicOrbit, find_periodic_orbit

logger = logging.getLogger(__name__)


class Pipeline(BaseModel):
    """Every stage of the reduction of one model."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    descriptor: ModelDescriptor
    model: VectorFieldModel
    coupling: CouplingModel
    orbit: PeriodicOrbit
    responses: ResponseSet
    kernels: RawKernelSet
    interactions: InteractionSet


class ReductionService:
    """Service for running and caching the reduction pipeline.

    Orbits and response sets depend only on the node, so they are cached separately from
    the coupling-dependent kernels and interaction functions.
    """

    def __init__(self, kernel_grid: int | None = None) -> None:
        """Initialize the service with an optional kernel grid override."""
        self._kernel_grid = kernel_grid or settings.kernel_grid
        self._responses: dict[tuple, tuple[PeriodicOrbit, ResponseSet]] = {}
        self._pipelines: dict[tuple, Pipeline] = {}

    def _key(self, descriptor: ModelDescriptor) -> tuple:
        return (
            descriptor.cache_key(),
            settings.orbit_grid,
            settings.fourier_modes,
            self._kernel_grid,
        )

    def responses(self, descriptor: ModelDescriptor) -> tuple[PeriodicOrbit, ResponseSet]:
        """Orbit and response curves of the descriptor's node.

        Raises:
            UnsupportedInputError: For unknown models or parameters
            ConvergenceError: If the orbit cannot be found
            ResonanceError: If the adjoint hierarchy is singular

        """
        key = self._key(descriptor)
        if key not in self._responses:
            model, _ = model_from_descriptor(descriptor)
            orbit = find_periodic_orbit(model)
            self._responses[key] = (orbit, solve_hierarchy(orbit, model))
        else:
            logger.debug(f'Reusing responses of {descriptor.model}')
        return self._responses[key]

    def pipeline(self, descriptor: ModelDescriptor) -> Pipeline:
        """Run (or recall) the full reduction of ``descriptor``."""
        key = self._key(descriptor)
        if key in self._pipelines:
            return self._pipelines[key]

        model, coupling = model_from_descriptor(descriptor)
        orbit, responses = self.responses(descriptor)
        kernels = expand_coupling(responses, coupling, grid=self._kernel_grid)
        pipeline = Pipeline(
            descriptor=descriptor,
            model=model,
            coupling=coupling,
            orbit=orbit,
            responses=responses,
            kernels=kernels,
            interactions=average_to_H(kernels),
        )
        self._pipelines[key] = pipeline
        logger.info(
            f'Reduced {descriptor.model}: T={orbit.period:.6f}, kappa={orbit.kappa:.6f}'
        )
        return pipeline

    def coupled(
        self, responses: ResponseSet, coupling: CouplingModel, grid: int | None = None
    ) -> tuple[RawKernelSet, InteractionSet]:
        """Kernels and interaction functions of another coupling on cached responses."""
        kernels = expand_coupling(responses, coupling, grid=grid or self._kernel_grid)
        return kernels, average_to_H(kernels)

    def get_orbit(self, req: OrbitRequest) -> OrbitResult:
        """Find the stable periodic orbit of a node.

        Args:
                req: Request containing the model descriptor

        Returns:
                Period, frequency and Floquet exponents

        """
        orbit, _ = self.responses(req.model)
        return OrbitResult.from_orbit(req.model.model, orbit)

    def reduce(self, req: ReduceRequest) -> ReduceResult:
        """Run the whole reduction and summarise it.

        Args:
                req: Request containing the model descriptor and the table resolution

        Returns:
                Residuals, H1..H6 coefficients and an optional sampled table

        """
        pipeline = self.pipeline(req.model)
        return ReduceResult(
            orbit=OrbitResult.from_orbit(req.model.model, pipeline.orbit),
            hierarchy_residuals=hierarchy_residuals(pipeline.responses, pipeline.model),
            normalization_residuals=normalization_residuals(pipeline.responses, pipeline.model),
            coefficients=interaction_coefficients(pipeline.interactions),
            table=export_interactions(pipeline.interactions, req.samples) if req.samples else [],
        )
