"""Request and result models shared by the CLI, the services and the MCP tools."""

from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator
from typing_extensions import Self

from ..higher_order import HopState
from ..locking.network import LockedState, StabilityReport, Verdict
from ..locking.sweep import BifurcationRow, StateClass, SweepResult, SweepRow
from ..nodes.registry import ModelDescriptor
from ..oracle import BoundarySet
from ..reduction.orbit import PeriodicOrbit
from ..simulation.clusters import ClusterSummary

LEADING_EIGENVALUES = 8


def eps_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive grid start, start + step, ..., stop.

    Raises:
        ValueError: For a zero step or a step pointing away from ``stop``

    """
    if step == 0:
        raise ValueError('The eps step must be nonzero')
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    if count < 1:
        raise ValueError(f'Empty eps range {start}:{stop}:{step}')
    return start + step * np.arange(count)


class PipelineRequest(BaseModel):
    """Base for requests that run the reduction pipeline of one node model."""

    model: ModelDescriptor = Field(
        default_factory=lambda: ModelDescriptor(model='mfcgl'),
        description='Node model and parameter overrides',
        examples=[{'model': 'morris_lecar', 'params': {}}],
    )


class OrbitRequest(PipelineRequest):
    """Request the periodic orbit and Floquet data of a node."""


class OrbitResult(BaseModel):
    """Period and Floquet data of the stable orbit."""

    model: str = Field(..., description='Model name', examples=['morris_lecar'])
    period: float = Field(..., description='Period T', examples=[8.1654])
    frequency: float = Field(..., description='Angular frequency ω = 2π/T')
    kappa: float = Field(..., description='Slow Floquet exponent κ', examples=[-0.4094])
    exponents: list[float] = Field(..., description='Real parts of all Floquet exponents')
    newton_steps: int = Field(..., description='Shooting Newton iterations')
    residual: float = Field(..., description='Scaled closing residual')

    @classmethod
    def from_orbit(cls, name: str, orbit: PeriodicOrbit) -> 'OrbitResult':
        """Create an OrbitResult from a PeriodicOrbit."""
        return cls(
            model=name,
            period=orbit.period,
            frequency=orbit.frequency,
            kappa=orbit.kappa,
            exponents=[float(e.real) for e in orbit.exponents],
            newton_steps=orbit.newton_steps,
            residual=orbit.residual,
        )


class ReduceRequest(PipelineRequest):
    """Request response curves and interaction functions of a node."""

    samples: int = Field(
        default=256, ge=0, description='χ samples in the H1..H6 table (0 omits the table)'
    )


class ReduceResult(BaseModel):
    """Summary of the reduction pipeline: residuals, H coefficients and a sampled table."""

    orbit: OrbitResult
    hierarchy_residuals: dict[str, float] = Field(
        ..., description='Sup-norm residual of each adjoint equation'
    )
    normalization_residuals: dict[str, float] = Field(
        ..., description='Deviation from each normalisation identity'
    )
    coefficients: dict[str, dict[str, Any]] = Field(
        ..., description='Fourier coefficients of H1..H6 (modes, real, imag)'
    )
    table: list[dict[str, float]] = Field(
        default_factory=list, description='Rows chi, H1..H6 on a uniform grid'
    )


class LockedRequest(PipelineRequest):
    """Existence and stability of one locked state class at one coupling strength."""

    state: StateClass | Literal['generic'] = Field(
        default='synchrony', description='State class', examples=['two-cluster']
    )
    epsilon: float = Field(..., description='Coupling strength ε', examples=[0.065])
    n_nodes: Optional[int] = Field(
        default=2, ge=2, description='Network size N (None: large-N splay)', examples=[200]
    )
    n_clusters: Optional[int] = Field(default=None, ge=1, description='Balanced clusters M')
    cluster_size: Optional[int] = Field(default=None, ge=1, description='Nodes per cluster m')
    n_a: Optional[int] = Field(default=None, ge=1, description='Nodes in cluster A', examples=[28])
    phases: Optional[list[float]] = Field(
        default=None, description='Relative phases of a generic pattern'
    )
    matrix_file: Optional[str] = Field(
        default=None, description='Whitespace-separated N x N weight matrix (default: global)'
    )

    @model_validator(mode='after')
    def validate_state(self) -> Self:
        """Check that the parameters of the chosen state class are present."""
        if self.state == 'generic' and not self.phases:
            raise ValueError('Generic locked states need phases')
        if self.state == 'balanced' and (self.n_clusters is None or self.cluster_size is None):
            raise ValueError('Balanced cluster states need n_clusters and cluster_size')
        if self.state == 'two-cluster' and (
            self.n_a is None or self.n_nodes is None or self.n_a >= self.n_nodes
        ):
            raise ValueError('Two-cluster states need 1 <= n_a < n_nodes')
        if self.matrix_file and self.state not in ('synchrony', 'generic'):
            raise ValueError('Weight matrices are supported for synchrony and generic states')
        return self


class LockedSummary(BaseModel):
    """A locked state with its stability verdict."""

    tag: str = Field(..., description='State tag', examples=['two-cluster(28,172)'])
    epsilon: float
    frequency: float = Field(..., description='Collective frequency Ω')
    phases: list[float]
    isostables: list[float]
    details: dict[str, float] = Field(default_factory=dict)
    verdict: Verdict
    critical_real_part: float
    leading_eigenvalues: list[tuple[float, float]] = Field(
        ..., description='(Re, Im) of the eigenvalues with largest real part'
    )

    @classmethod
    def from_state(cls, state: LockedState, report: StabilityReport) -> 'LockedSummary':
        """Create a LockedSummary from a locked state and its stability report."""
        order = np.argsort(-report.eigenvalues.real)[:LEADING_EIGENVALUES]
        return cls(
            tag=state.tag,
            epsilon=state.epsilon,
            frequency=state.frequency,
            phases=state.phases.tolist(),
            isostables=state.isostables.tolist(),
            details=state.details,
            verdict=report.verdict,
            critical_real_part=report.critical_real_part,
            leading_eigenvalues=[
                (float(mu.real), float(mu.imag)) for mu in report.eigenvalues[order]
            ],
        )


class LockedResult(BaseModel):
    """All states found for a locked-state request."""

    states: list[LockedSummary] = Field(default_factory=list)
    asymptotes: list[float] = Field(
        default_factory=list, description='Two-cluster χ values where Ψ diverges'
    )


class SweepRequest(PipelineRequest):
    """Follow one state class across an ε range."""

    state: StateClass = Field(default='synchrony', description='State class')
    n_nodes: Optional[int] = Field(default=2, ge=2, description='Network size N')
    n_clusters: Optional[int] = Field(default=None, ge=1)
    cluster_size: Optional[int] = Field(default=None, ge=1)
    n_a: Optional[int] = Field(default=None, ge=1)
    eps_start: float = Field(..., examples=[0.0])
    eps_stop: float = Field(..., examples=[0.2])
    eps_step: float = Field(..., examples=[0.002])

    @model_validator(mode='after')
    def validate_range(self) -> Self:
        """Reject zero steps and empty ranges."""
        eps_grid(self.eps_start, self.eps_stop, self.eps_step)
        return self

    @property
    def eps_values(self) -> np.ndarray:
        """The ε grid."""
        return eps_grid(self.eps_start, self.eps_stop, self.eps_step)


class SweepSummary(BaseModel):
    """Sweep rows and bifurcations."""

    state: StateClass
    rows: list[SweepRow] = Field(default_factory=list)
    bifurcations: list[BifurcationRow] = Field(default_factory=list)
    missing: list[float] = Field(default_factory=list)

    @classmethod
    def from_sweep(cls, result: SweepResult) -> 'SweepSummary':
        """Create a SweepSummary from a SweepResult."""
        return cls(
            state=result.selection.state,
            rows=result.rows,
            bifurcations=result.bifurcations,
            missing=result.missing,
        )


class HopRequest(PipelineRequest):
    """Boundaries of synchrony or splay under the higher-order phase reduction."""

    state: HopState | Literal['antisynchrony'] = Field(default='synchrony')
    order: int = Field(default=2, ge=1, le=3, description='Truncation order in ε')
    n_nodes: int = Field(default=3, ge=2, description='Network size N')
    epsilon: Optional[float] = Field(
        default=None, description='Optional ε at which to report the phase-only spectrum'
    )


class HopResult(BaseModel):
    """Higher-order boundaries and, optionally, the spectrum at one ε."""

    state: str
    order: int
    n_nodes: int
    boundaries: list[float] = Field(..., description='Real nonzero ε where stability changes')
    synchrony_coefficients: list[float] = Field(
        default_factory=list, description='x_k of ξ(ε) = Σ x_k ε^k'
    )
    verdict: Optional[Verdict] = None
    critical_real_part: Optional[float] = None


class OracleRequest(BaseModel):
    """Closed-form MF-CGLE boundaries at one (c1, c2)."""

    c1: float = Field(..., examples=[-3.0])
    c2: float = Field(..., gt=0, examples=[0.5])


class OracleResult(BaseModel):
    """Closed-form boundaries plus σ at each quintic root."""

    boundaries: BoundarySet
    sigma: list[float] = Field(..., description='σ at each phase-isostable splay boundary')


class OracleTableRequest(BaseModel):
    """Closed-form boundaries over a c1 grid, as plot-ready rows."""

    c2: float = Field(..., gt=0, examples=[1.1])
    c1_min: float = Field(default=-4.0)
    c1_max: float = Field(default=4.0)
    points: int = Field(default=200, ge=2)

    @property
    def c1_values(self) -> np.ndarray:
        """The c1 grid."""
        return np.linspace(self.c1_min, self.c1_max, self.points)


CompareState = Literal['synchrony', 'antisynchrony', 'splay', 'splay-inf']


class CompareRequest(OracleTableRequest):
    """Overlay pipeline boundaries on the MF-CGLE closed forms."""

    state: CompareState = Field(default='synchrony')
    order: Optional[int] = Field(
        default=None, ge=2, le=3, description='Higher-order reduction instead of phase-isostable'
    )
    n_nodes: int = Field(default=5, ge=3, description='N for finite splay comparisons')
    points: int = Field(default=21, ge=2)
    eps_min: float = Field(default=-3.0)
    eps_max: float = Field(default=3.0)
    eps_points: int = Field(default=241, ge=3, description='Sweep resolution of the ε range')
    kernel_grid: int = Field(default=64, ge=16, description='Kernel grid of the MF-CGLE runs')
    tol: float = Field(default=1e-5, gt=0, description='Largest acceptable deviation')

    @property
    def curve(self) -> str:
        """Name of the oracle curve this comparison checks."""
        prefix = {'synchrony': 'eps_s', 'antisynchrony': 'eps_a', 'splay': 'eps_0'}
        base = prefix['splay' if self.state == 'splay-inf' else self.state]
        if self.order is None:
            return 'eps_s' if base == 'eps_s' else f'{base}_pi'
        return f'{base}_{self.order}'


class CompareRow(BaseModel):
    """Oracle root and nearest pipeline boundary at one c1."""

    c1: float
    oracle: float
    pipeline: Optional[float]
    deviation: float


class CompareResult(BaseModel):
    """Deviation between pipeline and closed-form boundaries."""

    curve: str
    rows: list[CompareRow] = Field(default_factory=list)
    max_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        """True when every oracle root was matched within ``tol``."""
        return self.max_deviation <= self.tol


SimulationMode = Literal['full', 'reduced', 'unaveraged']


class SimulateRequest(PipelineRequest):
    """Simulate a network from uniformly drawn initial conditions."""

    mode: SimulationMode = Field(default='reduced')
    n_nodes: int = Field(default=2, ge=2)
    matrix_file: Optional[str] = None
    epsilon: float = Field(..., examples=[0.065])
    t_end: float = Field(..., gt=0, examples=[300.0])
    dt_out: float = Field(default=0.5, gt=0)
    theta_range: tuple[float, float] = Field(
        default=(0.0, 2 * np.pi), examples=[(0.283725, 0.283735)]
    )
    psi_range: tuple[float, float] = Field(default=(0.0, 0.0), examples=[(2.9794, 2.9798)])
    seed: int = Field(default=0, description='Seed of the initial-condition generator')
    window: Optional[tuple[float, float]] = Field(
        default=None, description='Cluster detection window (default: last tenth)'
    )
    tol_phase: float = Field(default=0.05, gt=0)
    tol_psi: float = Field(default=0.02, gt=0)


class SimulateResult(BaseModel):
    """Final state and cluster summary of a simulation."""

    mode: SimulationMode
    t_final: float
    clusters: ClusterSummary
    order_parameter: Optional[tuple[float, float]] = Field(
        default=None, description='(R, Θ) at the final time'
    )
    metadata: dict[str, Any] = Field(default_factory=dict)
