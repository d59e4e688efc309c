"""Command-line front end.

Every subcommand builds a request model, hands it to the matching service and writes
plot-ready CSV or JSON. ``run`` maps failures to exit codes: 2 for configuration
problems, 3 for numerical failures.
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Literal, Optional, Sequence

from fastmcp.utilities.logging import configure_logging
from pydantic import AliasChoices, BaseModel, Field, ValidationError
from pydantic_settings import (
    BaseSettings,
    CliApp,
    CliPositionalArg,
    CliSubCommand,
    SettingsConfigDict,
    SettingsError,
)

from .config import settings
from .errors import (
    ConfigurationError,
    InconsistencyError,
    NumericalError,
    UnsupportedInputError,
)
from .locking.sweep import StateClass
from .models.photinus_models import (
    CompareRequest,
    CompareState,
    HopRequest,
    LockedRequest,
    OracleRequest,
    OracleTableRequest,
    OrbitRequest,
    ReduceRequest,
    SimulateRequest,
    SimulationMode,
    SweepRequest,
)
from .nodes.registry import ModelDescriptor
from .reduction.orbit import export_orbit
from .services import (
    HigherOrderService,
    LockingService,
    OracleService,
    ReductionService,
    SimulationService,
)
from .simulation.integrate import export_trajectory
from .utils import list_recipes, load_recipe

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_reduction: ReductionService | None = None


def _services() -> ReductionService:
    """Reduction service shared by all subcommands of one process."""
    global _reduction
    if _reduction is None:
        _reduction = ReductionService()
    return _reduction


def parse_range(text: str) -> tuple[float, float, float]:
    """Parse ``a:b:step``.

    Raises:
        ConfigurationError: If the text is not three colon-separated numbers

    """
    parts = text.split(':')
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as e:
        raise ConfigurationError(f'Expected an eps range a:b:step, got {text!r}') from e
    return start, stop, step


def _csv_text(rows: Sequence[dict[str, Any]]) -> str:
    fields: list[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator='\n')
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def write_output(
    payload: BaseModel | Sequence[dict[str, Any]],
    out: Optional[Path],
    fmt: Literal['csv', 'json'],
) -> None:
    """Write rows as CSV or a model/rows as JSON, to ``out`` or stdout."""
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=2) + '\n'
    elif fmt == 'json':
        text = json.dumps(list(payload), indent=2) + '\n'
    else:
        text = _csv_text(payload)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
        logger.info(f'Wrote {out}')


class ModelOptions(BaseModel):
    """Options shared by subcommands that run the reduction pipeline."""

    model: str = Field(default='mfcgl', description='Registered node model')
    params: dict[str, float] = Field(
        default_factory=dict, description='Parameter overrides, e.g. c1=-2,c2=1.1'
    )
    out: Optional[Path] = Field(default=None, description='Output file (default: stdout)')
    format: Literal['csv', 'json'] = Field(default='csv', description='Output format')

    @property
    def descriptor(self) -> ModelDescriptor:
        """Model descriptor of these options."""
        return ModelDescriptor(model=self.model, params=self.params)


class NetworkOptions(ModelOptions):
    """Options selecting a network."""

    n_nodes: int = Field(
        default=2, ge=2, validation_alias=AliasChoices('N', 'n_nodes'), description='Network size'
    )
    topology: Literal['global', 'matrix'] = Field(default='global')
    matrix_file: Optional[Path] = Field(default=None, description='N x N weight matrix file')

    def matrix(self) -> Optional[str]:
        """Path of the weight matrix, or None for global coupling."""
        if self.topology == 'global':
            return None
        if self.matrix_file is None:
            raise ConfigurationError('--topology matrix needs --matrix-file')
        return str(self.matrix_file)


class Orbit(ModelOptions):
    """Find the limit cycle and print T and κ."""

    format: Literal['csv', 'json'] = 'json'

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        req = OrbitRequest(model=self.descriptor)
        result = _services().get_orbit(req)
        print(f'T={result.period:.6f} kappa={result.kappa:.6f}')
        if self.out is None:
            return
        if self.format == 'csv':
            orbit, _ = _services().responses(req.model)
            write_output(export_orbit(orbit)[0], self.out, 'csv')
        else:
            write_output(result, self.out, 'json')


class Reduce(ModelOptions):
    """Emit the response set summary and the interaction functions."""

    samples: int = Field(default=256, ge=1)

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        result = _services().reduce(ReduceRequest(model=self.descriptor, samples=self.samples))
        write_output(result.table if self.format == 'csv' else result, self.out, self.format)


class Locked(NetworkOptions):
    """Existence and stability of one state class at one ε."""

    state: StateClass | Literal['generic'] = 'synchrony'
    eps: float = Field(..., description='Coupling strength')
    n_clusters: Optional[int] = None
    cluster_size: Optional[int] = None
    n_a: Optional[int] = None
    phases: Optional[list[float]] = None

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        req = LockedRequest(
            model=self.descriptor,
            state=self.state,
            epsilon=self.eps,
            n_nodes=self.n_nodes,
            n_clusters=self.n_clusters,
            cluster_size=self.cluster_size,
            n_a=self.n_a,
            phases=self.phases,
            matrix_file=self.matrix(),
        )
        result = LockingService(_services()).locked(req)
        if self.format == 'json':
            write_output(result, self.out, 'json')
            return
        rows = [
            {
                'eps': s.epsilon,
                'state': s.tag,
                'frequency': s.frequency,
                'psi_min': min(s.isostables or [s.details.get('psi', 0.0)]),
                'psi_max': max(s.isostables or [s.details.get('psi', 0.0)]),
                'critical_real_part': s.critical_real_part,
                'verdict': s.verdict,
                'chi': s.details.get('chi', ''),
            }
            for s in result.states
        ]
        write_output(rows, self.out, 'csv')


class Sweep(ModelOptions):
    """Follow a state class over an ε range and report its bifurcations."""

    state: StateClass = 'synchrony'
    eps_range: str = Field(..., description='a:b:step (use --eps-range=a:b:step if a < 0)')
    n_nodes: Optional[int] = Field(
        default=2, ge=2, validation_alias=AliasChoices('N', 'n_nodes')
    )
    n_clusters: Optional[int] = None
    cluster_size: Optional[int] = None
    n_a: Optional[int] = None

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        start, stop, step = parse_range(self.eps_range)
        req = SweepRequest(
            model=self.descriptor,
            state=self.state,
            n_nodes=self.n_nodes,
            n_clusters=self.n_clusters,
            cluster_size=self.cluster_size,
            n_a=self.n_a,
            eps_start=start,
            eps_stop=stop,
            eps_step=step,
        )
        summary = LockingService(_services()).sweep(req)
        if self.format == 'json':
            write_output(summary, self.out, 'json')
            return
        write_output([row.model_dump() for row in summary.rows], self.out, 'csv')
        for row in summary.bifurcations:
            print(f'# {row.kind} {row.state} eps={row.eps:.6f}', file=sys.stderr)


class Hop(ModelOptions):
    """Boundaries of the higher-order phase reduction."""

    state: Literal['synchrony', 'splay', 'antisynchrony'] = 'synchrony'
    order: int = Field(default=2, ge=1, le=3)
    n_nodes: int = Field(default=3, ge=2, validation_alias=AliasChoices('N', 'n_nodes'))
    eps: Optional[float] = None

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        req = HopRequest(
            model=self.descriptor,
            state=self.state,
            order=self.order,
            n_nodes=self.n_nodes,
            epsilon=self.eps,
        )
        result = HigherOrderService(_services()).hop(req)
        if self.format == 'json':
            write_output(result, self.out, 'json')
            return
        rows = [
            {'state': result.state, 'order': result.order, 'n_nodes': result.n_nodes, 'eps': e}
            for e in result.boundaries
        ]
        write_output(rows, self.out, 'csv')


class Oracle(BaseModel):
    """MF-CGLE closed forms at one c1 or over a c1 grid."""

    c2: float = Field(..., gt=0)
    c1: Optional[float] = Field(default=None, description='Single c1 (JSON result)')
    c1_min: float = -4.0
    c1_max: float = 4.0
    points: int = Field(default=200, ge=2)
    out: Optional[Path] = None
    format: Literal['csv', 'json'] = 'csv'

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        service = OracleService(_services())
        if self.c1 is not None:
            result = service.boundaries(OracleRequest(c1=self.c1, c2=self.c2))
            write_output(result, self.out, 'json')
            return
        req = OracleTableRequest(
            c2=self.c2, c1_min=self.c1_min, c1_max=self.c1_max, points=self.points
        )
        write_output(service.table(req), self.out, self.format)


class Simulate(NetworkOptions):
    """Simulate the full or reduced network and summarise its clusters."""

    mode: SimulationMode = 'reduced'
    eps: float = Field(..., description='Coupling strength')
    t_end: float = Field(..., gt=0)
    dt_out: float = Field(default=0.5, gt=0)
    theta_range: tuple[float, float] = (0.0, 6.283185307179586)
    psi_range: tuple[float, float] = (0.0, 0.0)
    seed: int = 0
    window: Optional[tuple[float, float]] = None
    tol_phase: float = 0.05
    tol_psi: float = 0.02

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        req = SimulateRequest(
            model=self.descriptor,
            mode=self.mode,
            n_nodes=self.n_nodes,
            matrix_file=self.matrix(),
            epsilon=self.eps,
            t_end=self.t_end,
            dt_out=self.dt_out,
            theta_range=self.theta_range,
            psi_range=self.psi_range,
            seed=self.seed,
            window=self.window,
            tol_phase=self.tol_phase,
            tol_psi=self.tol_psi,
        )
        trajectory, result = SimulationService(_services()).simulate(req)
        if self.out is not None:
            if self.format == 'csv':
                write_output(export_trajectory(trajectory), self.out, 'csv')
            else:
                write_output(result, self.out, 'json')
        print(result.model_dump_json(indent=2))


class Compare(BaseModel):
    """Overlay pipeline and closed-form MF-CGLE boundaries and report the deviation."""

    model: str = 'mfcgl'
    c2: float = Field(..., gt=0)
    state: CompareState = 'synchrony'
    order: Optional[int] = Field(default=None, ge=2, le=3)
    n_nodes: int = Field(default=5, ge=3, validation_alias=AliasChoices('N', 'n_nodes'))
    c1_min: float = -4.0
    c1_max: float = 4.0
    points: int = Field(default=21, ge=2)
    eps_min: float = -3.0
    eps_max: float = 3.0
    eps_points: int = Field(default=241, ge=3)
    tol: float = Field(default=1e-5, gt=0)
    out: Optional[Path] = None
    format: Literal['csv', 'json'] = 'csv'

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        if self.model != 'mfcgl':
            raise UnsupportedInputError('Closed forms exist only for the mfcgl model')
        req = CompareRequest(
            c2=self.c2,
            state=self.state,
            order=self.order,
            n_nodes=self.n_nodes,
            c1_min=self.c1_min,
            c1_max=self.c1_max,
            points=self.points,
            eps_min=self.eps_min,
            eps_max=self.eps_max,
            eps_points=self.eps_points,
            tol=self.tol,
        )
        result = OracleService(_services()).compare(req)
        if self.out is not None:
            rows = [row.model_dump() for row in result.rows]
            write_output(result if self.format == 'json' else rows, self.out, self.format)
        print(f'{result.curve}: max deviation {result.max_deviation:.3e} (tol {result.tol:g})')
        if not result.passed:
            raise InconsistencyError(
                f'Pipeline deviates from the closed form by {result.max_deviation:.3e}'
            )


class Recipe(BaseModel):
    """Run a shipped figure recipe; ``recipe list`` prints the available names."""

    name: CliPositionalArg[str]

    def cli_cmd(self) -> None:
        """Run the subcommand."""
        if self.name == 'list':
            for name, description in list_recipes().items():
                print(f'{name}: {description}')
            return
        recipe = load_recipe(self.name)
        logger.info(f'Running recipe {self.name}: {recipe["description"]}')
        code = run(recipe['argv'])
        if code != EXIT_OK:
            raise SystemExit(code)


class PhotinusCli(BaseSettings):
    """Phase-isostable reduction and phase-locking analysis of oscillator networks."""

    model_config = SettingsConfigDict(
        cli_prog_name='photinus',
        cli_kebab_case=True,
        env_prefix='PHOTINUS_CLI_',
    )

    orbit: CliSubCommand[Orbit]
    reduce: CliSubCommand[Reduce]
    locked: CliSubCommand[Locked]
    sweep: CliSubCommand[Sweep]
    hop: CliSubCommand[Hop]
    oracle: CliSubCommand[Oracle]
    simulate: CliSubCommand[Simulate]
    compare: CliSubCommand[Compare]
    recipe: CliSubCommand[Recipe]

    def cli_cmd(self) -> None:
        """Dispatch to the selected subcommand."""
        CliApp.run_subcommand(self)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        CliApp.run(PhotinusCli, cli_args=args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_CONFIG
    except (ValidationError, SettingsError, ConfigurationError, UnsupportedInputError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as e:
        print(f'numerical failure: {e}', file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def main() -> None:
    """Console entry point."""
    configure_logging(level=settings.logging_level)
    sys.exit(run())
