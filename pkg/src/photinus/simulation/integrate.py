"""Direct integration of coupled networks.

This module provides ``simulate_full`` for the network of full node models and
``simulate_phase_isostable`` for the reduced network, either averaged (interaction
functions H1..H6) or unaveraged (two-variable kernels h1..h6).
"""

import logging
from typing import Any, Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import solve_ivp

from ..config import settings
from ..errors import (
    ConfigurationError,
    ConvergenceError,
    DimensionMismatchError,
    DivergenceError,
    UnsupportedInputError,
)
from ..locking.network import LockedState, NetworkSpec
from ..nodes.base import CouplingModel, VectorFieldModel
from ..reduction.interactions import InteractionSet, RawKernelSet

logger = logging.getLogger(__name__)

TrajectoryKind = Literal['full', 'reduced']

# relative size below which Fourier modes of H1..H6 are left out of the right-hand side
MODE_CUTOFF = 1e-14


class Trajectory(BaseModel):
    """Sampled solution of a network simulation.

    Full trajectories store node states x_i, reduced ones the pair (unwrapped θ_i, ψ_i)
    in the last axis of ``states``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: TrajectoryKind
    times: np.ndarray = Field(..., description='Output times, shape (T,)')
    states: np.ndarray = Field(..., description='Node states, shape (T, N, n) or (T, N, 2)')
    metadata: dict[str, Any] = Field(
        default_factory=dict, description='Model, network size, ε, integrator settings and seed'
    )

    @property
    def n_nodes(self) -> int:
        """Number of nodes N."""
        return self.states.shape[1]

    def _require_reduced(self) -> None:
        if self.kind != 'reduced':
            raise UnsupportedInputError(
                'Phases and isostable values are only stored for reduced trajectories'
            )

    @property
    def unwrapped_phases(self) -> np.ndarray:
        """θ_i(t) without wrapping, shape (T, N)."""
        self._require_reduced()
        return self.states[..., 0]

    @property
    def phases(self) -> np.ndarray:
        """θ_i(t) mod 2π, shape (T, N)."""
        return np.mod(self.unwrapped_phases, 2 * np.pi)

    @property
    def isostables(self) -> np.ndarray:
        """ψ_i(t), shape (T, N)."""
        self._require_reduced()
        return self.states[..., 1]

    def window(self, start: float, stop: float | None = None) -> np.ndarray:
        """Indices of the samples with start <= t <= stop."""
        stop = self.times[-1] if stop is None else stop
        return np.flatnonzero((self.times >= start) & (self.times <= stop))


def _options(method: str | None, rtol: float | None, atol: float | None) -> dict[str, Any]:
    return {
        'method': method or settings.integrator_method,
        'rtol': rtol or settings.integrator_rtol,
        'atol': atol or settings.integrator_atol,
    }


def _output_times(t_end: float, dt_out: float) -> np.ndarray:
    if t_end <= 0 or dt_out <= 0:
        raise ConfigurationError(f'Need t_end > 0 and dt_out > 0, got {t_end} and {dt_out}')
    times = np.arange(0.0, t_end + 0.5 * dt_out, dt_out)
    return times[times <= t_end]


def _run(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    size: Callable[[np.ndarray], float],
    t_end: float,
    dt_out: float,
    options: dict[str, Any],
    bound: float,
):
    """Integrate with a terminal event on ``size(y) = bound``."""

    def blow_up(t: float, y: np.ndarray) -> float:
        return size(y) - bound

    blow_up.terminal = True  # type: ignore[attr-defined]

    times = _output_times(t_end, dt_out)
    solution = solve_ivp(rhs, (0.0, times[-1]), y0, t_eval=times, events=blow_up, **options)
    if solution.status == 1:
        time = float(solution.t_events[0][0])
        logger.error(f'Simulation diverged at t={time:.4f} (bound {bound:g})')
        raise DivergenceError(f'State exceeded {bound:g} at t={time:.6g}', time=time)
    if not solution.success:
        logger.error(f'Integration failed: {solution.message}')
        raise ConvergenceError(f'Integration failed: {solution.message}')
    return solution


def simulate_full(
    model: VectorFieldModel,
    coupling: CouplingModel,
    net: NetworkSpec,
    x0: np.ndarray,
    t_end: float,
    dt_out: float,
    *,
    method: str | None = None,
    rtol: float | None = None,
    atol: float | None = None,
    seed: int | None = None,
) -> Trajectory:
    """Integrate ẋ_i = F(x_i) + ε Σ_j w_ij G(x_i, x_j).

    Raises:
        DimensionMismatchError: If ``x0`` does not have shape (N, n)
        DivergenceError: If the state norm exceeds ``settings.divergence_bound``

    """
    x0 = np.asarray(x0, dtype=float)
    n_nodes, n = net.size, model.dimension
    if x0.shape != (n_nodes, n) or coupling.dimension != n:
        logger.error(f'Initial state of shape {x0.shape} for {n_nodes} nodes of dimension {n}')
        raise DimensionMismatchError(
            f'Expected initial states of shape ({n_nodes}, {n}), got {x0.shape}'
        )
    w, eps = net.weights, net.epsilon

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        x = y.reshape(n_nodes, n)
        drive = np.einsum('ij,ija->ia', w, coupling(x[:, None, :], x[None, :, :]))
        return (model(x) + eps * drive).ravel()

    options = _options(method, rtol, atol)
    solution = _run(
        rhs, x0.ravel(), np.linalg.norm, t_end, dt_out, options, settings.divergence_bound
    )
    logger.info(f'Simulated {n_nodes} {model.name} nodes to t={t_end} at eps={eps}')
    return Trajectory(
        kind='full',
        times=solution.t,
        states=solution.y.T.reshape(-1, n_nodes, n),
        metadata={
            'model': model.name,
            'params': dict(model.params),
            'n_nodes': n_nodes,
            'epsilon': eps,
            'seed': seed,
            **options,
        },
    )


def _pairwise(coefficients: np.ndarray, modes: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Matrix of Σ_m c_m e^{im(θ_j - θ_i)}."""
    waves = np.exp(1j * np.multiply.outer(theta, modes))
    return np.real((waves.conj() * coefficients) @ waves.T)


def _averaged_values(interactions: InteractionSet) -> Callable[[np.ndarray], list[np.ndarray]]:
    """Evaluate H1..H6 at all node pairs, skipping modes below round-off of the largest."""
    series = [interactions.function(k) for k in range(1, 7)]
    peak = max(float(np.max(np.abs(fn.coefficients))) for fn in series)
    retained = []
    for fn in series:
        keep = np.abs(fn.coefficients) > MODE_CUTOFF * peak
        retained.append((fn.coefficients[keep], fn.modes[keep]))

    def values(theta: np.ndarray) -> list[np.ndarray]:
        return [_pairwise(coefficients, modes, theta) for coefficients, modes in retained]

    return values


def _kernel_values(
    kernels: RawKernelSet, modes: int | None
) -> Callable[[np.ndarray], list[np.ndarray]]:
    """Evaluate h1..h6 at all node pairs from spectra truncated to |m| <= ``modes``."""
    modes = min(modes or settings.fourier_modes, kernels.grid // 2 - 1)
    retained = np.arange(-modes, modes + 1)
    index = np.ix_(retained % kernels.grid, retained % kernels.grid)
    spectra = [kernels.spectra[f'h{k}'][index] for k in range(1, 7)]

    def values(theta: np.ndarray) -> list[np.ndarray]:
        waves = np.exp(1j * np.multiply.outer(theta, retained))
        return [np.real(waves @ spectrum @ waves.T) for spectrum in spectra]

    return values


def _reduced_run(
    values: Callable[[np.ndarray], list[np.ndarray]],
    net: NetworkSpec,
    omega: float,
    kappa: float,
    theta0: np.ndarray,
    psi0: np.ndarray,
    t_end: float,
    dt_out: float,
    options: dict[str, Any],
    metadata: dict[str, Any],
) -> Trajectory:
    n_nodes = net.size
    theta0 = np.asarray(theta0, dtype=float)
    psi0 = np.asarray(psi0, dtype=float)
    if theta0.shape != (n_nodes,) or psi0.shape != (n_nodes,):
        logger.error(f'Initial phases {theta0.shape} and isostables {psi0.shape} for N={n_nodes}')
        raise DimensionMismatchError(f'Expected initial phases and isostables of length {n_nodes}')
    w, eps = net.weights, net.epsilon

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        theta, psi = y[:n_nodes], y[n_nodes:]
        h1, h2, h3, h4, h5, h6 = values(theta)
        phase_rates = omega + eps * np.sum(
            w * (h1 + psi[:, None] * h2 + psi[None, :] * h3), axis=1
        )
        isostable_rates = kappa * psi + eps * np.sum(
            w * (h4 + psi[:, None] * h5 + psi[None, :] * h6), axis=1
        )
        return np.concatenate([phase_rates, isostable_rates])

    def size(y: np.ndarray) -> float:
        return float(np.max(np.abs(y[n_nodes:])))

    solution = _run(
        rhs,
        np.concatenate([theta0, psi0]),
        size,
        t_end,
        dt_out,
        options,
        settings.divergence_bound,
    )
    states = np.stack([solution.y[:n_nodes].T, solution.y[n_nodes:].T], axis=-1)
    logger.info(
        f'Simulated {n_nodes} reduced nodes to t={t_end} at eps={eps} '
        f'({"averaged" if metadata["averaged"] else "unaveraged"})'
    )
    return Trajectory(
        kind='reduced',
        times=solution.t,
        states=states,
        metadata={'n_nodes': n_nodes, 'epsilon': eps, **options, **metadata},
    )


def simulate_phase_isostable(
    interactions: InteractionSet,
    net: NetworkSpec,
    theta0: np.ndarray,
    psi0: np.ndarray,
    t_end: float,
    dt_out: float,
    *,
    kappa: float | None = None,
    omega: float | None = None,
    averaged: bool = True,
    kernels: RawKernelSet | None = None,
    modes: int | None = None,
    method: str | None = None,
    rtol: float | None = None,
    atol: float | None = None,
    seed: int | None = None,
) -> Trajectory:
    """Integrate the phase-isostable network.

    With ``averaged=True`` the right-hand side uses H_k(θ_j - θ_i); otherwise it uses the
    kernels h_k(θ_i, θ_j) of ``kernels``, truncated to ``modes`` Fourier modes per axis.

    Raises:
        ConfigurationError: If ``averaged=False`` and no kernels are given
        DimensionMismatchError: If the initial conditions do not have length N
        DivergenceError: If some |ψ_i| exceeds ``settings.divergence_bound``

    """
    kappa = interactions.kappa if kappa is None else kappa
    omega = interactions.omega if omega is None else omega
    if averaged:
        values = _averaged_values(interactions)
    elif kernels is None:
        raise ConfigurationError('Unaveraged simulation needs the raw kernel set')
    else:
        values = _kernel_values(kernels, modes)
    return _reduced_run(
        values,
        net,
        omega,
        kappa,
        theta0,
        psi0,
        t_end,
        dt_out,
        _options(method, rtol, atol),
        {'averaged': averaged, 'kappa': kappa, 'omega': omega, 'seed': seed},
    )


def simulate_unaveraged(
    kernels: RawKernelSet,
    net: NetworkSpec,
    theta0: np.ndarray,
    psi0: np.ndarray,
    t_end: float,
    dt_out: float,
    *,
    modes: int | None = None,
    method: str | None = None,
    rtol: float | None = None,
    atol: float | None = None,
    seed: int | None = None,
) -> Trajectory:
    """Integrate the unaveraged network, whose rates use h_k(θ_i, θ_j) instead of H_k."""
    return _reduced_run(
        _kernel_values(kernels, modes),
        net,
        kernels.omega,
        kernels.kappa,
        theta0,
        psi0,
        t_end,
        dt_out,
        _options(method, rtol, atol),
        {
            'averaged': False,
            'kappa': kernels.kappa,
            'omega': kernels.omega,
            'seed': seed,
        },
    )


def random_initial_conditions(
    n_nodes: int,
    theta_range: tuple[float, float],
    psi_range: tuple[float, float],
    seed: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Uniformly drawn (θ, ψ) in the given ranges, reproducible through ``seed``."""
    rng = np.random.default_rng(seed)
    theta = rng.uniform(*theta_range, size=n_nodes)
    psi = rng.uniform(*psi_range, size=n_nodes)
    return theta, psi


def perturbed_state(
    state: LockedState, magnitude: float, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Initial (θ, ψ) at a locked state plus a uniform perturbation of size ``magnitude``."""
    rng = np.random.default_rng(seed)
    theta = state.phases + magnitude * rng.uniform(-1, 1, size=state.size)
    psi = state.isostables + magnitude * rng.uniform(-1, 1, size=state.size)
    return theta, psi


def export_trajectory(trajectory: Trajectory) -> list[dict[str, float]]:
    """Tabulate a trajectory: column t, then theta_i and psi_i or x{a}_i per node."""
    rows = []
    for t, state in zip(trajectory.times, trajectory.states):
        row = {'t': float(t)}
        if trajectory.kind == 'reduced':
            row.update({f'theta_{i}': float(np.mod(s[0], 2 * np.pi)) for i, s in enumerate(state)})
            row.update({f'psi_{i}': float(s[1]) for i, s in enumerate(state)})
        else:
            for i, x in enumerate(state):
                row.update({f'x{a + 1}_{i}': float(value) for a, value in enumerate(x)})
        rows.append(row)
    return rows
