"""Periodic orbits of the uncoupled node and their Floquet data.

This module provides ``find_periodic_orbit``, a Newton shooting solver on a Poincaré
section, together with the ``PeriodicOrbit`` container holding the uniform-in-phase
samples, the monodromy matrix, Floquet multipliers and the slow eigenvectors.
"""

import logging
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import solve_ivp
from scipy.linalg import svd

from ..config import settings
from ..errors import ConvergenceError, UnsupportedSpectrumError
from ..nodes.base import VectorFieldModel
from ..spectral import PeriodicVectorFunction, phase_grid

logger = logging.getLogger(__name__)

# Slowest multiplier below which the variational estimate is at roundoff level
LIOUVILLE_THRESHOLD = 1e-6


class PeriodicOrbit(BaseModel):
    """Stable T-periodic orbit sampled uniformly in phase, θ = 0 at the section point."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    period: float = Field(..., gt=0, description='Period T')
    samples: np.ndarray = Field(..., description='x(θ_m) for θ_m = 2πm/M, shape (M, n)')
    monodromy: np.ndarray = Field(..., description='Monodromy matrix at θ = 0')
    multipliers: np.ndarray = Field(..., description='Floquet multipliers, |λ| descending')
    exponents: np.ndarray = Field(..., description='Floquet exponents log(λ)/T')
    kappa: float = Field(..., description='Slowest nonzero Floquet exponent κ')
    right_vector: np.ndarray = Field(..., description='Unit right eigenvector v for κ')
    left_vector: np.ndarray = Field(..., description='Left eigenvector w with w·v = 1')
    newton_steps: int = Field(..., ge=0, description='Newton iterations used')
    residual: float = Field(..., ge=0, description='Scaled closing residual')

    @property
    def frequency(self) -> float:
        """Angular frequency ω = 2π/T."""
        return 2 * np.pi / self.period

    @property
    def dimension(self) -> int:
        """State dimension n."""
        return self.samples.shape[1]

    @property
    def grid(self) -> int:
        """Number of phase samples M."""
        return self.samples.shape[0]

    @property
    def phases(self) -> np.ndarray:
        """Phase grid θ_m."""
        return phase_grid(self.grid)

    def curve(self, modes: int) -> PeriodicVectorFunction:
        """Truncated Fourier representation of x^γ(θ)."""
        return PeriodicVectorFunction.from_samples(self.samples, modes, name='orbit')

    def resample(self, size: int) -> np.ndarray:
        """Spectrally interpolate the orbit onto a uniform grid of ``size`` points."""
        modes = min(self.grid, size) // 2 - 1
        return self.curve(modes).samples(size)


def _integrate(
    rhs: Any, y0: np.ndarray, span: tuple[float, float], options: dict[str, Any], **kwargs: Any
):
    solution = solve_ivp(rhs, span, y0, **options, **kwargs)
    if not solution.success:
        logger.error(f'Integration failed: {solution.message}')
        raise ConvergenceError(f'Integration failed: {solution.message}')
    return solution


def _variational_rhs(model: VectorFieldModel):
    """Right-hand side for the state, the fundamental matrix and the running trace of DF."""
    n = model.dimension

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        x = y[:n]
        phi = y[n : n + n * n].reshape(n, n)
        jac = model.jacobian(x)
        return np.concatenate([model(x), (jac @ phi).ravel(), [np.trace(jac)]])

    return rhs


def _variational_start(x0: np.ndarray) -> np.ndarray:
    n = len(x0)
    return np.concatenate([x0, np.eye(n).ravel(), [0.0]])


def _section(model: VectorFieldModel, point: np.ndarray) -> tuple[np.ndarray, float]:
    """Unit normal and offset of the Poincaré hyperplane through ``point``."""
    if model.section_axis is not None:
        normal = np.zeros(model.dimension)
        normal[model.section_axis] = 1.0
    else:
        flow = model(point)
        normal = flow / np.linalg.norm(flow)
    return normal, float(normal @ point)


def _outward(samples: np.ndarray, start: np.ndarray, flow: np.ndarray) -> np.ndarray:
    """Direction pointing away from the orbit at its first sample."""
    if samples.shape[1] == 2:
        x, y = samples[:, 0], samples[:, 1]
        area = 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
        normal = np.array([flow[1], -flow[0]])
        return normal if area > 0 else -normal
    return start - samples.mean(axis=0)


def find_periodic_orbit(
    model: VectorFieldModel,
    guess: np.ndarray | None = None,
    period_guess: float | None = None,
    grid: int | None = None,
    tol: float | None = None,
    *,
    transient_periods: int | None = None,
    max_steps: int | None = None,
    method: str | None = None,
    rtol: float | None = None,
    atol: float | None = None,
) -> PeriodicOrbit:
    """Locate the stable periodic orbit of ``model`` by Newton shooting.

    The guess is first relaxed onto the attractor, then (x0, T) is corrected on the
    hyperplane through the guess until the scaled closing residual drops below ``tol``.
    The monodromy matrix comes from the variational equations; for planar models the
    slow exponent is taken from Liouville's formula.

    Args:
        model: Node vector field
        guess: Starting point (defaults to the model's orbit guess)
        period_guess: Starting period (defaults to the model's period guess)
        grid: Number of uniform phase samples M
        tol: Closing residual target
        transient_periods: Guessed periods integrated before shooting
        max_steps: Newton step limit
        method: solve_ivp method
        rtol: Relative integration tolerance
        atol: Absolute integration tolerance

    Returns:
        The converged orbit with its Floquet data

    Raises:
        ConvergenceError: If the section is never crossed or Newton does not converge
        UnsupportedSpectrumError: If the slow multiplier is not real, positive, simple and < 1

    """
    guess = np.asarray(model.orbit_guess if guess is None else guess, dtype=float)
    t_guess = float(model.period_guess if period_guess is None else period_guess)
    grid = grid or settings.orbit_grid
    tol = tol or settings.shooting_tol
    transient = settings.transient_periods if transient_periods is None else transient_periods
    max_steps = max_steps or settings.newton_max_steps
    options = {
        'method': method or settings.integrator_method,
        'rtol': rtol or settings.integrator_rtol,
        'atol': atol or settings.integrator_atol,
    }
    n = model.dimension

    def flow(t: float, y: np.ndarray) -> np.ndarray:
        return model(y)

    normal, offset = _section(model, guess)

    def crossing(t: float, y: np.ndarray) -> float:
        return float(normal @ y - offset)

    crossing.direction = 1  # type: ignore[attr-defined]

    x0 = guess
    if transient > 0:
        x0 = _integrate(flow, guess, (0.0, transient * t_guess), options).y[:, -1]

    returns = _integrate(flow, x0, (0.0, 2.5 * t_guess), options, events=crossing)
    times = returns.t_events[0]
    states = returns.y_events[0]
    if abs(crossing(0.0, x0)) > 1e-12:
        if len(times) == 0:
            logger.error(f'{model.name}: trajectory never crossed the section')
            raise ConvergenceError('Trajectory never crossed the Poincaré section')
        x0 = states[0]
        returns = _integrate(flow, x0, (0.0, 2.5 * t_guess), options, events=crossing)
        times = returns.t_events[0]
    later = times[times > 0.25 * t_guess]
    period = float(later[0]) if len(later) else t_guess

    x = np.array(x0, dtype=float)
    rhs = _variational_rhs(model)
    steps = 0
    while True:
        end = _integrate(rhs, _variational_start(x), (0.0, period), options).y[:, -1]
        x_end = end[:n]
        mismatch = x_end - x
        residual = float(np.linalg.norm(mismatch) / max(1.0, np.linalg.norm(x)))
        logger.debug(f'{model.name}: Newton step {steps}, T={period:.10f}, residual={residual:.3e}')
        if residual < tol:
            break
        if steps >= max_steps:
            logger.error(f'{model.name}: shooting did not converge, residual {residual:.3e}')
            raise ConvergenceError(
                f'Newton shooting did not converge in {max_steps} steps (residual {residual:.3e})'
            )

        monodromy = end[n : n + n * n].reshape(n, n)
        system = np.zeros((n + 1, n + 1))
        system[:n, :n] = monodromy - np.eye(n)
        system[:n, n] = model(x_end)
        system[n, :n] = normal
        update = np.linalg.solve(system, -np.concatenate([mismatch, [normal @ x - offset]]))
        x = x + update[:n]
        period = period + float(update[n])
        steps += 1

    sampled = _integrate(
        rhs, _variational_start(x), (0.0, period), options, t_eval=np.linspace(0, period, grid + 1)
    ).y
    samples = sampled[:n, :grid].T
    monodromy = sampled[n : n + n * n, -1].reshape(n, n)
    trace_integral = float(sampled[-1, -1])

    multipliers = np.linalg.eigvals(monodromy)
    multipliers = multipliers[np.argsort(-np.abs(multipliers))]
    trivial = int(np.argmin(np.abs(multipliers - 1)))
    if abs(multipliers[trivial] - 1) > 1e-6:
        logger.error(f'{model.name}: trivial multiplier {multipliers[trivial]} is not 1')
        raise ConvergenceError(f'Trivial Floquet multiplier {multipliers[trivial]:.8f} is not 1')
    others = np.delete(multipliers, trivial)

    if n == 2:
        kappa = trace_integral / period
        slow = float(np.exp(kappa * period))
        if slow >= LIOUVILLE_THRESHOLD and abs(others[0] - slow) > 1e-6 * max(1.0, slow):
            logger.warning(
                f'{model.name}: variational multiplier {others[0]:.6e} differs from '
                f'Liouville value {slow:.6e}'
            )
    else:
        lead = others[0]
        if abs(lead.imag) > 1e-8 * abs(lead) or lead.real <= 0:
            logger.error(f'{model.name}: slow multiplier {lead} is not real and positive')
            raise UnsupportedSpectrumError(f'Slow Floquet multiplier {lead} is not real positive')
        if len(others) > 1 and abs(others[1] - lead) <= 1e-8 * abs(lead):
            logger.error(f'{model.name}: slow multiplier {lead} is repeated')
            raise UnsupportedSpectrumError(f'Slow Floquet multiplier {lead} is not simple')
        slow = float(lead.real)
        kappa = float(np.log(slow) / period)

    if not 0 < slow < 1:
        logger.error(f'{model.name}: slow multiplier {slow} outside (0, 1)')
        raise UnsupportedSpectrumError(f'Orbit is not stable: slow multiplier {slow}')

    shifted = monodromy - slow * np.eye(n)
    right = svd(shifted)[2][-1]
    left = svd(shifted.T)[2][-1]
    right = right / np.linalg.norm(right)
    if right @ _outward(samples, x, model(x)) < 0:
        right = -right
    left = left / (left @ right)

    if n == 2:
        ordered = np.array([multipliers[trivial], slow], dtype=complex)
    else:
        ordered = np.concatenate([[multipliers[trivial]], others]).astype(complex)
    exponents = np.concatenate([[0j], np.log(ordered[1:].astype(complex)) / period])

    logger.info(
        f'{model.name}: orbit converged in {steps} Newton steps, '
        f'T={period:.6f}, kappa={kappa:.6f}'
    )
    return PeriodicOrbit(
        period=period,
        samples=samples,
        monodromy=monodromy,
        multipliers=ordered,
        exponents=exponents,
        kappa=float(kappa),
        right_vector=right,
        left_vector=left,
        newton_steps=steps,
        residual=residual,
    )


def export_orbit(orbit: PeriodicOrbit) -> tuple[list[dict[str, float]], dict[str, Any]]:
    """Tabulate the orbit samples and summarise its Floquet data.

    Returns:
        Rows with columns theta, x1..xn, and a metadata dict with T, ω and the exponents

    """
    rows = [
        {'theta': float(theta), **{f'x{a + 1}': float(value) for a, value in enumerate(point)}}
        for theta, point in zip(orbit.phases, orbit.samples)
    ]
    metadata = {
        'period': orbit.period,
        'frequency': orbit.frequency,
        'kappa': orbit.kappa,
        'exponents': [float(e.real) for e in orbit.exponents],
        'newton_steps': orbit.newton_steps,
    }
    return rows, metadata
