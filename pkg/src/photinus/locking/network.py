"""Network descriptions and the value types of phase-locking analyses."""

import logging
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import settings
from ..errors import ConfigurationError, InconsistencyError

logger = logging.getLogger(__name__)

Verdict = Literal['stable', 'marginal', 'unstable']


class NetworkSpec(BaseModel):
    """N nodes with coupling weights w_ij and coupling strength ε."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    weights: np.ndarray = Field(..., description='Weight matrix W, shape (N, N)')
    epsilon: float = Field(..., description='Coupling strength ε')

    @model_validator(mode='after')
    def validate_weights(self) -> 'NetworkSpec':
        """Ensure W is a real square matrix with at least two nodes."""
        w = self.weights
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f'Weight matrix must be square, got shape {w.shape}')
        if w.shape[0] < 2:
            raise ValueError('A network needs at least two nodes')
        if not np.all(np.isfinite(w)):
            raise ValueError('Weight matrix contains non-finite entries')
        return self

    @classmethod
    def global_coupling(cls, n_nodes: int, epsilon: float) -> 'NetworkSpec':
        """All-to-all coupling with w_ij = 1/N (self-coupling included, row sums 1)."""
        if n_nodes < 2:
            raise ConfigurationError(f'A network needs at least two nodes, got {n_nodes}')
        return cls(weights=np.full((n_nodes, n_nodes), 1.0 / n_nodes), epsilon=epsilon)

    @classmethod
    def constant_row_sum(cls, weights: np.ndarray, row_sum: float, epsilon: float) -> 'NetworkSpec':
        """Rescale each row of ``weights`` so that it sums to ``row_sum``."""
        weights = np.asarray(weights, dtype=float)
        sums = weights.sum(axis=1, keepdims=True)
        if np.any(sums == 0):
            raise ConfigurationError('Rows with zero total weight cannot be rescaled')
        return cls(weights=weights * (row_sum / sums), epsilon=epsilon)

    @classmethod
    def from_matrix_file(cls, path: Path | str, epsilon: float) -> 'NetworkSpec':
        """Read a whitespace-separated N x N weight matrix."""
        try:
            weights = np.loadtxt(path, ndmin=2)
        except (OSError, ValueError) as e:
            logger.error(f'Failed to read weight matrix {path}: {e}')
            raise ConfigurationError(f'Cannot read weight matrix {path}: {e}') from e
        if weights.shape[0] != weights.shape[1]:
            raise ConfigurationError(f'Weight matrix in {path} is not square: {weights.shape}')
        return cls(weights=weights, epsilon=epsilon)

    @property
    def size(self) -> int:
        """Number of nodes N."""
        return self.weights.shape[0]

    @property
    def row_sums(self) -> np.ndarray:
        """Row sums c_i."""
        return self.weights.sum(axis=1)

    @property
    def laplacian(self) -> np.ndarray:
        """Graph Laplacian L_ij = -w_ij + δ_ij Σ_k w_ik."""
        return np.diag(self.row_sums) - self.weights

    @property
    def is_global(self) -> bool:
        """True for w_ij = 1/N."""
        return bool(np.allclose(self.weights, 1.0 / self.size, rtol=0, atol=1e-14))

    def with_epsilon(self, epsilon: float) -> 'NetworkSpec':
        """Same weights at another coupling strength."""
        return self.model_copy(update={'epsilon': epsilon})


class LockedState(BaseModel):
    """A 1:1 phase-locked state: relative phases, isostable values and collective frequency."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    phases: np.ndarray = Field(..., description='Relative phases Φ')
    isostables: np.ndarray = Field(..., description='Isostable values Ψ')
    frequency: float = Field(..., description='Collective frequency Ω')
    tag: str = Field(..., description='State class, e.g. synchrony, splay, two-cluster(28,172)')
    epsilon: float = Field(..., description='Coupling strength the state belongs to')
    residual: float = Field(default=0.0, ge=0, description='Existence residual')
    details: dict[str, float] = Field(default_factory=dict, description='Class parameters')

    @property
    def size(self) -> int:
        """Number of nodes N."""
        return len(self.phases)


class StabilityReport(BaseModel):
    """Eigenvalues of the locked-state Jacobian with a stability verdict."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray = Field(..., description='All Jacobian eigenvalues (complex)')
    zero_mode: complex = Field(..., description='Eigenvalue identified as the rotational mode')
    spectral_radius: float = Field(..., ge=0)
    critical_real_part: float = Field(
        ..., description='Largest real part among non-neutral modes (-inf if none)'
    )
    critical_eigenvalue: complex = Field(..., description='Eigenvalue attaining the maximum')
    verdict: Verdict
    neutral_modes: int = Field(..., ge=0, description='Neutral modes besides the rotational one')
    blocks: dict[str, np.ndarray] = Field(
        default_factory=dict, description='Eigenvalues grouped by structural block'
    )
    details: dict[str, float] = Field(default_factory=dict)

    @property
    def attracting(self) -> bool:
        """True when every non-neutral mode decays."""
        return self.verdict != 'unstable' and self.critical_real_part < -self.margin

    @property
    def margin(self) -> float:
        """Absolute stability margin used for the verdict."""
        return settings.stability_margin * max(self.spectral_radius, 1.0)


def sort_eigenvalues(values: np.ndarray) -> np.ndarray:
    """Sort by real part, then imaginary part."""
    values = np.asarray(values, dtype=complex)
    return values[np.lexsort((values.imag, values.real))]


def stability_report(
    eigenvalues: np.ndarray,
    blocks: dict[str, np.ndarray] | None = None,
    details: dict[str, float] | None = None,
    zero_tol: float | None = None,
    margin: float | None = None,
) -> StabilityReport:
    """Classify a Jacobian spectrum.

    The rotational mode is the eigenvalue of smallest magnitude and must lie within
    ``zero_tol`` times the spectral radius of zero. Other eigenvalues that small are
    neutral: they make the verdict marginal and are ignored by ``critical_real_part``.

    Raises:
        InconsistencyError: If no eigenvalue is close enough to zero

    """
    zero_tol = zero_tol or settings.zero_mode_tol
    margin = margin or settings.stability_margin
    values = sort_eigenvalues(eigenvalues)
    radius = float(np.max(np.abs(values))) if len(values) else 0.0
    scale = max(radius, 1.0)

    index = int(np.argmin(np.abs(values)))
    if abs(values[index]) > zero_tol * scale:
        logger.error(f'No rotational zero mode: smallest eigenvalue {values[index]}')
        raise InconsistencyError(
            f'Jacobian has no rotational zero mode (smallest |μ| = {abs(values[index]):.3e})'
        )

    others = np.delete(values, index)
    neutral = np.abs(others) <= zero_tol * scale
    active = others[~neutral]
    if len(active):
        critical = active[int(np.argmax(active.real))]
        critical_real = float(critical.real)
    else:
        critical, critical_real = 0j, float('-inf')

    if critical_real > margin * scale:
        verdict: Verdict = 'unstable'
    elif np.any(neutral) or critical_real >= -margin * scale:
        verdict = 'marginal'
    else:
        verdict = 'stable'

    return StabilityReport(
        eigenvalues=values,
        zero_mode=complex(values[index]),
        spectral_radius=radius,
        critical_real_part=critical_real,
        critical_eigenvalue=complex(critical),
        verdict=verdict,
        neutral_modes=int(np.sum(neutral)),
        blocks=blocks or {},
        details=details or {},
    )
