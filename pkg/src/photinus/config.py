"""Configuration settings for photinus."""

from typing import Literal

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing_extensions import Self


class Settings(BaseSettings):
    """Numerical and server settings loaded from environment variables or a .env file."""

    model_config = SettingsConfigDict(
        env_file='.env',
        env_file_encoding='utf-8',
        extra='ignore',
        case_sensitive=False,  # Allow ORBIT_GRID or orbit_grid
    )

    # Logging Configuration (Optional)
    logging_level: Literal['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'] = Field(
        default='INFO',
        description='Logging level: DEBUG, INFO, WARNING, ERROR, CRITICAL',
    )

    # Integrator
    integrator_method: Literal['RK45', 'DOP853'] = Field(
        default='RK45', description='Embedded Runge-Kutta pair used by scipy.integrate.solve_ivp'
    )
    integrator_rtol: float = Field(default=1e-10, gt=0, description='Relative tolerance')
    integrator_atol: float = Field(default=1e-10, gt=0, description='Absolute tolerance')

    # Limit cycle
    orbit_grid: int = Field(
        default=512, ge=64, description='Uniform-in-phase samples of the periodic orbit'
    )
    newton_max_steps: int = Field(default=50, ge=1, description='Shooting Newton step limit')
    shooting_tol: float = Field(default=1e-8, gt=0, description='Scaled shooting residual target')
    transient_periods: int = Field(
        default=20, ge=0, description='Guessed periods integrated to relax onto the attractor'
    )

    # Spectral representation
    fourier_modes: int = Field(
        default=128, ge=4, description='Retained modes |m| <= M_f of periodic vector functions'
    )
    kernel_grid: int = Field(default=512, ge=16, description='Samples per axis of raw kernels')
    hop_modes: int = Field(
        default=8, ge=1, description='Mode truncation of the higher-order phase kernels'
    )
    resonance_tol: float = Field(
        default=1e-10, gt=0, description='Smallest admissible relative singular value'
    )
    null_space_tol: float = Field(
        default=1e-6, gt=0, description='Relative singular value accepted as a null direction'
    )
    tail_tol: float = Field(
        default=1e-8, gt=0, description='Relative magnitude allowed in the highest Fourier band'
    )

    # Stability analysis
    zero_mode_tol: float = Field(
        default=1e-6, gt=0, description='Rotational zero mode threshold (x spectral radius)'
    )
    stability_margin: float = Field(
        default=1e-8, gt=0, description='Stability margin on real parts (x spectral radius)'
    )
    asymptote_tol: float = Field(
        default=1e-12, gt=0, description='Relative denominator size flagged as a limit point'
    )
    two_cluster_samples: int = Field(
        default=2048, ge=64, description='Sign-change scan resolution for two-cluster roots'
    )
    root_tol: float = Field(default=1e-10, gt=0, description='Bisection tolerance on roots')
    bifurcation_tol: float = Field(
        default=1e-6, gt=0, description='Bisection tolerance on bifurcation parameters'
    )

    # Simulation
    divergence_bound: float = Field(
        default=1e6, gt=0, description='State norm treated as a blow-up during simulation'
    )

    # MCP Server Configuration (Optional - for transport settings)
    mcp_transport: str = Field(
        default='stdio',
        description='MCP transport mode: stdio (default), http, or sse',
    )
    mcp_host: str = Field(
        default='0.0.0.0',
        description='Host to bind the MCP server to (for http/sse transports)',
    )
    mcp_port: int = Field(
        default=3000,
        ge=1,
        le=65535,
        description='Port to bind the MCP server to (for http/sse transports)',
    )

    @model_validator(mode='after')
    def validate_grids(self) -> Self:
        """Ensure spectral grids are powers of two and leave room for the retained modes."""
        for name in ('orbit_grid', 'kernel_grid'):
            value = getattr(self, name)
            if value & (value - 1):
                raise ValueError(f'{name} must be a power of two, got {value}')

        if self.fourier_modes >= self.orbit_grid // 2:
            raise ValueError(
                f'fourier_modes ({self.fourier_modes}) must be below half the orbit grid '
                f'({self.orbit_grid // 2})'
            )

        return self


def _init_settings() -> Settings:
    """Initialize settings with user-friendly error handling."""
    try:
        return Settings.model_validate({})
    except Exception as e:
        import sys

        from pydantic_core import ValidationError

        if isinstance(e, ValidationError):
            print('\n❌ Configuration Error: invalid photinus settings\n', file=sys.stderr)
            print('The following settings are invalid:\n', file=sys.stderr)

            for error in e.errors():
                field = str(error['loc'][0]) if error['loc'] else 'settings'
                msg = error.get('msg', 'Invalid value')
                print(f'  • {field.upper()}: {msg}', file=sys.stderr)

            print('\nFix these variables in your .env file or environment.', file=sys.stderr)
            print('Example .env file:\n', file=sys.stderr)
            print('  ORBIT_GRID=512', file=sys.stderr)
            print('  FOURIER_MODES=128', file=sys.stderr)
            sys.exit(1)
        else:
            # Re-raise unexpected errors
            raise


# Initialize settings - will fail gracefully with clear errors if a setting is invalid
settings = _init_settings()
