"""Unit tests for configuration settings."""

import os
from unittest.mock import patch

import pytest
from pydantic_core import ValidationError

from photinus.config import Settings, _init_settings


class TestSettings:
    """Test cases for Settings class."""

    def test_settings_defaults(self):
        """Test default numerical and server settings."""
        with patch.dict(os.environ, {}, clear=True):  # Clear env to avoid interference
            settings = Settings(_env_file=None)

            assert settings.logging_level == 'INFO'
            assert settings.integrator_method == 'RK45'
            assert settings.orbit_grid == 512
            assert settings.fourier_modes == 128
            assert settings.kernel_grid == 512
            assert settings.two_cluster_samples == 2048
            assert settings.mcp_transport == 'stdio'
            assert settings.mcp_host == '0.0.0.0'
            assert settings.mcp_port == 3000

    def test_settings_from_environment(self):
        """Test settings are read case-insensitively from the environment."""
        with patch.dict(
            os.environ,
            {'ORBIT_GRID': '1024', 'fourier_modes': '200', 'INTEGRATOR_METHOD': 'DOP853'},
            clear=True,
        ):
            settings = Settings(_env_file=None)

            assert settings.orbit_grid == 1024
            assert settings.fourier_modes == 200
            assert settings.integrator_method == 'DOP853'

    def test_grid_must_be_power_of_two(self):
        """Test the spectral grids are restricted to powers of two."""
        with pytest.raises(ValidationError, match='power of two'):
            Settings(_env_file=None, kernel_grid=500)

    def test_fourier_modes_below_half_grid(self):
        """Test the retained modes must fit on the orbit grid."""
        with pytest.raises(ValidationError, match='fourier_modes'):
            Settings(_env_file=None, orbit_grid=128, fourier_modes=64)

    def test_tolerances_must_be_positive(self):
        """Test tolerances reject zero."""
        with pytest.raises(ValidationError):
            Settings(_env_file=None, shooting_tol=0.0)


class TestInitSettings:
    """Test cases for _init_settings function."""

    def test_init_settings_success(self):
        """Test successful initialization with environment variables."""
        with patch.dict(os.environ, {'LOGGING_LEVEL': 'DEBUG'}, clear=True):
            settings = _init_settings()

            assert settings.logging_level == 'DEBUG'

    def test_init_settings_validation_error(self):
        """Test initialization exits with code 1 on an invalid setting."""
        with patch.dict(os.environ, {'ORBIT_GRID': '100'}, clear=True):
            with patch('sys.exit') as mock_exit:
                mock_exit.return_value = None

                try:
                    _init_settings()
                except SystemExit:
                    pass  # Expected behavior

                mock_exit.assert_called_once_with(1)

    def test_init_settings_unexpected_error(self):
        """Test initialization re-raises unexpected errors."""
        with patch.object(Settings, 'model_validate', side_effect=RuntimeError('Unexpected error')):
            with pytest.raises(RuntimeError, match='Unexpected error'):
                _init_settings()
