"""Unit tests for server initialization and configuration."""

from unittest.mock import MagicMock, patch

from photinus.server import _initialize_server


class TestServer:
    """Test cases for server initialization functions."""

    def test_initialize_server(self):
        """Test _initialize_server creates and configures the FastMCP server."""
        with (
            patch('photinus.server.settings') as mock_settings,
            patch('photinus.server.ReductionService') as mock_reduction_service,
            patch('photinus.server.compose_all_servers') as mock_compose_servers,
            patch('photinus.server.FastMCP') as mock_fastmcp,
            patch('photinus.server.configure_logging') as mock_configure_logging,
        ):
            mock_settings.logging_level = 'INFO'
            mock_fastmcp.return_value = MagicMock()

            result = _initialize_server()

            mock_fastmcp.assert_called_once_with('photinus')
            mock_configure_logging.assert_called_once_with(level='INFO')

            # One shared reduction cache is handed to every domain server
            mock_reduction_service.assert_called_once_with()
            mock_compose_servers.assert_called_once_with(
                mock_fastmcp.return_value, mock_reduction_service.return_value
            )

            assert result is mock_fastmcp.return_value

    def test_initialize_server_logging_level(self):
        """Test _initialize_server passes the configured logging level."""
        with (
            patch('photinus.server.settings') as mock_settings,
            patch('photinus.server.ReductionService'),
            patch('photinus.server.compose_all_servers'),
            patch('photinus.server.FastMCP'),
            patch('photinus.server.configure_logging') as mock_configure_logging,
        ):
            mock_settings.logging_level = 'DEBUG'

            _initialize_server()

            mock_configure_logging.assert_called_once_with(level='DEBUG')
