"""Main entry point for the photinus MCP server."""

import logging

from .config import settings
from .server import mcp

logger = logging.getLogger(__name__)

# MCP_TRANSPORT values served over the network, with their FastMCP transport names
NETWORK_TRANSPORTS = {'http': 'streamable-http', 'sse': 'sse'}


def main() -> None:
    """Serve the photinus tools over the configured transport.

    ``http`` and ``sse`` bind to ``MCP_HOST``/``MCP_PORT``; every other value runs on stdio.
    """
    transport = NETWORK_TRANSPORTS.get(settings.mcp_transport)
    if transport is None:
        if settings.mcp_transport not in ('', 'stdio'):
            logger.warning(f'Unknown MCP transport {settings.mcp_transport!r}, using stdio')
        mcp.run(transport='stdio')
        return

    host, port = settings.mcp_host, settings.mcp_port
    logger.info(f'Serving photinus tools over {transport} at {host}:{port}')
    mcp.run(transport=transport, host=host, port=port)


if __name__ == '__main__':
    main()
