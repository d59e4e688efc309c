"""Test configuration and shared fixtures for photinus tests.

This module provides pytest fixtures for:
- A ReductionService shared by the whole session, so each orbit is found once
- The MF-CGLE pipeline at the default (c1, c2) = (-2, 1.1)
- The Morris-Lecar pipeline (slow, used by integration tests)
- An in-memory MCP client with every tool server mounted
"""

import pytest
from fastmcp import Client, FastMCP

from photinus.nodes.registry import ModelDescriptor
from photinus.services import Pipeline, ReductionService
from photinus.tools import compose_all_servers

MFCGL = ModelDescriptor(model='mfcgl', params={'c1': -2.0, 'c2': 1.1})
MORRIS_LECAR = ModelDescriptor(model='morris_lecar')


@pytest.fixture(scope='session')
def reduction_service() -> ReductionService:
    """ReductionService with a small kernel grid, enough for trigonometric MF-CGLE kernels."""
    return ReductionService(kernel_grid=64)


@pytest.fixture(scope='session')
def ml_reduction_service() -> ReductionService:
    """ReductionService at the default kernel grid for the Morris-Lecar node."""
    return ReductionService()


@pytest.fixture(scope='session')
def mfcgl_pipeline(reduction_service: ReductionService) -> Pipeline:
    """Full reduction of the MF-CGLE node at c1 = -2, c2 = 1.1."""
    return reduction_service.pipeline(MFCGL)


@pytest.fixture(scope='session')
def ml_pipeline(ml_reduction_service: ReductionService) -> Pipeline:
    """Full reduction of the Morris-Lecar node at its default parameters."""
    return ml_reduction_service.pipeline(MORRIS_LECAR)


@pytest.fixture(scope='function')
async def mcp_client(reduction_service: ReductionService):
    """Create a FastMCP Client for testing tools.

    This fixture uses in-memory transport to test the full MCP stack:
    MCP Protocol -> Tool Functions -> Services -> numerical pipeline

    The server is created fresh for each test function; the reduction cache is shared.
    """
    mcp = FastMCP('photinus-test')
    compose_all_servers(mcp, reduction_service)

    async with Client(transport=mcp) as client:
        yield client
