"""Unit tests for MCP tool annotations."""

from unittest.mock import MagicMock

import pytest
from fastmcp import FastMCP
from fastmcp.tools import Tool

from photinus.tools.higher_order import create_higher_order_server
from photinus.tools.locking import create_locking_server
from photinus.tools.oracle import create_oracle_server
from photinus.tools.reduction import create_reduction_server
from photinus.tools.simulation import create_simulation_server


async def _get_tools(server: FastMCP) -> dict[str, Tool]:
    """Return registered tools keyed by tool name."""
    tools = await server.list_tools()
    return {tool.name: tool for tool in tools}


def _assert_readonly_tool(tool: Tool, title: str) -> None:
    """Assert standard annotations for read-only tools."""
    annotations = tool.annotations

    assert annotations is not None
    assert annotations.title == title
    assert annotations.readOnlyHint is True
    assert annotations.idempotentHint is True
    assert annotations.openWorldHint is False


class TestToolAnnotations:
    """Test MCP annotations exposed by tool servers."""

    @pytest.mark.asyncio
    async def test_reduction_tools_have_readonly_annotations(self):
        """Reduction tools should be marked as read-only."""
        tools = await _get_tools(create_reduction_server(MagicMock()))

        _assert_readonly_tool(tools['find_orbit'], 'Find Periodic Orbit')
        _assert_readonly_tool(tools['reduce_node'], 'Reduce Node')

    @pytest.mark.asyncio
    async def test_locking_tools_have_readonly_annotations(self):
        """Locking tools should be marked as read-only."""
        tools = await _get_tools(create_locking_server(MagicMock()))

        _assert_readonly_tool(tools['analyse_locked_state'], 'Analyse Locked State')
        _assert_readonly_tool(tools['sweep_coupling'], 'Sweep Coupling Strength')

    @pytest.mark.asyncio
    async def test_higher_order_tools_have_readonly_annotations(self):
        """Higher-order tools should be marked as read-only."""
        tools = await _get_tools(create_higher_order_server(MagicMock()))

        _assert_readonly_tool(tools['higher_order_boundaries'], 'Higher-Order Boundaries')

    @pytest.mark.asyncio
    async def test_oracle_tools_have_readonly_annotations(self):
        """Oracle tools should be marked as read-only."""
        tools = await _get_tools(create_oracle_server(MagicMock()))

        _assert_readonly_tool(tools['mfcgl_boundaries'], 'MF-CGLE Boundaries')
        _assert_readonly_tool(tools['mfcgl_boundary_table'], 'MF-CGLE Boundary Table')
        _assert_readonly_tool(tools['compare_with_oracle'], 'Compare With Oracle')

    @pytest.mark.asyncio
    async def test_simulation_tools_have_readonly_annotations(self):
        """Simulation tools should be marked as read-only."""
        tools = await _get_tools(create_simulation_server(MagicMock()))

        _assert_readonly_tool(tools['simulate_network'], 'Simulate Network')
