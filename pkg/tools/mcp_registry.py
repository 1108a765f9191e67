"""
Central FastMCP instance and tool registration.

Handler modules under tools/<area>/ import `mcp` and register their tools
with `@mcp.tool()`; importing them is what makes the tools visible.
"""

from fastmcp import FastMCP

mcp = FastMCP("mvsp-certifier")


def get_mcp() -> FastMCP:
    """
    Return the shared MCP instance with all tools registered.
    """
    return mcp
