"""
Main entry point for the MVSP certifier MCP server.

The server speaks MCP over stdio; there is no HTTP front end.
"""

import logging

# Import all tool handlers to register them with FastMCP
import tools.curves.curve_handler
import tools.semigroups.semigroup_handler
import tools.sweeps.sweep_handler

from library.common_utils import configure_logging
from tools.mcp_registry import get_mcp

logger = logging.getLogger("main")


def main():
    """
    Register the tools and serve them over stdio (blocking).
    """
    configure_logging(default="INFO")
    mcp = get_mcp()
    logger.info("Starting MVSP certifier tools over stdio")
    mcp.run()


if __name__ == "__main__":
    main()
