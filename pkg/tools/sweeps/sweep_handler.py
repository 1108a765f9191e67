"""
FastMCP tool that tabulates a range of curve instances.
"""

from library.certify import MvspCertifier, render_sweep_csv
from tools.mcp_registry import mcp

certifier = MvspCertifier()


@mcp.tool()
def mvsp_sweep(q_list: list[int], n_min: int, n_max: int, profiles: str = "h-family") -> dict:
    """
    One row per instance with degrees, point counts, genera and semigroup flags.

    Syntax:
        mvsp_sweep([2], 3, 5, profiles="h-family")

    profiles is "h-family" (one profile per n) or "all" (every r-tuple).

    Returns:
        dict containing:
            - rows: list of row dicts, sorted by (q, n, r_list)
            - csv: the same table as CSV text
    """
    rows = certifier.sweep(q_list, n_min, n_max, profiles=profiles)
    return {"rows": [row.model_dump() for row in rows], "csv": render_sweep_csv(rows)}
