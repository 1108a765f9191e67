"""
FastMCP tools that construct and certify curves y^(q^(n-1)) + ... + y = f_r(x).
"""

from typing import Optional

from library.certify import MvspCertifier
from library.curve import reference_formulas
from tools.mcp_registry import mcp

certifier = MvspCertifier()


@mcp.tool()
def mvsp_construct(q: int, n: int, r_tuple: Optional[list[int]] = None, family: Optional[str] = None) -> dict:
    """
    Build the polynomial f_r and its profile over F_{q^n}.

    Syntax:
        mvsp_construct(2, 3, r_tuple=[0, 2])
        mvsp_construct(2, 5, family="h")

    Give exactly one of r_tuple or family ("h", "gs", "norm-trace").

    Returns:
        dict containing:
            - field (p, e, n, modulus)
            - profile (r_list, delta, eta, I, M, deg_f, deg_u, deg_v)
            - f, u, v, f_tilde as text
            - N_formula, genus_formula
    """
    return certifier.construct(q, n, r_tuple=r_tuple, family=family).model_dump()


@mcp.tool()
def mvsp_certify(q: int, n: int, r_tuple: Optional[list[int]] = None, family: Optional[str] = None) -> dict:
    """
    Run the full certification of one curve instance.

    Syntax:
        mvsp_certify(2, 5, family="h")

    Checks value set, fibers, point count, genus, pole orders and the
    semigroup (H-family only). Timing fields are left out.

    Returns:
        dict: the canonical report, with "verdict" one of pass/fail/incomplete
        and one entry per check under "checks".
    """
    return certifier.certify(q, n, r_tuple=r_tuple, family=family).canonical()


@mcp.tool()
def mvsp_reference_formulas(q: int, n: int) -> dict:
    """
    Point counts and genera of the norm-trace, GS and H curves over F_{q^n}.

    Syntax:
        mvsp_reference_formulas(2, 5)

    Returns:
        dict with N_nt, g_nt, N_gs, g_gs, N_H, g_H.
    """
    return reference_formulas(q, n).model_dump()
