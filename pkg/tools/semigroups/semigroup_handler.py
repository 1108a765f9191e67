"""
FastMCP tools over numerical semigroups.
"""

from library.nsg import (
    NumericalSemigroup,
    semigroup_record,
    telescopic_ladder,
    weierstrass_generators,
)
from tools.mcp_registry import mcp


@mcp.tool()
def semigroup_summary(gens: list[int]) -> dict:
    """
    Summarize the semigroup generated by `gens` (gcd must be 1).

    Syntax:
        semigroup_summary([4, 6, 9])

    Returns:
        dict containing:
            - gens, m_2, frobenius, genus
            - symmetric, telescopic, telescopic_genus
            - redundant_gens
            - gaps
    """
    record = semigroup_record(gens).model_dump()
    record["gaps"] = list(NumericalSemigroup(gens).gaps)
    return record


@mcp.tool()
def semigroup_weierstrass(q: int, n: int, r: int) -> dict:
    """
    Generators of the Weierstrass semigroup at infinity for the H-family
    curve (0, r) over F_{q^n}, n >= 3, with its summary.

    Syntax:
        semigroup_weierstrass(2, 5, 3)

    Returns:
        dict: same shape as semigroup_summary.
    """
    return semigroup_record(weierstrass_generators(q, n, r)).model_dump()


@mcp.tool()
def semigroup_telescopic(gens: list[int]) -> dict:
    """
    Telescopic ladder of `gens` in the given order.

    Syntax:
        semigroup_telescopic([8, 12, 40, 33, 57])

    Returns:
        dict containing:
            - telescopic: bool
            - steps: list of {index, d, reduced_generator, ladder, member}
    """
    steps = telescopic_ladder(gens)
    return {
        "telescopic": all(step.member for step in steps),
        "steps": [step.model_dump() for step in steps],
    }
