"""
Curves y^(q^(n-1)) + ... + y^q + y = f_r(x) over F_{q^n}.

Builds curve instances, evaluates the closed formulas for point count and
genus, and runs the exhaustive oracles that certify them: value sets, fibers
of f - gamma, and two independent point counts.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import galois
import numpy as np

from .common_utils import CertifierContext, get_certifier_context
from .errors import EnumerationBoundError
from .gf import (
    FieldElement,
    FieldSpec,
    as_ints,
    field_for,
    in_subfield,
    partial_trace,
    subfield_elements,
)
from .mvsp import Profile, build_f, profile_new, uv_decompose
from .nsg import NumericalSemigroup, is_symmetric
from .reports import (
    FiberReport,
    FiberRoot,
    FiberSweepReport,
    FieldHeader,
    ReferenceRecord,
    ValueSetReport,
)
from .spoly import BiPoly, SparsePoly, evaluate, trace_poly

logger = logging.getLogger(__name__)

# cells compared per block in the direct point count
_CHUNK_CELLS = 2 ** 20

POINT_COUNT_METHODS = ("auto", "direct", "fiber")


def h_parameter(n: int) -> int:
    """Smallest r >= n/2 with gcd(r, n) = 1."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if n == 2:
        return 1
    if n % 2 == 1:
        return (n + 1) // 2
    if n % 4 == 0:
        return n // 2 + 1
    return n // 2 + 2


@dataclass(frozen=True)
class HParams:
    q: int
    n: int
    r: int

    @classmethod
    def for_n(cls, q: int, n: int) -> "HParams":
        return cls(q=q, n=n, r=h_parameter(n))


@dataclass(frozen=True, eq=False)
class CurveInstance:
    spec: FieldSpec
    pr: Profile
    f: SparsePoly
    u: SparsePoly
    v: SparsePoly
    genus_formula: Optional[int]
    N_formula: int
    gcd_cert: int
    family: str = "custom"

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def r_list(self) -> tuple[int, ...]:
        return self.pr.r_list

    @property
    def deg_f(self) -> int:
        return int(self.f.degree)

    @property
    def deg_u(self) -> int:
        return int(self.u.degree)

    @property
    def certified(self) -> bool:
        return self.gcd_cert == 1

    @property
    def field_header(self) -> FieldHeader:
        return FieldHeader(**self.spec.header())

    def defining_poly(self) -> BiPoly:
        """T_n(y) - f(x)."""
        return BiPoly.from_y(trace_poly(self.spec)) - BiPoly.from_x(self.f)


def curve_new(pr: Profile, spec: FieldSpec, family: str = "custom") -> CurveInstance:
    """
    Assemble the curve of a profile. The genus formula is only filled in when
    gcd(delta, n) = 1.
    """
    f = build_f(pr)
    u, v = uv_decompose(pr)
    q, n = spec.q, spec.n
    gcd_cert = math.gcd(pr.delta_min, n)
    genus = (q ** (n - 1) - 1) * (int(u.degree) - 1) // 2 if gcd_cert == 1 else None
    if genus is None:
        logger.warning(f"gcd(delta, n)={gcd_cert} for q={q} n={n} r={pr.r_list}: genus uncertified")
    return CurveInstance(
        spec=spec,
        pr=pr,
        f=f,
        u=u,
        v=v,
        genus_formula=genus,
        N_formula=q ** (2 * n - 1) + 1,
        gcd_cert=gcd_cert,
        family=family,
    )


def curve_for(
    q: int, n: int, r_list: Sequence[int], family: str = "custom", context: Optional[CertifierContext] = None
) -> CurveInstance:
    spec = field_for(q, n, context=context)
    return curve_new(profile_new(n, r_list, spec), spec, family=family)


def h_family(q: int, n: int, context: Optional[CertifierContext] = None) -> CurveInstance:
    """Profile (0, r(n)); genus q^r (q^(n-1) - 1)/2."""
    params = HParams.for_n(q, n)
    return curve_for(params.q, params.n, (0, params.r), family="h", context=context)


def gs_family(q: int, n: int, context: Optional[CertifierContext] = None) -> CurveInstance:
    """Profile (0, 1): deg u = 1 + q^(n-1), the GS-type genus."""
    return curve_for(q, n, (0, 1), family="gs", context=context)


def norm_trace_family(q: int, n: int, context: Optional[CertifierContext] = None) -> CurveInstance:
    """Profile (0, 1, ..., n-1): f = x^((q^n - 1)/(q - 1))."""
    return curve_for(q, n, tuple(range(n)), family="norm-trace", context=context)


def reference_formulas(q: int, n: int) -> ReferenceRecord:
    """Point counts and genera of the norm-trace, GS and H curves over F_{q^n}."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    r = HParams.for_n(q, n).r
    N = q ** (2 * n - 1) + 1
    top = q ** (n - 1) - 1
    return ReferenceRecord(
        q=q,
        n=n,
        N_nt=N,
        g_nt=top * sum(q ** i for i in range(1, n)) // 2,
        N_gs=N,
        g_gs=top * q ** (n - 1) // 2,
        N_H=N,
        g_H=q ** r * top // 2,
    )


# ---------------------------------------------------------------------- #
# Symbolic checks
# ---------------------------------------------------------------------- #
def affine_smooth(c: CurveInstance) -> bool:
    """d/dy (T_n(y) - f(x)) is the constant 1."""
    return c.defining_poly().partial_y() == BiPoly.constant(c.spec, 1)


def top_form(c: CurveInstance) -> BiPoly:
    """Homogeneous part of maximal total degree of T_n(y) - f(x)."""
    g = c.defining_poly()
    top = max(a + b for a, b in g.terms)
    return BiPoly(c.spec, {k: v for k, v in g.terms.items() if sum(k) == top})


def is_linear_power(form: BiPoly) -> bool:
    """
    A nonzero binary form G(x, y) of degree D equals c * L^D for one linear
    form L, i.e. it vanishes at exactly one point of P^1.

    Points (t:1) are the roots of G(t, 1); (1:0) is a zero when the x^D
    coefficient vanishes. A repeated root of G(t, 1) always lies in the
    coefficient field, since the field is perfect.
    """
    if form.is_zero:
        raise ValueError("The zero form vanishes everywhere")
    spec = form.spec
    D = max(a + b for a, b in form.terms)
    g = SparsePoly(spec, {a: coeff for (a, _), coeff in form.terms.items()})
    if g.degree < D:
        return g.degree == 0
    if len(g) == 1:
        return True
    roots = g.to_galois().roots()
    if len(roots) != 1:
        return False
    linear = SparsePoly(spec, {1: 1, 0: -roots[0]})
    return g == linear ** D * g.leading_coefficient()


def single_point_at_infinity(c: CurveInstance) -> bool:
    """
    The top form of T_n(y) - f(x) is a power of one linear form.

    For deg f > q^(n-1) the top form is a multiple of x^(deg f) and the point
    is Q = (0:1:0); for r = (0,) it is (y - x)^(q^(n-1)) up to a scalar.
    """
    return is_linear_power(top_form(c))


def hasse_weil_ok(N: int, g: int, q: int, n: int) -> bool:
    """|N - q^n - 1| <= 2 g q^(n/2), in integers."""
    return (N - q ** n - 1) ** 2 <= 4 * g * g * q ** n


def castle_check(
    c: CurveInstance,
    S: NumericalSemigroup,
    point_count: Optional[int] = None,
    context: Optional[CertifierContext] = None,
) -> bool:
    """Symmetric H(Q) and N = q^n m_2 + 1; N is counted when not given."""
    if point_count is None:
        point_count = count_points_bruteforce(c, context=context)
    return is_symmetric(S) and point_count == c.q ** c.n * S.multiplicity + 1


# ---------------------------------------------------------------------- #
# Exhaustive oracles
# ---------------------------------------------------------------------- #
def _require(size: int, bound: int, what: str) -> None:
    if size > bound:
        raise EnumerationBoundError(f"{what}: {size} exceeds bound {bound}")


def _f_values(c: CurveInstance) -> FieldElement:
    return evaluate(c.f, c.spec.elements())


def count_points_direct(c: CurveInstance, context: Optional[CertifierContext] = None) -> int:
    """1 + #{(alpha, beta) : T_n(beta) = f(alpha)} by comparing every pair."""
    context = context or get_certifier_context()
    spec = c.spec
    _require(spec.order ** 2, context.max_enum, "direct point count q^(2n)")
    elements = spec.elements()
    traces = as_ints(partial_trace(elements, spec.n, spec))
    values = as_ints(_f_values(c))
    chunk = max(1, _CHUNK_CELLS // spec.order)
    affine = 0
    for start in range(0, spec.order, chunk):
        block = values[start:start + chunk]
        affine += int(np.count_nonzero(block[:, None] == traces[None, :]))
    logger.debug(f"Direct count q={c.q} n={c.n} r={c.r_list}: {affine} affine points")
    return affine + 1


def count_points_fiber(c: CurveInstance, context: Optional[CertifierContext] = None) -> int:
    """1 + q^(n-1) * #{alpha : f(alpha) in F_q}."""
    context = context or get_certifier_context()
    spec = c.spec
    _require(spec.order, context.fiber_limit, "fiber point count q^n")
    hits = int(np.count_nonzero(in_subfield(_f_values(c), spec, 1)))
    return hits * spec.q ** (spec.n - 1) + 1


def count_points_bruteforce(
    c: CurveInstance, method: str = "auto", context: Optional[CertifierContext] = None
) -> int:
    """
    Rational points of the nonsingular model: affine solutions plus the one
    point over infinity.

    method="auto" runs every count whose bound allows it (the fiber count
    needs q^n <= fiber_limit, the direct one q^(2n) <= max_enum); when both
    run they must agree.

    Raises:
        EnumerationBoundError: the requested method, or for "auto" both, is out of bounds.
        RuntimeError: the two methods disagree.
    """
    if method not in POINT_COUNT_METHODS:
        raise ValueError(f"Unknown method {method!r}; expected one of {POINT_COUNT_METHODS}")
    context = context or get_certifier_context()
    if method == "direct":
        return count_points_direct(c, context)
    if method == "fiber":
        return count_points_fiber(c, context)
    fiber_ok = c.spec.order <= context.fiber_limit
    direct_ok = c.spec.order ** 2 <= context.max_enum
    if not direct_ok:
        return count_points_fiber(c, context)
    if not fiber_ok:
        logger.debug(f"Fiber count out of bounds for q={c.q} n={c.n}; using the direct count alone")
        return count_points_direct(c, context)
    fiber = count_points_fiber(c, context)
    direct = count_points_direct(c, context)
    if direct != fiber:
        logger.error(f"Point counts disagree for q={c.q} n={c.n} r={c.r_list}: direct={direct} fiber={fiber}")
        raise RuntimeError(f"Direct count {direct} != fiber count {fiber}")
    return direct


def value_set_check(c: CurveInstance, context: Optional[CertifierContext] = None) -> ValueSetReport:
    """V_f by full evaluation, compared with F_q and with floor((q^n - 1)/deg f) + 1."""
    context = context or get_certifier_context()
    spec = c.spec
    _require(spec.order, context.fiber_limit, "value set q^n")
    values = sorted(set(as_ints(_f_values(c)).tolist()))
    subfield = as_ints(subfield_elements(spec, 1)).tolist()
    expected = (spec.order - 1) // c.deg_f + 1
    return ValueSetReport(
        field=c.field_header,
        values=[spec.coefficients(spec.GF(v)) for v in values],
        expected_size=expected,
        equals_subfield=values == sorted(subfield),
        size_ok=len(values) == expected,
    )


def _is_zero_poly(P: galois.Poly) -> bool:
    return P.degree == 0 and int(P.coeffs[0]) == 0


def fiber_analysis(
    c: CurveInstance, gamma: FieldElement, context: Optional[CertifierContext] = None
) -> FiberReport:
    """
    Roots of f - gamma in F_{q^n} with multiplicities.

    Multiplicities come from dividing by (x - alpha) until the remainder is
    nonzero. Whatever is left has no root in F_{q^n}; its roots must all have
    multiplicity divisible by p, i.e. its formal derivative vanishes.

    Raises:
        ValueError: gamma is not in F_q.
    """
    context = context or get_certifier_context()
    spec = c.spec
    _require(spec.order, context.fiber_limit, "fiber analysis q^n")
    spec.check(gamma)
    if not bool(in_subfield(gamma, spec, 1)):
        raise ValueError(f"gamma={spec.serialize(gamma)} is not in F_q")

    GF = spec.GF
    residual = (c.f - SparsePoly.constant(spec, gamma)).to_galois()
    degree = int(residual.degree)
    roots: list[FiberRoot] = []
    for alpha in residual.roots():
        linear = galois.Poly(GF([1, int(-alpha)]))
        multiplicity = 0
        while True:
            quotient, remainder = divmod(residual, linear)
            if not _is_zero_poly(remainder):
                break
            residual = quotient
            multiplicity += 1
        roots.append(
            FiberRoot(
                root=spec.coefficients(alpha),
                multiplicity=multiplicity,
                in_subfield=bool(in_subfield(alpha, spec, 1)),
            )
        )
    found = sum(r.multiplicity for r in roots)
    multiplicity_ok = all(r.multiplicity % spec.p for r in roots) and _is_zero_poly(residual.derivative())
    return FiberReport(
        field=c.field_header,
        gamma=spec.coefficients(gamma),
        degree=degree,
        roots=roots,
        found=found,
        deficit=degree - found,
        has_simple_root=any(r.multiplicity == 1 for r in roots),
        multiplicity_ok=multiplicity_ok,
    )


def fiber_sweep(c: CurveInstance, context: Optional[CertifierContext] = None) -> FiberSweepReport:
    """fiber_analysis for every gamma in F_q."""
    fibers = [fiber_analysis(c, gamma, context) for gamma in subfield_elements(c.spec, 1)]
    return FiberSweepReport(
        field=c.field_header,
        fibers=fibers,
        without_simple_root=sum(1 for fb in fibers if not fb.has_simple_root),
        multiplicities_ok=all(fb.multiplicity_ok for fb in fibers),
    )
