"""
The f_r pipeline: from a tuple r = (r_0, ..., r_t) build the Frobenius orbit
f_0, ..., f_t, its index sets, the canonical polynomial f_r, the companion
f~_r, the u/v decomposition and every predicted degree.

The orbit step raises f_(i-1) to the power q^(delta_(i-1)) and reduces mod
(x^(q^n) - x).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import FieldMismatchError, InvalidProfileError, ProfileDiagnosticError
from .gf import FieldSpec
from .reports import CheckOutcome, ProfileRecord, StructureReport
from .spoly import NEG_INF_DEGREE, SparsePoly, frobenius_power, reduce_exponents, trace_compose

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Profile:
    """
    A validated r-tuple with all derived combinatorics.

    Delta[i][j] = sum_{lam=0..j} delta[(i - 1 - lam) mod (t + 1)]; row i is the
    sequence S_i.
    """

    spec: FieldSpec
    n: int
    r_list: tuple[int, ...]
    delta: tuple[int, ...]
    delta_min: int
    Delta: tuple[tuple[int, ...], ...]
    f_list: tuple[SparsePoly, ...]
    I_sets: tuple[frozenset, ...]
    I: tuple[int, ...]
    eta: int
    M: int

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def t(self) -> int:
        return len(self.r_list) - 1

    @property
    def S_seqs(self) -> tuple[tuple[int, ...], ...]:
        return self.Delta

    @property
    def delta_sorted(self) -> bool:
        return all(a <= b for a, b in zip(self.delta, self.delta[1:]))


def _validate_r_list(n: int, r_list: Sequence[int]) -> tuple[int, ...]:
    r = tuple(int(v) for v in r_list)
    if not r or r[0] != 0 or any(b <= a for a, b in zip(r, r[1:])):
        raise InvalidProfileError("r_list not strictly increasing from 0")
    if r[-1] >= n:
        raise InvalidProfileError(f"r_t={r[-1]} must be smaller than n={n}")
    return r


def _colex_key(row: tuple[int, ...]) -> tuple[int, ...]:
    # comparing from the largest entry down orders the S_e like sum q^(Delta - 1)
    return tuple(reversed(row))


def profile_new(n: int, r_list: Sequence[int], spec: FieldSpec) -> Profile:
    """
    Validate r and derive delta, Delta, the f_i orbit, I_i, I, eta and M.

    Raises:
        InvalidProfileError: r is not strictly increasing from 0 or r_t >= n.
        FieldMismatchError: spec is not a field of degree n over F_q.
        ProfileDiagnosticError: two representatives share the same S_e.
    """
    if spec.n != n:
        raise FieldMismatchError(f"Field has n={spec.n}, profile asks for n={n}")
    r = _validate_r_list(n, r_list)
    q = spec.q
    t = len(r) - 1
    ext = r + (n,)
    delta = tuple(ext[t + 1 - i] - ext[t - i] for i in range(t + 1))
    Delta = tuple(
        tuple(sum(delta[(i - 1 - lam) % (t + 1)] for lam in range(j + 1)) for j in range(t + 1))
        for i in range(t + 1)
    )

    f_list = [SparsePoly.monomial(spec, sum(q ** ri for ri in r))]
    for i in range(1, t + 1):
        f_list.append(frobenius_power(f_list[-1], delta[i - 1], spec, reduce=True))

    I_sets = tuple(frozenset(j for j in range(t + 1) if f_list[j] == f_list[i]) for i in range(t + 1))
    I = tuple(sorted({min(s) for s in I_sets}))
    eta = len(I_sets[0])

    ranked = sorted(I, key=lambda e: _colex_key(Delta[e]), reverse=True)
    if len(ranked) > 1 and Delta[ranked[0]] == Delta[ranked[1]]:
        raise ProfileDiagnosticError(
            f"Representatives {ranked[0]} and {ranked[1]} share S={Delta[ranked[0]]} for r={r}"
        )

    profile = Profile(
        spec=spec,
        n=n,
        r_list=r,
        delta=delta,
        delta_min=min(delta),
        Delta=Delta,
        f_list=tuple(f_list),
        I_sets=I_sets,
        I=I,
        eta=eta,
        M=ranked[0],
    )
    logger.debug(f"Profile q={q} n={n} r={r}: delta={delta} I={I} eta={eta} M={profile.M}")
    return profile


def build_f(pr: Profile) -> SparsePoly:
    """f_r = sum over e in I of T_(delta_e)(f_e)."""
    total = SparsePoly.zero(pr.spec)
    for e in pr.I:
        total = total + trace_compose(pr.f_list[e], pr.delta[e], pr.spec, reduce=True)
    return total


def build_f_tilde(pr: Profile) -> SparsePoly:
    """T_n(f_0) mod (x^(q^n) - x); equals eta * f_r."""
    return reduce_exponents(trace_compose(pr.f_list[0], pr.n, pr.spec, reduce=False), pr.spec)


def uv_decompose(pr: Profile) -> tuple[SparsePoly, SparsePoly]:
    """
    u = sum f_e and v = sum T_(delta_e - delta)(f_e) over e in I, so that
    f = T_delta(u) + v^(q^delta).
    """
    u = SparsePoly.zero(pr.spec)
    v = SparsePoly.zero(pr.spec)
    for e in pr.I:
        u = u + pr.f_list[e]
        v = v + trace_compose(pr.f_list[e], pr.delta[e] - pr.delta_min, pr.spec, reduce=True)
    return u, v


def predicted_degree(pr: Profile) -> int:
    return sum(pr.q ** (d - 1) for d in pr.Delta[pr.M])


def sorted_delta_degree(pr: Profile) -> Optional[int]:
    """q^(r_1 - 1) + ... + q^(r_t - 1) + q^(n - 1) when delta is nondecreasing."""
    if not pr.delta_sorted:
        return None
    return sum(pr.q ** (ri - 1) for ri in pr.r_list[1:]) + pr.q ** (pr.n - 1)


def sorted_delta_genus(pr: Profile) -> Optional[int]:
    """(q^(n-1) - 1)(q^(r_1) + ... + q^(r_t))/2 when delta is nondecreasing."""
    if not pr.delta_sorted:
        return None
    return (pr.q ** (pr.n - 1) - 1) * sum(pr.q ** ri for ri in pr.r_list[1:]) // 2


def lemma_degree(pr: Profile, i: int) -> int:
    """
    deg f_i in closed form: the exponents r_j - r_(t-i+1) for j > t - i and
    n - r_(t-i+1) + r_k for k <= t - i.
    """
    ext = pr.r_list + (pr.n,)
    pivot = ext[pr.t + 1 - i]
    return sum(pr.q ** ((rk + pr.n - pivot) % pr.n) for rk in pr.r_list)


def delta_degree(pr: Profile, i: int) -> int:
    """deg f_i = 1 + sum_{j < t} q^(Delta[i][j])."""
    return 1 + sum(pr.q ** pr.Delta[i][j] for j in range(pr.t))


def orbit_closes(pr: Profile) -> bool:
    return frobenius_power(pr.f_list[-1], pr.delta[-1], pr.spec, reduce=True) == pr.f_list[0]


def _degree_or_none(P: SparsePoly) -> Optional[int]:
    return None if P.degree == NEG_INF_DEGREE else int(P.degree)


def profile_record(pr: Profile) -> ProfileRecord:
    f = build_f(pr)
    u, v = uv_decompose(pr)
    return ProfileRecord(
        q=pr.q,
        n=pr.n,
        r_list=list(pr.r_list),
        delta=list(pr.delta),
        eta=pr.eta,
        I=list(pr.I),
        M=pr.M,
        deg_f=int(f.degree),
        deg_u=int(u.degree),
        deg_v=_degree_or_none(v),
    )


def check_structure(pr: Profile) -> StructureReport:
    """
    Assert the structural facts of the f_r construction on one profile.

    Every clause is reported; a failing clause names what broke.
    """
    q, n, p = pr.q, pr.n, pr.spec.p
    f = build_f(pr)
    f_tilde = build_f_tilde(pr)
    u, v = uv_decompose(pr)
    clauses: list[CheckOutcome] = []

    clauses.append(CheckOutcome.of("delta_sum", sum(pr.delta) == n, f"sum(delta)={sum(pr.delta)}"))

    bad_rows = [i for i, row in enumerate(pr.Delta) if row[-1] != n or any(b <= a for a, b in zip(row, row[1:]))]
    clauses.append(CheckOutcome.of("S_sequences", not bad_rows, f"bad rows: {bad_rows}" if bad_rows else ""))

    wrong = [
        i
        for i, fi in enumerate(pr.f_list)
        if not (fi.degree == lemma_degree(pr, i) == delta_degree(pr, i))
    ]
    clauses.append(CheckOutcome.of("fi_degrees", not wrong, f"mismatched f_i: {wrong}" if wrong else ""))

    sizes = {len(s) for s in pr.I_sets}
    clauses.append(
        CheckOutcome.of("eta_divides_n", len(sizes) == 1 and n % pr.eta == 0, f"orbit sizes {sorted(sizes)}, eta={pr.eta}")
    )

    clauses.append(CheckOutcome.of("f_tilde_is_eta_f", f_tilde == f * pr.eta, f"f~={f_tilde.render()}"))

    clauses.append(
        CheckOutcome.of(
            "f_M_maximal",
            pr.delta[pr.M] == pr.delta_min and u.degree == pr.f_list[pr.M].degree,
            f"M={pr.M}, delta_M={pr.delta[pr.M]}, deg u={u.degree}",
        )
    )

    recombined = reduce_exponents(
        trace_compose(u, pr.delta_min, pr.spec, reduce=True)
        + frobenius_power(v, pr.delta_min, pr.spec, reduce=True),
        pr.spec,
    )
    clauses.append(CheckOutcome.of("uv_identity", recombined == f))
    clauses.append(CheckOutcome.of("deg_u_mod_p", u.degree % p == 1, f"deg u={u.degree}"))
    clauses.append(CheckOutcome.of("deg_v_below_deg_u", v.degree < u.degree, f"deg v={v.degree}"))

    predicted = predicted_degree(pr)
    clauses.append(CheckOutcome.of("predicted_degree", f.degree == predicted, f"deg f={f.degree}, predicted={predicted}"))

    sorted_degree = sorted_delta_degree(pr)
    if sorted_degree is None:
        clauses.append(CheckOutcome.skipped("sorted_delta_degree", "delta not nondecreasing"))
    else:
        clauses.append(CheckOutcome.of("sorted_delta_degree", f.degree == sorted_degree, f"closed form {sorted_degree}"))

    clauses.append(CheckOutcome.of("orbit_closure", orbit_closes(pr)))
    clauses.append(CheckOutcome.of("f_monic", int(f.leading_coefficient()) == 1))

    report = StructureReport(profile=profile_record(pr), clauses=clauses)
    if not report.passed:
        logger.warning(f"Structure check failed for q={q} n={n} r={pr.r_list}: "
                       f"{[c.name for c in clauses if c.status == 'fail']}")
    return report
