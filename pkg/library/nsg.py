"""
Numerical semigroups: membership, Apery sets, gaps and genus, Frobenius
number, symmetry and the telescopic ladder with its genus formula.

Generator order is kept exactly as given; the telescopic test depends on it.
"""

import heapq
import logging
import math
from functools import reduce
from itertools import combinations
from typing import Optional, Sequence

from .errors import NotTelescopicError, SemigroupError
from .reports import SemigroupRecord, TelescopicStep

logger = logging.getLogger(__name__)


def _gcd_all(values: Sequence[int]) -> int:
    return reduce(math.gcd, values, 0)


def apery_set(gens: Sequence[int], m: int) -> tuple[int, ...]:
    """
    Smallest element of <gens> in each residue class mod m (shortest paths
    over residues). Index i holds the element congruent to i.
    """
    dist: list[Optional[int]] = [None] * m
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        d, residue = heapq.heappop(heap)
        if d != dist[residue]:
            continue
        for a in gens:
            nxt, nd = (residue + a) % m, d + a
            if dist[nxt] is None or nd < dist[nxt]:
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    if any(w is None for w in dist):
        raise SemigroupError(f"Generators {tuple(gens)} miss residues mod {m}")
    return tuple(dist)


def membership_table(gens: Sequence[int], bound: int) -> list[bool]:
    """table[x] is True iff x in <gens>, for 0 <= x <= bound."""
    table = [False] * (bound + 1)
    table[0] = True
    for x in range(1, bound + 1):
        table[x] = any(a <= x and table[x - a] for a in gens)
    return table


def _table_bound(gens: Sequence[int], frobenius: int) -> int:
    """(a-1)(b-1) for the cheapest coprime generator pair; never below F + 1."""
    coprime = [(a - 1) * (b - 1) for a, b in combinations(sorted(set(gens)), 2) if math.gcd(a, b) == 1]
    if coprime:
        bound = min(coprime)
    else:
        smallest = sorted(set(gens))
        bound = smallest[0] * smallest[1] if len(smallest) > 1 else smallest[0]
    return max(bound, frobenius + 1, 0)


class NumericalSemigroup:
    """
    The semigroup generated by `gens` (gcd must be 1).

    Attributes:
        gens: generators in caller order.
        multiplicity: least nonzero element (m_2).
        frobenius: largest gap, -1 for the full semigroup.
        conductor: frobenius + 1.
        gaps: sorted gaps.
        genus: number of gaps.
        apery: Apery set w.r.t. the multiplicity.
    """

    def __init__(self, gens: Sequence[int]):
        gens = tuple(int(a) for a in gens)
        if not gens:
            raise SemigroupError("At least one generator is required")
        if any(a <= 0 for a in gens):
            raise SemigroupError(f"Generators must be positive: {gens}")
        if _gcd_all(gens) != 1:
            raise SemigroupError(f"gcd{gens} = {_gcd_all(gens)} != 1")
        self.gens = gens
        self.multiplicity = min(gens)
        self.apery = apery_set(gens, self.multiplicity)
        self.frobenius = max(self.apery) - self.multiplicity
        self.conductor = self.frobenius + 1
        self._bound = _table_bound(gens, self.frobenius)
        self._table = membership_table(gens, self._bound)
        self.gaps = tuple(x for x in range(1, self.conductor) if not self._table[x])
        self.genus = len(self.gaps)

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x <= self._bound:
            return self._table[x]
        return True

    def apery_genus(self) -> int:
        """Genus from the Apery set: sum of floor(w / m)."""
        return sum(w // self.multiplicity for w in self.apery)

    def consistent(self) -> bool:
        """DP table and Apery set describe the same semigroup."""
        m = self.multiplicity
        return (
            all(self._table[x] == (x >= self.apery[x % m]) for x in range(self._bound + 1))
            and self.apery_genus() == self.genus
        )

    def __repr__(self) -> str:
        return f"NumericalSemigroup{self.gens}"


def sg_new(gens: Sequence[int]) -> NumericalSemigroup:
    return NumericalSemigroup(gens)


def is_symmetric(S: NumericalSemigroup) -> bool:
    """F = 2g - 1, confirmed by x in S <=> F - x not in S on 0..F."""
    if S.frobenius != 2 * S.genus - 1:
        return False
    return all((x in S) != ((S.frobenius - x) in S) for x in range(S.frobenius + 1))


def _monoid_contains(gens: Sequence[int], x: int) -> bool:
    """x in the additive monoid of gens (gcd may exceed 1)."""
    if x == 0:
        return True
    if not gens:
        return False
    return membership_table(gens, x)[x]


def telescopic_ladder(gens: Sequence[int]) -> list[TelescopicStep]:
    """
    One step per i >= 2: d_i = gcd(a_1..a_i) and whether a_i/d_i lies in
    <a_1/d_(i-1), ..., a_(i-1)/d_(i-1)>.
    """
    gens = tuple(int(a) for a in gens)
    if _gcd_all(gens) != 1:
        raise SemigroupError(f"gcd{gens} != 1")
    steps = []
    for i in range(1, len(gens)):
        d_prev = _gcd_all(gens[:i])
        d_cur = _gcd_all(gens[: i + 1])
        ladder = [a // d_prev for a in gens[:i]]
        reduced = gens[i] // d_cur
        steps.append(
            TelescopicStep(
                index=i + 1,
                d=d_cur,
                reduced_generator=reduced,
                ladder=ladder,
                member=reduced in NumericalSemigroup(ladder),
            )
        )
    return steps


def is_telescopic(gens: Sequence[int]) -> bool:
    return all(step.member for step in telescopic_ladder(gens))


def telescopic_genus(gens: Sequence[int]) -> int:
    """
    (sum_i (d_(i-1)/d_i - 1) a_i + 1)/2 with d_0 = 0.

    Raises:
        NotTelescopicError: the ladder fails for this order.
    """
    gens = tuple(int(a) for a in gens)
    if not is_telescopic(gens):
        raise NotTelescopicError(f"{gens} is not telescopic in this order")
    d = [0] + [_gcd_all(gens[: i + 1]) for i in range(len(gens))]
    total = sum((d[i] // d[i + 1] - 1) * a for i, a in enumerate(gens)) + 1
    return total // 2


def weierstrass_generators(q: int, n: int, r: int) -> tuple[int, ...]:
    """H(Q) generators of the H-family curve, in ladder order."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    return (
        q ** (n - 1),
        q ** (n - 1) + q ** (r - 1),
        q ** n + q ** (n - r),
        q ** (2 * r - 1) + q ** (n - r - 1),
        q ** (2 * r) - q ** n + q ** r + 1,
    )


def corollary_generators(q: int, n: int, r: int) -> tuple[int, ...]:
    """The four-generator list that leaves out q^n + q^(n-r)."""
    a = weierstrass_generators(q, n, r)
    return (a[0], a[1], a[3], a[4])


def hermitian_generators(q: int) -> tuple[int, int]:
    return (q, q + 1)


def gs_generators(q: int, n: int) -> tuple[int, int, int]:
    return (q ** (n - 1), q ** (n - 1) + q ** (n - 2), q ** n + 1)


def redundancy_probe(gens: Sequence[int]) -> list[int]:
    """Generators that lie in the monoid generated by the others."""
    gens = tuple(int(a) for a in gens)
    redundant = []
    for i, a in enumerate(gens):
        others = gens[:i] + gens[i + 1:]
        if _monoid_contains(others, a):
            redundant.append(a)
    return redundant


def semigroup_record(
    gens: Sequence[int], castle: Optional[bool] = None
) -> SemigroupRecord:
    S = NumericalSemigroup(gens)
    telescopic = is_telescopic(S.gens)
    return SemigroupRecord(
        gens=list(S.gens),
        m_2=S.multiplicity,
        frobenius=S.frobenius,
        genus=S.genus,
        symmetric=is_symmetric(S),
        telescopic=telescopic,
        telescopic_genus=telescopic_genus(S.gens) if telescopic else None,
        redundant_gens=redundancy_probe(S.gens),
        castle=castle,
    )
