import math
import random

import pytest

from library.errors import NotTelescopicError, SemigroupError
from library.nsg import (
    NumericalSemigroup,
    apery_set,
    corollary_generators,
    gs_generators,
    hermitian_generators,
    is_symmetric,
    is_telescopic,
    redundancy_probe,
    semigroup_record,
    sg_new,
    telescopic_genus,
    telescopic_ladder,
    weierstrass_generators,
)

H_SEMIGROUPS = [
    # q, n, r, generators, genus
    (2, 3, 2, (4, 6, 10, 9, 13), 6),
    (2, 4, 3, (8, 12, 18, 33, 57), 28),
    (2, 5, 3, (16, 20, 36, 34, 41), 60),
    (3, 3, 2, (9, 12, 30, 28, 64), 36),
]


def test_basic_invariants():
    S = NumericalSemigroup((3, 5))
    assert S.apery == (0, 10, 5)
    assert S.frobenius == 7
    assert S.gaps == (1, 2, 4, 7)
    assert S.genus == 4
    assert 8 in S and 7 not in S and -1 not in S
    assert S.consistent()
    assert apery_set((4, 6, 9), 4) == (0, 9, 6, 15)


def test_invalid_generators():
    with pytest.raises(SemigroupError):
        NumericalSemigroup((4, 6))
    with pytest.raises(SemigroupError):
        NumericalSemigroup(())
    with pytest.raises(SemigroupError):
        NumericalSemigroup((0, 1))


def test_symmetry():
    assert is_symmetric(NumericalSemigroup((3, 5)))
    assert not is_symmetric(NumericalSemigroup((3, 4, 5)))


@pytest.mark.parametrize("q, n, r, gens, genus", H_SEMIGROUPS)
def test_weierstrass_semigroups(q, n, r, gens, genus):
    assert weierstrass_generators(q, n, r) == gens
    S = NumericalSemigroup(gens)
    assert S.genus == genus
    assert S.consistent()
    assert is_telescopic(gens)
    assert is_symmetric(S)
    assert telescopic_genus(gens) == genus


@pytest.mark.parametrize("q", range(2, 10))
def test_two_generator_telescopic_genus(q):
    gens = hermitian_generators(q)
    assert telescopic_genus(gens) == q * (q - 1) // 2 == NumericalSemigroup(gens).genus


def _random_telescopic(rng):
    gens = [1]
    for _ in range(rng.randint(1, 3)):
        c = rng.randint(2, 4)
        while True:
            b = sum(rng.randint(0, 3) * a for a in gens) + rng.randint(0, 2) * gens[0]
            if b > 0 and math.gcd(b, c) == 1:
                break
        gens = [c * a for a in gens] + [b]
    return tuple(gens)


def test_telescopic_formula_matches_gap_count():
    rng = random.Random(7)
    for _ in range(100):
        gens = _random_telescopic(rng)
        assert is_telescopic(gens), gens
        assert telescopic_genus(gens) == NumericalSemigroup(gens).genus, gens


def test_ladder_order_matters():
    assert not is_telescopic((4, 5, 6))
    with pytest.raises(NotTelescopicError):
        telescopic_genus((4, 5, 6))
    steps = telescopic_ladder((4, 6, 9))
    assert [step.d for step in steps] == [2, 1]
    assert steps[1].ladder == [2, 3]
    assert all(step.member for step in steps)


def test_redundancy():
    assert 10 in redundancy_probe((4, 6, 10, 9, 13))
    full = NumericalSemigroup(weierstrass_generators(2, 4, 3))
    short = NumericalSemigroup(corollary_generators(2, 4, 3))
    assert 18 in full and 18 not in short
    assert short.genus > full.genus
    assert NumericalSemigroup(corollary_generators(2, 3, 2)).genus == 6


def test_gs_generators():
    assert gs_generators(2, 5) == (16, 24, 33)
    assert NumericalSemigroup(gs_generators(2, 5)).genus == 120


def test_semigroup_record():
    record = semigroup_record((9, 12, 30, 28, 64), castle=True)
    assert record.m_2 == 9
    assert record.genus == 36
    assert record.frobenius == 71
    assert record.symmetric and record.telescopic
    assert record.telescopic_genus == 36
    assert record.castle is True


def test_sg_new():
    S = sg_new([6, 9, 20])
    assert S.gens == (6, 9, 20)
    assert S.frobenius == 43
    assert S.genus == 22
    assert S.consistent()
    with pytest.raises(SemigroupError):
        sg_new([6, 9, 15])
