import random

import numpy as np
import pytest

from library.errors import FieldMismatchError
from library.gf import field_for, frobenius, in_subfield
from library.spoly import (
    NEG_INF_DEGREE,
    BiPoly,
    SparsePoly,
    evaluate,
    frobenius_power,
    reduce_exponents,
    ring_ops,
    sum_polys,
    trace_compose,
    trace_poly,
)


@pytest.fixture
def f8():
    return field_for(2, 3)


def test_render(f8):
    P = SparsePoly(f8, {6: 1, 5: 1, 3: 1})
    assert P.render() == "x^6+x^5+x^3"
    assert SparsePoly.zero(f8).render() == "0"
    assert SparsePoly.constant(f8, 1).render() == "1"
    assert SparsePoly(f8, {1: f8.element(3)}).render() == "[1,1,0]*x"

    f9 = field_for(3, 1)
    assert SparsePoly(f9, {2: 2, 0: 1}).render() == "2*x^2+1"
    assert BiPoly.monomial(f9, 2, 1).render() == "x^2*y"


def test_zero_coefficients_are_dropped(f8):
    P = SparsePoly(f8, {3: 1}) + SparsePoly(f8, {3: 1})
    assert P.is_zero
    assert P.degree == NEG_INF_DEGREE
    assert SparsePoly(f8, {4: 0}).is_zero


def test_ring_arithmetic(f8):
    x = SparsePoly.x(f8)
    one = SparsePoly.constant(f8, 1)
    assert (x + one) ** 2 == SparsePoly(f8, {2: 1, 0: 1})
    assert (x + one) ** 4 == SparsePoly(f8, {4: 1, 0: 1})
    assert (x + one) ** 3 == SparsePoly(f8, {3: 1, 2: 1, 1: 1, 0: 1})

    f3 = field_for(3, 1)
    y = SparsePoly.x(f3) + SparsePoly.constant(f3, 1)
    assert y ** 2 == SparsePoly(f3, {2: 1, 1: 2, 0: 1})
    assert ring_ops(y, y, "mul") == y ** 2
    assert ring_ops(y, 3, "pow") == SparsePoly(f3, {3: 1, 0: 1})
    assert ring_ops(y, y, "sub").is_zero
    with pytest.raises(ValueError):
        ring_ops(y, y, "div")


def test_mixed_fields_rejected(f8):
    other = field_for(2, 4)
    with pytest.raises(FieldMismatchError):
        SparsePoly.x(f8) + SparsePoly.x(other)
    with pytest.raises(TypeError):
        SparsePoly.x(f8) + BiPoly.monomial(f8, 1, 0)


def test_reduce_exponents(f8):
    P = SparsePoly(f8, {8: 1, 7: 1, 14: 1, 0: 1})
    # x^8 -> x, x^14 -> x^7 cancels x^7
    assert reduce_exponents(P, f8) == SparsePoly(f8, {1: 1, 0: 1})


def test_trace_and_frobenius(f8):
    assert trace_poly(f8) == SparsePoly(f8, {4: 1, 2: 1, 1: 1})
    assert trace_compose(SparsePoly.x(f8), 0, f8).is_zero

    a = f8.element(2)
    P = SparsePoly(f8, {1: a})
    assert P.frobenius_power(1) == SparsePoly(f8, {2: frobenius(a, 1, f8)})


def test_evaluate_matches_field_arithmetic(f8):
    elems = f8.elements()
    P = SparsePoly(f8, {3: 1, 0: 1})
    assert np.array_equal(evaluate(P, elems), elems ** 3 + f8.one())
    assert np.array_equal(P.to_galois()(elems), evaluate(P, elems))


def test_bipoly_partial_and_evaluate(f8):
    T = BiPoly.from_y(trace_poly(f8)) - BiPoly.from_x(SparsePoly(f8, {3: 1}))
    assert T.partial_y() == BiPoly.constant(f8, 1)

    elems = f8.elements()
    xs, ys = elems, elems[::-1]
    G = BiPoly.monomial(f8, 1, 2) + BiPoly.monomial(f8, 0, 1)
    assert np.array_equal(G.evaluate(xs, ys), xs * ys ** 2 + ys)


def test_sum_polys(f8):
    total = sum_polys((SparsePoly.monomial(f8, e) for e in range(3)), f8)
    assert total == SparsePoly(f8, {0: 1, 1: 1, 2: 1})
    assert sum_polys([], f8, BiPoly) == BiPoly.zero(f8)


FIELDS = [(2, 3), (3, 2), (4, 2), (2, 4)]


def _random_poly(rng, spec, terms=5):
    top = 3 * spec.order
    return SparsePoly(spec, {rng.randrange(top): spec.element(rng.randrange(1, spec.order)) for _ in range(terms)})


@pytest.mark.parametrize(
    "q, n, k, e, reduced",
    [
        (2, 3, 1, 5, 3),
        (2, 5, 2, 9, 5),
    ],
)
def test_frobenius_power_reduces(q, n, k, e, reduced):
    spec = field_for(q, n)
    assert frobenius_power(SparsePoly.monomial(spec, e), k, spec) == SparsePoly.monomial(spec, reduced)


@pytest.mark.parametrize("q, n", FIELDS)
def test_reduction_keeps_values(q, n):
    spec = field_for(q, n)
    elems = spec.elements()
    rng = random.Random(q * 100 + n)
    for _ in range(10):
        P = _random_poly(rng, spec)
        R = reduce_exponents(P, spec)
        assert reduce_exponents(R, spec) == R
        assert all(e < spec.order for e in R.exponents)
        assert np.array_equal(evaluate(R, elems), evaluate(P, elems))


def test_reduction_at_random_points():
    specs = [field_for(q, n) for q, n in FIELDS]
    rng = random.Random(31)
    for _ in range(200):
        spec = rng.choice(specs)
        P = _random_poly(rng, spec)
        a = spec.element(rng.randrange(spec.order))
        assert evaluate(reduce_exponents(P, spec), a) == evaluate(P, a)


@pytest.mark.parametrize("q, n", FIELDS)
def test_frobenius_commutes_with_evaluation(q, n):
    spec = field_for(q, n)
    elems = spec.elements()
    rng = random.Random(q * 1000 + n)
    for _ in range(5):
        P = _random_poly(rng, spec)
        values = evaluate(P, elems)
        for k in range(spec.n):
            assert np.array_equal(evaluate(frobenius_power(P, k, spec), elems), frobenius(values, k, spec))


@pytest.mark.parametrize("q, n", FIELDS)
def test_trace_lands_in_base_field(q, n):
    spec = field_for(q, n)
    elems = spec.elements()
    rng = random.Random(q * 7 + n)
    for _ in range(5):
        values = evaluate(trace_compose(_random_poly(rng, spec), spec.n, spec), elems)
        assert bool(np.all(in_subfield(values, spec, 1)))
