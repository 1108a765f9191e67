import numpy as np
import pytest

from library.common_utils import CertifierContext
from library.errors import EnumerationBoundError, FieldMismatchError, InvalidFieldError
from library.gf import (
    arith,
    as_ints,
    field_create,
    field_for,
    frobenius,
    in_subfield,
    minimal_modulus,
    partial_trace,
    power,
    split_prime_power,
    subfield_elements,
)


def test_split_prime_power():
    assert split_prime_power(8) == (2, 3)
    assert split_prime_power(9) == (3, 2)
    assert split_prime_power(7) == (7, 1)
    with pytest.raises(InvalidFieldError):
        split_prime_power(6)


@pytest.mark.parametrize(
    "p, degree, modulus",
    [
        (11, 1, (0, 1)),
        (2, 3, (1, 1, 0, 1)),
        (2, 5, (1, 0, 1, 0, 0, 1)),
    ],
)
def test_minimal_modulus(p, degree, modulus):
    assert minimal_modulus(p, degree) == modulus


def test_field_header_is_reproducible():
    spec = field_for(2, 5)
    assert spec.header() == {"p": 2, "e": 1, "n": 5, "modulus": [1, 0, 1, 0, 0, 1]}
    assert field_for(2, 5) == spec
    assert field_create(11, 1, 1).modulus == (0, 1)


def test_field_create_rejects_bad_input():
    with pytest.raises(InvalidFieldError):
        field_create(4, 1, 1)
    with pytest.raises(InvalidFieldError):
        field_create(2, 1, 0)
    with pytest.raises(EnumerationBoundError):
        field_create(2, 1, 11, context=CertifierContext(field_limit=2 ** 10))


def test_arith_round_trips_through_division():
    spec = field_for(2, 3)
    elems = spec.elements()
    for a in elems:
        for b in elems[1:]:
            assert arith(arith(a, b, "mul"), b, "div") == a
            assert arith(arith(a, b, "add"), b, "sub") == a


def test_arith_errors():
    spec = field_for(2, 3)
    other = field_for(3, 2)
    a = spec.element(3)
    with pytest.raises(ZeroDivisionError):
        arith(a, spec.zero(), "div")
    with pytest.raises(FieldMismatchError):
        arith(a, other.element(1), "add")
    with pytest.raises(ValueError):
        arith(a, a, "xor")


def test_power_reduces_large_exponents():
    spec = field_for(3, 2)
    elems = spec.elements()
    assert np.array_equal(power(elems, spec.order), elems)
    assert np.array_equal(power(elems, 10 ** 12 * (spec.order - 1) + 1), elems)
    assert power(spec.zero(), 5) == 0
    assert power(spec.element(5), 0) == 1
    assert arith(spec.element(5), 2, "pow") == spec.element(5) ** 2


def test_frobenius_and_trace():
    spec = field_for(2, 3)
    elems = spec.elements()
    for a in elems:
        assert frobenius(a, spec.n, spec) == a
        assert frobenius(a, 1, spec) == a ** 2
    traces = partial_trace(elems, spec.n, spec)
    assert bool(np.all(in_subfield(traces, spec, 1)))
    assert np.all(as_ints(partial_trace(elems, 0, spec)) == 0)
    with pytest.raises(ValueError):
        partial_trace(elems, 4, spec)


def test_subfields():
    spec = field_for(2, 4)
    assert len(subfield_elements(spec, 1)) == 2
    assert len(subfield_elements(spec, 2)) == 4
    assert len(subfield_elements(spec, 4)) == 16
    with pytest.raises(ValueError):
        subfield_elements(spec, 3)

    spec4 = field_for(4, 2)
    assert spec4.q == 4
    assert len(subfield_elements(spec4, 1)) == 4


def test_element_encoding():
    spec = field_for(2, 3)
    a = spec.element([1, 1, 0])
    assert spec.encode(a) == 3
    assert spec.coefficients(a) == [1, 1, 0]
    assert spec.serialize(a) == "[1,1,0]"
    with pytest.raises(ValueError):
        spec.element(8)
    with pytest.raises(ValueError):
        spec.element([2, 0, 0])


FIELDS = [(2, 3), (3, 2), (4, 2), (2, 4)]


@pytest.mark.parametrize("q, n", FIELDS)
def test_frobenius_is_a_field_automorphism(q, n):
    spec = field_for(q, n)
    elems = spec.elements()
    rng = np.random.default_rng(q * 10 + n)
    others = elems[rng.permutation(spec.order)]
    for k in range(spec.n + 1):
        assert np.array_equal(
            frobenius(elems + others, k, spec), frobenius(elems, k, spec) + frobenius(others, k, spec)
        )
        assert np.array_equal(
            frobenius(elems * others, k, spec), frobenius(elems, k, spec) * frobenius(others, k, spec)
        )


@pytest.mark.parametrize("q, n", FIELDS)
def test_trace_fibers_are_balanced(q, n):
    spec = field_for(q, n)
    traces = as_ints(partial_trace(spec.elements(), spec.n, spec))
    for gamma in subfield_elements(spec, 1):
        assert np.count_nonzero(traces == int(gamma)) == q ** (n - 1)


@pytest.mark.parametrize("q, n", FIELDS)
def test_base_field_is_closed(q, n):
    spec = field_for(q, n)
    base = subfield_elements(spec, 1)
    assert len(base) == q
    for a in base:
        for b in base:
            assert bool(in_subfield(a + b, spec, 1))
            assert bool(in_subfield(a * b, spec, 1))
