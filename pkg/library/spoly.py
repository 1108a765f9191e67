"""
Sparse polynomials over a FieldSpec.

SparsePoly maps exponents to coefficients, BiPoly maps (a, b) exponent pairs
of x^a y^b. Exponents are unbounded Python ints and zero coefficients are never
stored. No relation is applied implicitly: reduction mod (x^(q^n) - x) is an
explicit call, curve relations live in the valuation engine.
"""

import logging
import math
from typing import Iterable, Optional, Union

import galois
import numpy as np

from .errors import FieldMismatchError
from .gf import FieldElement, FieldSpec, frobenius, power

logger = logging.getLogger(__name__)

NEG_INF_DEGREE = -math.inf

Coefficient = Union[FieldElement, int]


class _SparseBase:
    """Shared storage and ring arithmetic; subclasses fix the key type."""

    __slots__ = ("spec", "_terms")

    def __init__(self, spec: FieldSpec, terms: Optional[dict] = None):
        self.spec = spec
        clean: dict = {}
        for key, coeff in (terms or {}).items():
            self._check_key(key)
            _accumulate(clean, self._norm_key(key), self._coerce(coeff))
        self._terms = clean

    # ------------------------------------------------------------------ #
    # Key handling (overridden)
    # ------------------------------------------------------------------ #
    @staticmethod
    def _check_key(key) -> None:
        raise NotImplementedError

    @staticmethod
    def _norm_key(key):
        return key

    @staticmethod
    def _add_keys(k1, k2):
        raise NotImplementedError

    @staticmethod
    def _scale_key(key, factor: int):
        raise NotImplementedError

    @staticmethod
    def _zero_key():
        raise NotImplementedError

    # ------------------------------------------------------------------ #
    # Internal helpers
    # ------------------------------------------------------------------ #
    def _coerce(self, coeff: Coefficient) -> FieldElement:
        if isinstance(coeff, (int, np.integer)):
            return self.spec.scalar(int(coeff))
        self.spec.check(coeff)
        return coeff

    @classmethod
    def _wrap(cls, spec: FieldSpec, terms: dict):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj._terms = terms
        return obj

    def _same_field(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"Cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError(f"Polynomials over {self.spec.header()} and {other.spec.header()}")

    def _raise_characteristic(self):
        """self**p, using additivity of the p-th power."""
        p = self.spec.p
        return self._wrap(
            self.spec,
            {self._scale_key(k, p): power(c, p) for k, c in self._terms.items()},
        )

    # ------------------------------------------------------------------ #
    # Public API
    # ------------------------------------------------------------------ #
    @classmethod
    def zero(cls, spec: FieldSpec):
        return cls._wrap(spec, {})

    @classmethod
    def constant(cls, spec: FieldSpec, c: Coefficient = 1):
        return cls(spec, {cls._zero_key(): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def coefficient(self, key) -> FieldElement:
        return self._terms.get(self._norm_key(key), self.spec.zero())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.spec == other.spec and self.int_terms() == other.int_terms()

    __hash__ = None

    def int_terms(self) -> dict:
        return {k: int(c) for k, c in self._terms.items()}

    def __neg__(self):
        return self._wrap(self.spec, {k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        self._same_field(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _accumulate(out, k, c)
        return self._wrap(self.spec, out)

    def __sub__(self, other):
        self._same_field(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _accumulate(out, k, -c)
        return self._wrap(self.spec, out)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)) or self.spec.owns(other):
            c = self._coerce(other)
            if c == 0:
                return self.zero(self.spec)
            return self._wrap(self.spec, {k: v * c for k, v in self._terms.items()})
        self._same_field(other)
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                _accumulate(out, self._add_keys(k1, k2), c1 * c2)
        return self._wrap(self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError(f"Negative polynomial power {k}")
        result = self.constant(self.spec, 1)
        base = self
        p = self.spec.p
        while k:
            k, digit = divmod(k, p)
            for _ in range(digit):
                result = result * base
            if k:
                base = base._raise_characteristic()
        return result

    def frobenius_power(self, k: int):
        """self^(q^k): coefficients to the q^k, exponents times q^k."""
        if k < 0:
            raise ValueError(f"Frobenius power must be >= 0, got {k}")
        factor = self.spec.q ** k
        return self._wrap(
            self.spec,
            {self._scale_key(key, factor): frobenius(c, k, self.spec) for key, c in self._terms.items()},
        )

    def _render_coefficient(self, c: FieldElement, bare: bool) -> str:
        value = int(c)
        if value == 1 and not bare:
            return ""
        if value < self.spec.p:
            return str(value)
        return self.spec.serialize(c)

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, c in self.items():
            monomial = self._render_monomial(key)
            coeff = self._render_coefficient(c, bare=not monomial)
            if coeff and monomial:
                parts.append(f"{coeff}*{monomial}")
            else:
                parts.append(coeff or monomial)
        return "+".join(parts)

    def _render_monomial(self, key) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()})"


def _accumulate(out: dict, key, c) -> None:
    if key in out:
        s = out[key] + c
        if s == 0:
            del out[key]
        else:
            out[key] = s
    elif c != 0:
        out[key] = c


def _power_text(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


class SparsePoly(_SparseBase):
    """Univariate polynomial in x."""

    __slots__ = ()

    @staticmethod
    def _check_key(key) -> None:
        if not isinstance(key, (int, np.integer)) or key < 0:
            raise ValueError(f"Exponent must be a nonnegative integer, got {key!r}")

    @staticmethod
    def _norm_key(key):
        return int(key)

    @staticmethod
    def _add_keys(k1, k2):
        return k1 + k2

    @staticmethod
    def _scale_key(key, factor: int):
        return key * factor

    @staticmethod
    def _zero_key():
        return 0

    @classmethod
    def monomial(cls, spec: FieldSpec, e: int, c: Coefficient = 1) -> "SparsePoly":
        return cls(spec, {e: c})

    @classmethod
    def x(cls, spec: FieldSpec) -> "SparsePoly":
        return cls.monomial(spec, 1)

    @property
    def degree(self):
        """Largest exponent; NEG_INF_DEGREE for the zero polynomial."""
        return max(self._terms) if self._terms else NEG_INF_DEGREE

    @property
    def exponents(self) -> list[int]:
        return sorted(self._terms, reverse=True)

    def leading_coefficient(self) -> FieldElement:
        if not self._terms:
            return self.spec.zero()
        return self._terms[max(self._terms)]

    def _render_monomial(self, key) -> str:
        return _power_text("x", key)

    def to_galois(self) -> galois.Poly:
        GF = self.spec.GF
        if not self._terms:
            return galois.Poly.Zero(field=GF)
        degrees = sorted(self._terms)
        coeffs = GF([int(self._terms[d]) for d in degrees])
        return galois.Poly.Degrees(degrees, coeffs=coeffs, field=GF)


class BiPoly(_SparseBase):
    """Bivariate polynomial in x, y; keys are (a, b) for x^a y^b."""

    __slots__ = ()

    @staticmethod
    def _check_key(key) -> None:
        if (
            not isinstance(key, tuple)
            or len(key) != 2
            or any(not isinstance(v, (int, np.integer)) or v < 0 for v in key)
        ):
            raise ValueError(f"BiPoly key must be a pair of nonnegative integers, got {key!r}")

    @staticmethod
    def _norm_key(key):
        return (int(key[0]), int(key[1]))

    @staticmethod
    def _add_keys(k1, k2):
        return (k1[0] + k2[0], k1[1] + k2[1])

    @staticmethod
    def _scale_key(key, factor: int):
        return (key[0] * factor, key[1] * factor)

    @staticmethod
    def _zero_key():
        return (0, 0)

    @classmethod
    def monomial(cls, spec: FieldSpec, a: int, b: int, c: Coefficient = 1) -> "BiPoly":
        return cls(spec, {(a, b): c})

    @classmethod
    def from_x(cls, P: SparsePoly) -> "BiPoly":
        return cls._wrap(P.spec, {(e, 0): c for e, c in P.terms.items()})

    @classmethod
    def from_y(cls, P: SparsePoly) -> "BiPoly":
        return cls._wrap(P.spec, {(0, e): c for e, c in P.terms.items()})

    def partial_y(self) -> "BiPoly":
        """Formal derivative with respect to y."""
        out: dict = {}
        for (a, b), c in self._terms.items():
            if b % self.spec.p:
                _accumulate(out, (a, b - 1), c * self.spec.scalar(b))
        return self._wrap(self.spec, out)

    def evaluate(self, xs: FieldElement, ys: FieldElement) -> FieldElement:
        """Elementwise value at points (xs[i], ys[i])."""
        self.spec.check(xs, ys)
        shape = np.broadcast(np.asarray(xs), np.asarray(ys)).shape
        total = self.spec.GF.Zeros(shape)
        for (a, b), c in self._terms.items():
            total = total + c * power(xs, a) * power(ys, b)
        return total

    def _render_monomial(self, key) -> str:
        return "*".join(t for t in (_power_text("x", key[0]), _power_text("y", key[1])) if t)


Poly = Union[SparsePoly, BiPoly]


def ring_ops(P: Poly, Q, op: str) -> Poly:
    """Exact ring arithmetic; for op="pow" Q is a nonnegative integer."""
    if op == "add":
        return P + Q
    if op == "sub":
        return P - Q
    if op == "mul":
        return P * Q
    if op == "pow":
        return P ** int(Q)
    raise ValueError(f"Unknown ring op {op!r}")


def reduce_exponents(P: SparsePoly, spec: FieldSpec) -> SparsePoly:
    """
    Reduce mod (x^(q^n) - x): e >= 1 becomes ((e - 1) mod (q^n - 1)) + 1.
    """
    if P.spec != spec:
        raise FieldMismatchError(f"Polynomial over {P.spec.header()} reduced in {spec.header()}")
    period = spec.order - 1
    out: dict = {}
    for e, c in P.terms.items():
        _accumulate(out, e if e == 0 else (e - 1) % period + 1, c)
    return SparsePoly._wrap(spec, out)


def frobenius_power(P: SparsePoly, k: int, spec: FieldSpec, reduce: bool = True) -> SparsePoly:
    """P^(q^k), optionally reduced mod (x^(q^n) - x)."""
    if P.spec != spec:
        raise FieldMismatchError(f"Polynomial over {P.spec.header()} used with {spec.header()}")
    raised = P.frobenius_power(k)
    return reduce_exponents(raised, spec) if reduce else raised


def trace_compose(P: SparsePoly, k: int, spec: FieldSpec, reduce: bool = True) -> SparsePoly:
    """T_k(P) = P + P^q + ... + P^(q^(k-1)); zero for k = 0."""
    if k < 0:
        raise ValueError(f"Trace length must be >= 0, got {k}")
    total = SparsePoly.zero(spec)
    for i in range(k):
        total = total + frobenius_power(P, i, spec, reduce=reduce)
    return total


def trace_poly(spec: FieldSpec, k: Optional[int] = None) -> SparsePoly:
    """T_k(x) itself, k defaulting to n."""
    k = spec.n if k is None else k
    return trace_compose(SparsePoly.x(spec), k, spec, reduce=False)


def evaluate(P: SparsePoly, a: FieldElement) -> FieldElement:
    """P(a), elementwise when a is a vector."""
    P.spec.check(a)
    total = P.spec.GF.Zeros(np.shape(a))
    for e, c in P.terms.items():
        total = total + c * power(a, e)
    return total


def sum_polys(polys: Iterable[Poly], spec: FieldSpec, cls=SparsePoly) -> Poly:
    total = cls.zero(spec)
    for P in polys:
        total = total + P
    return total
