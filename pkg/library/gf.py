"""
Finite field layer.

One flat field F_{p^(en)} per FieldSpec; the intermediate field F_q (q = p^e)
is the set of fixed points of the relative Frobenius a -> a^q. Arithmetic is
delegated to ``galois``. For orders up to 2**20 galois runs its exp/log
lookup-table kernels, so multiplication goes through discrete logarithms.

Elements are galois FieldArray scalars (0-d arrays); every function that makes
sense elementwise also accepts FieldArray vectors.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Union

import galois
import numpy as np

from .common_utils import CertifierContext, get_certifier_context
from .errors import EnumerationBoundError, FieldMismatchError, InvalidFieldError

logger = logging.getLogger(__name__)

FieldElement = galois.FieldArray

ARITH_OPS = ("add", "sub", "mul", "div", "pow")


def split_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e."""
    if q < 2 or not galois.is_prime_power(q):
        raise InvalidFieldError(f"q={q} is not a prime power")
    primes, multiplicities = galois.factors(q)
    return int(primes[0]), int(multiplicities[0])


@lru_cache(maxsize=None)
def minimal_modulus(p: int, degree: int) -> tuple[int, ...]:
    """
    Smallest monic irreducible polynomial of the given degree over F_p.

    Candidates are scanned by the integer sum(c_i * p**i) of their non-leading
    coefficients, so the result is reproducible without external tables.

    Returns:
        tuple: coefficients, constant term first, leading 1 last.
    """
    prime_field = galois.GF(p)
    top = p ** degree
    for tail in range(top):
        candidate = galois.Poly.Int(top + tail, field=prime_field)
        if candidate.is_irreducible():
            return tuple(int(c) for c in candidate.coeffs[::-1])
    raise InvalidFieldError(f"No irreducible polynomial of degree {degree} over F_{p}")


@lru_cache(maxsize=None)
def _galois_field(p: int, degree: int, modulus: tuple[int, ...]) -> type:
    if degree == 1:
        return galois.GF(p)
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
    return galois.GF(p ** degree, irreducible_poly=poly)


@dataclass(frozen=True)
class FieldSpec:
    """
    F_{q^n} with q = p^e, built from a fixed modulus over F_p.
    """

    p: int
    e: int
    n: int
    modulus: tuple[int, ...]
    GF: type = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def degree(self) -> int:
        return self.e * self.n

    @property
    def order(self) -> int:
        return self.p ** self.degree

    def header(self) -> dict:
        return {"p": self.p, "e": self.e, "n": self.n, "modulus": list(self.modulus)}

    def element(self, value: Union[int, Sequence[int]]) -> FieldElement:
        """
        Build an element from its integer encoding or its coefficient vector
        (constant coordinate first).
        """
        if not isinstance(value, (int, np.integer)):
            coeffs = [int(c) for c in value]
            if len(coeffs) > self.degree or any(not 0 <= c < self.p for c in coeffs):
                raise ValueError(f"Bad coefficient vector for {self}: {coeffs}")
            value = sum(c * self.p ** i for i, c in enumerate(coeffs))
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"Element encoding {value} out of range for order {self.order}")
        return self.GF(value)

    def scalar(self, k: int) -> FieldElement:
        """The image of the integer k in the prime subfield."""
        return self.GF(int(k) % self.p)

    def zero(self) -> FieldElement:
        return self.GF(0)

    def one(self) -> FieldElement:
        return self.GF(1)

    def elements(self) -> FieldElement:
        return self.GF.elements

    def owns(self, a) -> bool:
        return type(a) is self.GF

    def check(self, *items) -> None:
        for a in items:
            if not self.owns(a):
                raise FieldMismatchError(f"Element of {type(a).__name__} used with field {self.header()}")

    def encode(self, a: FieldElement) -> int:
        return int(a)

    def coefficients(self, a: FieldElement) -> list[int]:
        value = int(a)
        digits = []
        for _ in range(self.degree):
            value, digit = divmod(value, self.p)
            digits.append(digit)
        return digits

    def serialize(self, a: FieldElement) -> str:
        return "[" + ",".join(str(c) for c in self.coefficients(a)) + "]"


def field_create(p: int, e: int, n: int, context: Optional[CertifierContext] = None) -> FieldSpec:
    """
    Build F_{p^(en)} with the minimal modulus.

    Raises:
        InvalidFieldError: p not prime or e, n not positive.
        EnumerationBoundError: p^(en) above the context's field_limit.
    """
    context = context or get_certifier_context()
    if not galois.is_prime(p):
        raise InvalidFieldError(f"p={p} is not prime")
    if e < 1 or n < 1:
        raise InvalidFieldError(f"e and n must be positive, got e={e}, n={n}")
    order = p ** (e * n)
    if order > context.field_limit:
        raise EnumerationBoundError(f"Field order {p}^{e * n} exceeds field_limit={context.field_limit}")
    modulus = minimal_modulus(p, e * n)
    spec = FieldSpec(p=p, e=e, n=n, modulus=modulus, GF=_galois_field(p, e * n, modulus))
    logger.debug(f"Built field {spec.header()}")
    return spec


def field_for(q: int, n: int, context: Optional[CertifierContext] = None) -> FieldSpec:
    """F_{q^n} for a prime power q."""
    p, e = split_prime_power(q)
    return field_create(p, e, n, context=context)


def as_ints(a: FieldElement) -> np.ndarray:
    """Integer encodings of a FieldArray as a plain int64 array."""
    return np.asarray(a.view(np.ndarray), dtype=np.int64)


def power(a: FieldElement, k: int) -> FieldElement:
    """
    a**k for unbounded k >= 0, elementwise.

    Exponents k >= 1 are reduced to ((k - 1) mod (Q - 1)) + 1, which keeps
    0**k = 0 and fixes every element for k = Q.
    """
    if k < 0:
        raise ValueError(f"Negative exponent {k}")
    if k == 0:
        return a ** 0
    return a ** ((k - 1) % (type(a).order - 1) + 1)


def arith(a: FieldElement, b, op: str) -> FieldElement:
    """
    Field arithmetic on two elements of the same field.

    For op="pow" the second operand is a nonnegative integer exponent.
    """
    if op not in ARITH_OPS:
        raise ValueError(f"Unknown op {op!r}; expected one of {ARITH_OPS}")
    if op == "pow":
        return power(a, int(b))
    if type(a) is not type(b):
        raise FieldMismatchError(f"Operands from {type(a).__name__} and {type(b).__name__}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if np.any(b == 0):
        raise ZeroDivisionError("Division by the zero element")
    return a / b


def frobenius(a: FieldElement, k: int, spec: FieldSpec) -> FieldElement:
    """a^(q^k), the k-th power of the relative Frobenius."""
    if k < 0:
        raise ValueError(f"Frobenius power must be >= 0, got {k}")
    spec.check(a)
    return power(a, spec.q ** (k % spec.n))


def partial_trace(a: FieldElement, k: int, spec: FieldSpec) -> FieldElement:
    """a + a^q + ... + a^(q^(k-1)); zero for k = 0."""
    if not 0 <= k <= spec.n:
        raise ValueError(f"Trace length {k} outside 0..{spec.n}")
    spec.check(a)
    total = spec.GF.Zeros(np.shape(a))
    for i in range(k):
        total = total + frobenius(a, i, spec)
    return total


def in_subfield(a: FieldElement, spec: FieldSpec, d: int = 1) -> np.ndarray:
    """Elementwise membership in F_{q^d}."""
    return np.asarray(power(a, spec.q ** d) == a)


def subfield_elements(spec: FieldSpec, d: int) -> FieldElement:
    """
    All a with a^(q^d) = a, ascending by encoding.

    Raises:
        ValueError: d does not divide n.
    """
    if d < 1 or spec.n % d != 0:
        raise ValueError(f"d={d} does not divide n={spec.n}")
    elements = spec.elements()
    return elements[in_subfield(elements, spec, d)]
