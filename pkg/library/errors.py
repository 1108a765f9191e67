"""
Exceptions raised by the certifier.

Input problems derive from ValueError, computations that could not conclude
derive from RuntimeError.
"""


class InvalidFieldError(ValueError):
    """Field parameters do not describe a finite field we can build."""


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


class EnumerationBoundError(ValueError):
    """An exhaustive oracle would exceed the configured enumeration bound."""


class InvalidProfileError(ValueError):
    """The r-tuple is not a strictly increasing tuple starting at 0 below n."""


class ProfileDiagnosticError(RuntimeError):
    """Derived profile data contradicts itself (e.g. a tie when choosing M)."""


class AmbiguousValuationError(RuntimeError):
    """The minimum weight stayed tied after every allowed rewriting pass."""


class WitnessError(ValueError):
    """No admissible construction exists for a witness function."""


class SemigroupError(ValueError):
    """Generators do not define a numerical semigroup."""


class NotTelescopicError(ValueError):
    """A telescopic-only formula was applied to a non-telescopic sequence."""
