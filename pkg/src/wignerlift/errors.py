"""Exception types shared across the package."""


class WignerliftError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(WignerliftError):
    """Operands live in spaces of incompatible dimensions."""


class ZeroVector(WignerliftError):
    """A vector with norm below the equality tolerance where a nonzero one is required."""


class EmptyInput(WignerliftError):
    """An operation received an empty collection."""


class NotInTable(WignerliftError):
    """A tabulated ray map was queried outside its stored domain."""


class NotProbabilityPreserving(WignerliftError):
    """A ray map failed a transition-probability preservation requirement."""


class NonUnimodularK(WignerliftError):
    """The gauge-fixing coefficient of the lift came out with modulus != 1."""


class InconsistentTau(WignerliftError):
    """Conjugation classification disagrees between basis directions, or the
    reconstructed map fails ray validation; the oracle is not colinear."""


class AmbiguousTau(WignerliftError):
    """Linear and antilinear lifts are indistinguishable (one-dimensional domain)."""


class PreconditionFailed(WignerliftError):
    """A named hypothesis of the factorization pipeline does not hold."""

    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(f"{condition}: {message}" if message else condition)


class InvalidPlan(WignerliftError):
    """A trial plan violates its own invariants."""


class UnknownProposition(WignerliftError):
    """A proposition id outside the registry."""
