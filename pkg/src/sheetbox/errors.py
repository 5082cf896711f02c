"""Exception types shared across the package."""


class SheetboxError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SheetboxError):
    """Malformed input: bad field value, unknown name, out-of-range parameter."""


class DimensionMismatch(ValidationError):
    """Vector lengths differ, or a pairing is incompatible with the dimension."""


class NegativeBaseOddRoot(SheetboxError):
    """Odd-order point norm of a sum that went negative; unreachable from box points."""


class Overflow(SheetboxError):
    """A phase evaluation left the representable range of float64."""


class DomainError(SheetboxError):
    """A sheet was evaluated outside its domain (log of non-positive, 1/0, 1/log 1)."""


class NonFiniteIntegrand(SheetboxError):
    """The kernel produced NaN or infinity at a quadrature node or sample."""


class DegenerateScale(SheetboxError):
    """Both vectors are zero, so the phase denominator vanishes."""


class UnsupportedSheetReduction(SheetboxError):
    """No closed-form reduction exists for this (sheet, k) combination."""


class HypothesisViolated(ValidationError):
    """The instance does not satisfy the inequality's stated hypotheses."""


class PairingNotAntisymmetric(ValidationError):
    """The swap-identity check requires an antisymmetric pairing."""


class ConstraintUnsatisfiable(SheetboxError):
    """Rejection sampling exhausted its attempt budget for the requested constraints."""
