"""Sheet functions and the composed phase kernel f(e(i^k * r)).

The logarithmic sheets use the unwrapped convention log(e(z)) = 2*pi*i*z,
taken as a formal identity with no branch reduction.  Applying the
principal log after exponentiation would wrap whenever |2*pi*r| exceeds pi
and would break the closed-form reductions this package cross-checks, so
the unwrapped reading is the one implemented throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import TWO_PI, unit_phase_e
from .errors import DomainError, Overflow, ValidationError

SHEET_KINDS = ("const", "id", "recip", "log", "reciplog", "abs")

_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class Sheet:
    """One of the fixed sheet functions; ``value`` is used by ``const`` only."""

    kind: str
    value: float = 1.0

    def __post_init__(self):
        if self.kind not in SHEET_KINDS:
            raise ValidationError(
                f"unknown sheet {self.kind!r}; expected one of {', '.join(SHEET_KINDS)}"
            )
        if not math.isfinite(self.value):
            raise ValidationError("constant sheet value must be finite")


IDENTITY = Sheet("id")
RECIPROCAL = Sheet("recip")
LOG = Sheet("log")
RECIPROCAL_LOG = Sheet("reciplog")
ABSOLUTE = Sheet("abs")


def constant(c: float = 1.0) -> Sheet:
    return Sheet("const", float(c))


def phase_power_i(k: int) -> complex:
    """i^k, reduced by k mod 4."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    return _I_POWERS[k % 4]


def sheet_eval(sheet: Sheet, z) -> complex:
    """Apply the sheet to a scalar, as used for the outer factor f(<a,b>).

    The logarithmic sheets take the real branch and therefore require a
    positive real argument.
    """
    z = complex(z)
    kind = sheet.kind
    if kind == "const":
        return complex(sheet.value)
    if kind == "id":
        return z
    if kind == "recip":
        if z == 0:
            raise DomainError("reciprocal sheet is undefined at 0")
        return 1.0 / z
    if kind == "abs":
        return complex(abs(z))
    # log / reciplog: positive real arguments only
    if z.imag != 0.0 or z.real <= 0.0:
        raise DomainError(f"log sheet requires a positive real argument, got {z}")
    ln = math.log(z.real)
    if kind == "log":
        return complex(ln)
    if ln == 0.0:
        raise DomainError("reciprocal-log sheet is undefined at 1 (log 1 = 0)")
    return complex(1.0 / ln)


def sheet_phase_eval(sheet: Sheet, k: int, r: float) -> complex:
    """Evaluate f(e(i^k * r)) for a nonnegative scaled radius r.

    Logarithmic sheets follow the unwrapped identity: log -> 2*pi*i*i^k*r
    and reciplog -> its reciprocal.  The other sheets compose literally,
    which can overflow for k not divisible by 4 once exp(2*pi*r) leaves
    the float64 range.
    """
    ik = phase_power_i(k)
    if not math.isfinite(r):
        raise ValidationError("r must be finite")
    kind = sheet.kind
    if kind == "const":
        return complex(sheet.value)
    if kind == "id":
        return unit_phase_e(ik * r)
    if kind == "recip":
        return unit_phase_e(-ik * r)
    if kind == "log":
        return TWO_PI * 1j * ik * r
    if kind == "reciplog":
        if r == 0.0:
            raise DomainError("reciprocal-log phase is undefined at r = 0")
        return 1.0 / (TWO_PI * 1j * ik * r)
    # abs: |e(q)| = exp(-2*pi*Im q)
    try:
        return complex(math.exp(-TWO_PI * ik.imag * r))
    except OverflowError:
        raise Overflow(f"|e(i^{k} * {r})| overflows float64") from None
