"""The k-th local product of two real vectors over a sheet.

Two evaluation routes share every instance:

* ``local_product_direct`` integrates the composed kernel
  f(e(i^k * |x|_k / (||a||^{k+1} + ||b||^{k+1}))) over the oriented box
  spanned by |a| and |b|, then multiplies by the outer factor f(<a, b>).
* ``local_product_closed`` evaluates the algebraic reduction available for
  each sheet, pulling every constant out of the integral; only the real
  point-norm kernels (or the bare phase, for id/recip) remain under the
  quadrature sign.

Cross-checking the two routes on the same configuration isolates formula
errors from quadrature noise, which is exactly what the test suite does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DOT,
    BoxDomain,
    Pairing,
    as_vector,
    box_from_pair,
    euclidean_norm,
    pairing_eval,
    signed_volume,
)
from .errors import DegenerateScale, DimensionMismatch, DomainError, UnsupportedSheetReduction
from .quadrature import (
    DEFAULT_CONFIG,
    IntegrationResult,
    QuadratureConfig,
    integrate_box,
    lp_kernel,
    reciprocal_lp_kernel,
    sheet_phase_kernel,
)
from .sheets import Sheet, phase_power_i, sheet_eval

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class LocalProductInstance:
    """Arguments of one local-product evaluation."""

    a: np.ndarray
    b: np.ndarray
    k: int
    sheet: Sheet
    pairing: Pairing = DOT

    def __post_init__(self):
        a = as_vector(self.a)
        b = as_vector(self.b)
        if a.size != b.size:
            raise DimensionMismatch(f"vector lengths differ: {a.size} vs {b.size}")
        if self.k < 1:
            raise DomainError("k must be >= 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def ndim(self) -> int:
        return self.a.size

    def pairing_value(self) -> float:
        return pairing_eval(self.pairing, self.a, self.b)

    def validate(self) -> None:
        """Enforce the sheet-specific constraints on the pairing value."""
        kind = self.sheet.kind
        if kind in ("log", "reciplog"):
            p = self.pairing_value()
            if p <= 0.0:
                raise DomainError(f"{kind} sheet requires <a,b> > 0, got {p}")
            if p == 1.0:
                raise DomainError(f"{kind} sheet requires <a,b> != 1")
        elif kind == "recip":
            if self.pairing_value() == 0.0:
                raise DomainError("recip sheet requires <a,b> != 0")


def scale_denominator(a, b, k: int) -> float:
    """||a||^{k+1} + ||b||^{k+1}, the radius scale inside the phase."""
    d = euclidean_norm(a) ** (k + 1) + euclidean_norm(b) ** (k + 1)
    if d == 0.0:
        raise DegenerateScale("both vectors are zero; the phase denominator vanishes")
    return d


@dataclass(frozen=True)
class LocalProductValue:
    """A local-product value with the quadrature bookkeeping behind it."""

    value: complex
    error_estimate: float
    integration: IntegrationResult | None  # None when no quadrature was needed

    @property
    def converged(self) -> bool:
        return self.integration is None or self.integration.converged


_EXACT = None  # marker: reduction needed no quadrature


def local_product_direct_info(
    inst: LocalProductInstance, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> LocalProductValue:
    """Evaluate straight from the definition: outer sheet factor times the
    box integral of the composed phase kernel.

    The absolute-value sheet integrates over the unoriented box (its
    reduction wraps the volume in absolute values); orientation is still
    available from the instance itself.
    """
    inst.validate()
    p = inst.pairing_value()
    outer = sheet_eval(inst.sheet, p)
    scale = scale_denominator(inst.a, inst.b, inst.k)
    box = box_from_pair(inst.a, inst.b)
    if inst.sheet.kind == "abs":
        box = box.unoriented()
    res = integrate_box(sheet_phase_kernel(inst.sheet, inst.k, scale), box, cfg)
    return LocalProductValue(outer * res.value, abs(outer) * res.error_estimate, res)


def local_product_direct(
    inst: LocalProductInstance, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> complex:
    return local_product_direct_info(inst, cfg).value


def local_product_closed_info(
    inst: LocalProductInstance, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> LocalProductValue:
    """Evaluate via the sheet's algebraic reduction.

    const and abs (k divisible by 4) reduce to closed forms with no
    quadrature at all; log and reciplog reduce to real point-norm
    integrals; id and recip keep the bare phase integral.
    """
    inst.validate()
    p = inst.pairing_value()
    kind = inst.sheet.kind
    box = box_from_pair(inst.a, inst.b)

    if kind == "const":
        c = inst.sheet.value
        return LocalProductValue(complex(c * c * signed_volume(box)), 0.0, _EXACT)
    if kind == "abs":
        if inst.k % 4 != 0:
            raise UnsupportedSheetReduction(
                f"no closed form for the abs sheet with k = {inst.k} (k % 4 != 0)"
            )
        return LocalProductValue(complex(abs(p) * abs(signed_volume(box))), 0.0, _EXACT)

    scale = scale_denominator(inst.a, inst.b, inst.k)
    if kind == "log":
        res = integrate_box(lp_kernel(inst.k), box, cfg)
        prefactor = TWO_PI * phase_power_i(inst.k + 1) * math.log(p) / scale
    elif kind == "reciplog":
        res = integrate_box(reciprocal_lp_kernel(inst.k), box, cfg)
        prefactor = scale / (TWO_PI * phase_power_i(inst.k + 1) * math.log(p))
    elif kind == "id":
        res = integrate_box(sheet_phase_kernel(inst.sheet, inst.k, scale), box, cfg)
        prefactor = complex(p)
    else:  # recip
        res = integrate_box(sheet_phase_kernel(inst.sheet, inst.k, scale), box, cfg)
        prefactor = 1.0 / p
    return LocalProductValue(prefactor * res.value, abs(prefactor) * res.error_estimate, res)


def local_product_closed(
    inst: LocalProductInstance, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> complex:
    return local_product_closed_info(inst, cfg).value
