"""Verdict-producing checkers for the two box-integral inequalities, the
swap identity for antisymmetric pairings, and the triangle-inequality
modulus bound.

Each inequality report carries a Holds / Violated / Inconclusive verdict.
The right-hand sides are pure formula evaluations (quadrature-free); only
the left-hand box integral carries numerical error, and the verdict is
guarded by a band of ``VERDICT_GUARD`` times that estimate so that plain
quadrature noise near the boundary reads as Inconclusive rather than as a
spurious verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .core import (
    as_vector,
    box_from_pair,
    euclidean_norm,
    pairing_is_antisymmetric,
    signed_volume,
)
from .errors import HypothesisViolated, PairingNotAntisymmetric, ValidationError
from .localprod import (
    LocalProductInstance,
    local_product_direct_info,
    scale_denominator,
)
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    _kernel_params,
    integrate_box,
    lp_kernel,
    reciprocal_lp_kernel,
    sheet_phase_kernel,
)
from .sheets import sheet_eval

TWO_PI = 2.0 * math.pi

HOLDS = "Holds"
VIOLATED = "Violated"
INCONCLUSIVE = "Inconclusive"

# Width of the Inconclusive band in units of the LHS error estimate.  The
# estimate is a heuristic, not a bound; a factor of 4 makes false verdict
# flips rare without swallowing real margins.
VERDICT_GUARD = 4.0

APP2 = "app2"
APP3 = "app3"
THEOREM_IDS = (APP2, APP3)

_MODULUS_PROBE_NODES = 32  # per dimension; n <= 3 keeps the grid <= 32^3


@dataclass(frozen=True, eq=False)
class TheoremReport:
    theorem_id: str
    a: np.ndarray
    b: np.ndarray
    s: int
    k: int
    lhs: float
    rhs: float
    lhs_error: float
    margin: float  # rhs - lhs for app2, lhs - rhs for app3; > 0 means Holds
    verdict: str
    converged: bool = True


def _verdict(margin: float, lhs_error: float) -> str:
    if abs(margin) <= VERDICT_GUARD * lhs_error:
        return INCONCLUSIVE
    return HOLDS if margin > 0 else VIOLATED


def _check_s(s: int, allow_s_zero: bool) -> None:
    floor = 0 if allow_s_zero else 1
    if s < floor:
        raise ValidationError(f"s must be >= {floor}")


def thm_app2_report(
    a,
    b,
    s: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    allow_s_zero: bool = False,
) -> TheoremReport:
    """Check the upper-bound inequality app2 on one instance.

    LHS: |signed box integral of the l^{4s} point norm|.
    RHS: |<a,b>| / (2*pi*|log <a,b>|) * (||a||^{4s+1} + ||b||^{4s+1})
         * |prod_j (|b_j| - |a_j|)|.
    Hypotheses: <a,b> > 0 and <a,b> != 1 under the dot product.
    """
    a = as_vector(a)
    b = as_vector(b)
    _check_s(s, allow_s_zero)
    k = 4 * s
    p = float(a @ b)
    if p <= 0.0:
        raise HypothesisViolated(f"app2 requires <a,b> > 0, got {p}")
    if p == 1.0:
        raise HypothesisViolated("app2 requires <a,b> != 1")
    box = box_from_pair(a, b)
    res = integrate_box(lp_kernel(k), box, cfg)
    lhs = abs(res.value)
    rhs = (
        abs(p)
        / (TWO_PI * abs(math.log(p)))
        * (euclidean_norm(a) ** (k + 1) + euclidean_norm(b) ** (k + 1))
        * abs(signed_volume(box))
    )
    margin = rhs - lhs
    return TheoremReport(
        APP2, a, b, s, k, lhs, rhs, res.error_estimate, margin,
        _verdict(margin, res.error_estimate), res.converged,
    )


def thm_app3_report(
    a,
    b,
    s: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    allow_s_zero: bool = False,
) -> TheoremReport:
    """Check the lower-bound inequality app3 on one instance.

    LHS: |signed box integral of the reciprocal l^{4s+3} point norm|.
    RHS: 2*pi*|log <a,b>| * |prod_j (|b_j| - |a_j|)|
         / (||a||^{4s+4} + ||b||^{4s+4}).
    Hypotheses: all components positive, 0 < <a,b> <= e, <a,b> != 1.
    """
    a = as_vector(a)
    b = as_vector(b)
    _check_s(s, allow_s_zero)
    k = 4 * s + 3
    if np.any(a <= 0) or np.any(b <= 0):
        raise HypothesisViolated("app3 requires every component of a and b to be > 0")
    p = float(a @ b)
    if p <= 0.0 or p > math.e:
        raise HypothesisViolated(f"app3 requires 0 < <a,b> <= e, got {p}")
    if p == 1.0:
        raise HypothesisViolated("app3 requires <a,b> != 1")
    box = box_from_pair(a, b)
    res = integrate_box(reciprocal_lp_kernel(k), box, cfg)
    lhs = abs(res.value)
    rhs = (
        TWO_PI
        * abs(math.log(p))
        * abs(signed_volume(box))
        / (euclidean_norm(a) ** (k + 1) + euclidean_norm(b) ** (k + 1))
    )
    margin = lhs - rhs
    return TheoremReport(
        APP3, a, b, s, k, lhs, rhs, res.error_estimate, margin,
        _verdict(margin, res.error_estimate), res.converged,
    )


def theorem_report(
    theorem_id: str,
    a,
    b,
    s: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    allow_s_zero: bool = False,
) -> TheoremReport:
    if theorem_id == APP2:
        return thm_app2_report(a, b, s, cfg, allow_s_zero)
    if theorem_id == APP3:
        return thm_app3_report(a, b, s, cfg, allow_s_zero)
    raise ValidationError(f"unknown theorem id {theorem_id!r}; expected app2 or app3")


@dataclass(frozen=True)
class SwapCheck:
    lhs: complex
    rhs: complex
    rel_err: float
    passed: bool


def prop_swap_identity_check(
    inst: LocalProductInstance, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> SwapCheck:
    """Check G(a; b) = (-1)^(n+1) G(b; a) for an antisymmetric pairing.

    The identity needs an odd sheet; the identity sheet is the canonical
    linear representative (any scale factor cancels on both sides).
    """
    if inst.sheet.kind != "id":
        raise ValidationError("the swap identity check uses the identity sheet only")
    if not pairing_is_antisymmetric(inst.pairing, inst.ndim):
        raise PairingNotAntisymmetric(
            f"pairing {inst.pairing.kind!r} failed the basis antisymmetry probe"
        )
    lhs = local_product_direct_info(inst, cfg).value
    swapped = LocalProductInstance(inst.b, inst.a, inst.k, inst.sheet, inst.pairing)
    rhs = (-1.0) ** (inst.ndim + 1) * local_product_direct_info(swapped, cfg).value
    denom = max(abs(lhs), abs(rhs), 1e-300)
    rel_err = abs(lhs - rhs) / denom if (lhs != 0 or rhs != 0) else 0.0
    return SwapCheck(lhs, rhs, rel_err, rel_err <= 1e-6)


@dataclass(frozen=True)
class ModulusCheck:
    g_abs: float
    bound: float
    passed: bool


def modulus_bound_check(
    inst: LocalProductInstance, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ModulusCheck:
    """Triangle-inequality bound: |G| <= |f(<a,b>)| * vol * sup |kernel|.

    The sup is taken over a dense probe grid (32 nodes per dimension,
    corners included); the kernel modulus is monotone in the scaled radius
    and the radius is coordinatewise monotone, so the grid sup equals the
    true sup.  Limited to n <= 3 to keep the grid size bounded.
    """
    if inst.ndim > 3:
        raise ValidationError("modulus_bound_check supports n <= 3")
    inst.validate()
    info = local_product_direct_info(inst, cfg)
    g_abs = abs(info.value)

    p = inst.pairing_value()
    outer = abs(sheet_eval(inst.sheet, p))
    box = box_from_pair(inst.a, inst.b)
    vol = float(np.prod(box.widths))
    scale = scale_denominator(inst.a, inst.b, inst.k)

    axes = [
        np.linspace(min(lo, hi), max(lo, hi), _MODULUS_PROBE_NODES)
        for lo, hi in zip(box.lower, box.upper)
    ]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, inst.ndim)
    kernel = sheet_phase_kernel(inst.sheet, inst.k, scale)
    # the probe tolerates an infinite sup (an unbounded kernel makes the
    # bound trivially true), so it bypasses the finite-value check
    with np.errstate(all="ignore"):
        vals = backend.eval_kernel(grid, *_kernel_params(kernel))
    sup = float(np.max(np.abs(vals)))
    bound = outer * vol * sup
    return ModulusCheck(g_abs, bound, g_abs <= bound * (1.0 + 1e-6))
