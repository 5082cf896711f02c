"""Seeded instance generators and the named check suites.

Everything here is deterministic: a suite is a pure function of
(trials, seed, config).  The selftest runner reuses these suites and
writes one JSONL line per criterion, so two identical invocations emit
byte-identical logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import SYMPLECTIC2D, BoxDomain, box_from_pair, lp_point_norm
from .errors import SheetboxError
from .falsify import SearchConfig, check_with_retry, hunt_with_stats, replay, sample_instance
from .jsonio import dump_line
from .localprod import (
    LocalProductInstance,
    local_product_closed_info,
    local_product_direct_info,
    scale_denominator,
)
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    integrate_box,
    lp_kernel,
    mc_integrate,
)
from .sheets import (
    IDENTITY,
    LOG,
    RECIPROCAL,
    RECIPROCAL_LOG,
    Sheet,
    constant,
)
from .theorems import (
    APP2,
    APP3,
    HOLDS,
    INCONCLUSIVE,
    VIOLATED,
    modulus_bound_check,
    prop_swap_identity_check,
    thm_app2_report,
    thm_app3_report,
)

# keep exp(2*pi*r) comfortably inside float64 when a sheet composes the
# phase literally and k % 4 != 0
_MAX_PHASE_EXPONENT = 500.0

_PATH_SHEETS = (constant(1.0), LOG, IDENTITY, RECIPROCAL, RECIPROCAL_LOG)
_ALL_SHEETS = (constant(1.0), IDENTITY, RECIPROCAL, LOG, RECIPROCAL_LOG, Sheet("abs"))


def _phase_exponent(a: np.ndarray, b: np.ndarray, k: int) -> float:
    """2*pi times the largest scaled radius reachable inside the box."""
    corner = np.maximum(np.abs(a), np.abs(b))
    return 2.0 * math.pi * lp_point_norm(corner, k) / scale_denominator(a, b, k)


def _safe_instance(rng, n: int, k: int, sheet: Sheet, comp_range) -> LocalProductInstance:
    """Draw vectors until the instance satisfies the sheet's constraints and
    cannot overflow the composed phase."""
    lo, hi = comp_range
    while True:
        a = rng.uniform(lo, hi, n)
        b = rng.uniform(lo, hi, n)
        p = float(a @ b)
        if sheet.kind in ("log", "reciplog") and (p <= 0.0 or abs(p - 1.0) < 1e-9):
            continue
        if sheet.kind == "recip" and p == 0.0:
            continue
        if (
            sheet.kind in ("id", "recip", "abs")
            and k % 4 != 0
            and _phase_exponent(a, b, k) > _MAX_PHASE_EXPONENT
        ):
            continue
        return LocalProductInstance(a, b, k, sheet)


@dataclass
class SuiteResult:
    passed: int
    total: int
    worst: float  # suite-specific severity; smaller is better

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total


def path_equivalence_suite(
    trials: int, seed: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> SuiteResult:
    """Direct vs closed evaluation on random instances.

    Pass per instance: |direct - closed| <= max(1e-6 * |closed|, 1e-9).
    ``worst`` is the largest observed |direct - closed| / tolerance ratio.
    """
    rng = np.random.default_rng(seed)
    passed = 0
    worst = 0.0
    for i in range(trials):
        sheet = _PATH_SHEETS[i % len(_PATH_SHEETS)]
        n = (1, 2, 3)[i % 3]
        k = (4, 7, 8)[(i // 3) % 3]
        inst = _safe_instance(rng, n, k, sheet, (0.2, 2.0))
        direct = local_product_direct_info(inst, cfg).value
        closed = local_product_closed_info(inst, cfg).value
        tol = max(1e-6 * abs(closed), 1e-9)
        ratio = abs(direct - closed) / tol
        worst = max(worst, ratio)
        if ratio <= 1.0:
            passed += 1
    return SuiteResult(passed, trials, worst)


def swap_suite(trials: int, seed: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> SuiteResult:
    """Swap identity over symplectic pairings with the identity sheet."""
    rng = np.random.default_rng(seed)
    passed = 0
    worst = 0.0
    for i in range(trials):
        k = (4, 7)[i % 2]
        a = rng.uniform(0.5, 2.0, 2)
        b = rng.uniform(0.5, 2.0, 2)
        inst = LocalProductInstance(a, b, k, IDENTITY, SYMPLECTIC2D)
        check = prop_swap_identity_check(inst, cfg)
        worst = max(worst, check.rel_err)
        if check.passed:
            passed += 1
    return SuiteResult(passed, trials, worst)


def modulus_suite(trials: int, seed: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> SuiteResult:
    """Triangle-inequality bound across all sheets; worst is max |G|/bound."""
    rng = np.random.default_rng(seed)
    passed = 0
    worst = 0.0
    for i in range(trials):
        sheet = _ALL_SHEETS[i % len(_ALL_SHEETS)]
        n = (1, 2, 3)[i % 3]
        k = (4, 7, 8)[(i // 2) % 3]
        inst = _safe_instance(rng, n, k, sheet, (0.2, 2.0))
        check = modulus_bound_check(inst, cfg)
        if check.bound > 0:
            worst = max(worst, check.g_abs / check.bound)
        if check.passed:
            passed += 1
    return SuiteResult(passed, trials, worst)


@dataclass
class SweepResult:
    evaluated: int
    holds: int
    violated: int
    inconclusive: int


def in_regime_sweep(
    theorem_id: str,
    count: int,
    seed: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> SweepResult:
    """Evaluate ``count`` in-hypothesis instances with the pairing value in
    (1.1, 10) for app2 and (1.1, e] for app3."""
    hi = 10.0 if theorem_id == APP2 else math.e
    sc = SearchConfig(
        theorem_id=theorem_id,
        n_range=(1, 3),
        s_range=(1, 2),
        pairing_value_range=(1.1, hi),
        component_range=(0.2, 2.0),
        samples=count * 64,  # index head-room for rejected draws
        seed=seed,
    )
    holds = violated = inconclusive = 0
    index = 0
    done = 0
    while done < count and index < sc.samples:
        try:
            a, b, s = sample_instance(sc, index)
        except SheetboxError:
            index += 1
            continue
        report = check_with_retry(theorem_id, a, b, s, cfg)
        if report.verdict == HOLDS:
            holds += 1
        elif report.verdict == VIOLATED:
            violated += 1
        else:
            inconclusive += 1
        done += 1
        index += 1
    return SweepResult(done, holds, violated, inconclusive)


# --------------------------------------------------------------------------
# selftest: one callable per criterion, each returning (pass, detail dict)
# --------------------------------------------------------------------------

_SELFTEST_SEED = 0xC0FFEE

_SCALES = {
    "full": dict(path=100, sweep=200, hunt=10_000, swap=50, modulus=100),
    "quick": dict(path=30, sweep=50, hunt=2_000, swap=15, modulus=30),
}


def _crit_gl_exactness():
    box = BoxDomain([0.0], [2.0])
    cfg = QuadratureConfig(method="gl", nodes=2, max_levels=1)
    res = integrate_box(lambda pts: pts[:, 0] ** 3, box, cfg)
    err = abs(res.value - 4.0)
    return err <= 1e-12, {"value": res.value.real, "abs_err": err}


def _crit_quadrature_oracle():
    exact = (math.sqrt(2.0) + math.asinh(1.0)) / 3.0
    box = BoxDomain([0.0, 0.0], [1.0, 1.0])
    gl = integrate_box(
        lp_kernel(2), box, QuadratureConfig(method="gl", nodes=16, rel_tol=1e-10, max_levels=6)
    )
    gl_err = abs(gl.value - exact)
    mc = mc_integrate(lp_kernel(2), box, 100_000, _SELFTEST_SEED)
    mc_dev = abs(mc.value - exact)
    ok = gl_err <= 1e-8 and mc_dev <= 4.0 * mc.error_estimate
    return ok, {
        "exact": exact,
        "gl_abs_err": gl_err,
        "mc_abs_dev": mc_dev,
        "mc_stderr": mc.error_estimate,
    }


def _crit_path_equivalence(trials):
    r = path_equivalence_suite(trials, _SELFTEST_SEED)
    return r.all_passed, {"passed": r.passed, "total": r.total, "worst_ratio": r.worst}


def _crit_app2_analytic():
    rep = thm_app2_report([1.0], [2.0], 1)
    ok = (
        abs(rep.lhs - 1.5) <= 1e-9
        and abs(rep.rhs - 15.154) <= 1e-3
        and rep.verdict == HOLDS
    )
    return ok, {"lhs": rep.lhs, "rhs": rep.rhs, "verdict": rep.verdict}


def _crit_app3_analytic():
    rep = thm_app3_report([1.0], [2.0], 1)
    ok = (
        abs(rep.lhs - math.log(2.0)) <= 1e-9
        and abs(rep.rhs - 0.016946) <= 1e-6
        and rep.verdict == HOLDS
    )
    return ok, {"lhs": rep.lhs, "rhs": rep.rhs, "verdict": rep.verdict}


def _crit_sweep(count):
    out = {}
    ok = True
    for tid in (APP2, APP3):
        r = in_regime_sweep(tid, count, _SELFTEST_SEED)
        ok = ok and r.violated == 0 and r.inconclusive <= 0.02 * r.evaluated
        out[tid] = {
            "evaluated": r.evaluated,
            "violated": r.violated,
            "inconclusive": r.inconclusive,
        }
    return ok, out


def _crit_hunt(samples):
    out = {}
    ok = True
    for tid in (APP2, APP3):
        sc = SearchConfig(
            theorem_id=tid,
            n_range=(2, 2),
            s_range=(1, 1),
            pairing_value_range=(0.0, 0.1),
            component_range=(0.001, 2.0),
            samples=samples,
            seed=_SELFTEST_SEED,
        )
        res = hunt_with_stats(sc)
        replay_ok = False
        if res.records:
            first = res.records[0]
            rep = replay(first, tid)
            replay_ok = (
                rep.verdict == VIOLATED
                and abs(rep.lhs - first.lhs) <= 1e-12 * max(abs(first.lhs), 1.0)
                and abs(rep.rhs - first.rhs) <= 1e-12 * max(abs(first.rhs), 1.0)
            )
        ok = ok and res.violations >= 1 and replay_ok
        out[tid] = {
            "samples": res.samples,
            "violations": res.violations,
            "replay_ok": replay_ok,
        }
    return ok, out


def _crit_swap(trials):
    r = swap_suite(trials, _SELFTEST_SEED)
    return r.all_passed, {"passed": r.passed, "total": r.total, "worst_rel_err": r.worst}


def _crit_modulus(trials):
    r = modulus_suite(trials, _SELFTEST_SEED)
    return r.all_passed, {"passed": r.passed, "total": r.total, "worst_ratio": r.worst}


def selftest_run(stream, scale: str = "full") -> bool:
    """Run the self-check suite, streaming one JSONL line per criterion.

    Returns True when every criterion passed.  All seeds are fixed, so two
    runs at the same scale produce byte-identical output.
    """
    sizes = _SCALES[scale]
    criteria: list[tuple[int, str, Callable[[], tuple[bool, dict]]]] = [
        (1, "gl-cubic-exactness", _crit_gl_exactness),
        (2, "quadrature-oracle", _crit_quadrature_oracle),
        (3, "path-equivalence", lambda: _crit_path_equivalence(sizes["path"])),
        (4, "app2-analytic", _crit_app2_analytic),
        (5, "app3-analytic", _crit_app3_analytic),
        (6, "in-regime-sweep", lambda: _crit_sweep(sizes["sweep"])),
        (7, "counterexample-hunt", lambda: _crit_hunt(sizes["hunt"])),
        (8, "swap-identity", lambda: _crit_swap(sizes["swap"])),
        (9, "modulus-bound", lambda: _crit_modulus(sizes["modulus"])),
    ]
    all_ok = True
    for number, name, fn in criteria:
        ok, detail = fn()
        all_ok = all_ok and ok
        stream.write(
            dump_line(
                {
                    "type": "selftest",
                    "criterion": number,
                    "name": name,
                    "scale": scale,
                    "pass": bool(ok),
                    "detail": detail,
                }
            )
        )
    return all_ok
