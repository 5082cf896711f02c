"""Constrained random search for inequality violations.

Instances are drawn deterministically: sample ``index`` under seed ``s``
always uses the generator seeded with ``s ^ index``, so hunts are
reproducible and order-independent no matter how samples are scheduled.
Each candidate draws both vectors componentwise, then rescales b along its
own direction to land the pairing value inside the requested window;
candidates whose rescaled components leave the component range are
rejected and redrawn.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintUnsatisfiable, SheetboxError, ValidationError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .theorems import (
    APP2,
    APP3,
    INCONCLUSIVE,
    THEOREM_IDS,
    VIOLATED,
    TheoremReport,
    theorem_report,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    theorem_id: str
    n_range: tuple[int, int] = (2, 2)
    s_range: tuple[int, int] = (1, 1)
    pairing_value_range: tuple[float, float] = (0.0, 0.1)
    component_range: tuple[float, float] = (0.001, 2.0)
    samples: int = 10_000
    seed: int = 0xC0FFEE
    max_attempts_per_sample: int = 64

    def __post_init__(self):
        if self.theorem_id not in THEOREM_IDS:
            raise ValidationError(f"unknown theorem id {self.theorem_id!r}")
        for name in ("n_range", "s_range", "pairing_value_range", "component_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValidationError(f"{name} is empty: ({lo}, {hi})")
        if self.component_range[0] <= 0:
            raise ValidationError("component_range must be positive")
        if self.samples < 0:
            raise ValidationError("samples must be >= 0")
        if self.max_attempts_per_sample < 1:
            raise ValidationError("max_attempts_per_sample must be >= 1")

    def effective_pairing_range(self) -> tuple[float, float]:
        """The requested window intersected with the theorem's hypothesis."""
        lo, hi = self.pairing_value_range
        lo = max(lo, 0.0)
        if self.theorem_id == APP3:
            hi = min(hi, math.e)
        if lo >= hi:
            raise ValidationError(
                "pairing_value_range does not intersect the theorem's hypothesis"
            )
        return lo, hi


@dataclass(frozen=True, eq=False)
class ViolationRecord:
    a: np.ndarray
    b: np.ndarray
    s: int
    k: int
    lhs: float
    rhs: float
    margin: float
    lhs_error: float
    sample_index: int


@dataclass
class HuntOutcome:
    records: list[ViolationRecord] = field(default_factory=list)
    samples: int = 0
    evaluated: int = 0
    inconclusive: int = 0
    skipped: int = 0

    @property
    def violations(self) -> int:
        return len(self.records)


def sample_instance(sc: SearchConfig, index: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Draw the instance for one sample index; deterministic in (seed, index)."""
    if index >= sc.samples:
        raise ValidationError(f"index {index} out of range for {sc.samples} samples")
    rng = np.random.default_rng(sc.seed ^ index)
    c_lo, c_hi = sc.component_range
    p_lo, p_hi = sc.effective_pairing_range()
    for _ in range(sc.max_attempts_per_sample):
        n = int(rng.integers(sc.n_range[0], sc.n_range[1] + 1))
        s = int(rng.integers(sc.s_range[0], sc.s_range[1] + 1))
        a = rng.uniform(c_lo, c_hi, n)
        b_raw = rng.uniform(c_lo, c_hi, n)
        target = rng.uniform(p_lo, p_hi)
        raw = float(a @ b_raw)
        if raw <= 0.0 or target <= 0.0:
            continue
        b = (target / raw) * b_raw
        if np.any(b < c_lo) or np.any(b > c_hi):
            continue
        p = float(a @ b)
        # hard hypothesis screen: rounding in the rescale must not leak
        # an out-of-hypothesis instance into the hunt
        if p <= 0.0 or p == 1.0:
            continue
        if sc.theorem_id == APP3 and p > math.e:
            continue
        return a, b, s
    raise ConstraintUnsatisfiable(
        f"no instance satisfied pairing window ({p_lo}, {p_hi}) with components in "
        f"[{c_lo}, {c_hi}] after {sc.max_attempts_per_sample} attempts"
    )


def check_with_retry(
    theorem_id: str, a, b, s: int, cfg: QuadratureConfig
) -> TheoremReport:
    """One verdict the way the hunt computes it: an Inconclusive result gets
    a single doubled-effort retry before it stands."""
    report = theorem_report(theorem_id, a, b, s, cfg)
    if report.verdict == INCONCLUSIVE:
        report = theorem_report(theorem_id, a, b, s, cfg.doubled())
    return report


def hunt_with_stats(sc: SearchConfig, cfg: QuadratureConfig = DEFAULT_CONFIG) -> HuntOutcome:
    """Evaluate every sample index and collect the Violated instances.

    Per-sample failures (unsatisfiable constraints, numerical errors) are
    logged and skipped; they never abort the hunt.  Output order follows
    the sample index, so any internal parallelism is unobservable.
    """
    out = HuntOutcome(samples=sc.samples)
    for index in range(sc.samples):
        try:
            a, b, s = sample_instance(sc, index)
        except ConstraintUnsatisfiable as exc:
            log.debug("sample %d skipped: %s", index, exc)
            out.skipped += 1
            continue
        try:
            report = check_with_retry(sc.theorem_id, a, b, s, cfg)
        except SheetboxError as exc:
            log.debug("sample %d failed: %s", index, exc)
            out.skipped += 1
            continue
        out.evaluated += 1
        if report.verdict == INCONCLUSIVE:
            out.inconclusive += 1
        elif report.verdict == VIOLATED:
            out.records.append(
                ViolationRecord(
                    a=a, b=b, s=s, k=report.k,
                    lhs=report.lhs, rhs=report.rhs, margin=report.margin,
                    lhs_error=report.lhs_error, sample_index=index,
                )
            )
    return out


def hunt(sc: SearchConfig, cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[ViolationRecord]:
    return hunt_with_stats(sc, cfg).records


def replay(record: ViolationRecord, theorem_id: str, cfg: QuadratureConfig = DEFAULT_CONFIG) -> TheoremReport:
    """Recompute a record's verdict exactly the way the hunt did."""
    return check_with_retry(theorem_id, record.a, record.b, record.s, cfg)
