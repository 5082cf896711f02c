"""Signed n-dimensional box integration of complex-valued kernels.

Two methods: tensor-product Gauss-Legendre with doubling refinement, and
seeded uniform Monte Carlo.  Nodes are always generated over the
unoriented box in a canonical ascending order; the product of the
per-dimension orientation signs is applied once at the end, so flipping a
dimension's bounds negates the result exactly.

Reductions run in a fixed order regardless of any internal parallelism:
node blocks are traversed in flat-index order and each block is reduced
with a single dot product, so results are reproducible bit-for-bit for a
given configuration and backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import backend
from ._kernels_np import (
    K_LP,
    K_RECIP_LP,
    K_SHEET_PHASE,
    K_UNIT,
    S_ABS,
    S_CONST,
    S_ID,
    S_LOG,
    S_RECIP,
    S_RECIPLOG,
)
from .core import BoxDomain, signed_volume
from .errors import NonFiniteIntegrand, ValidationError
from .sheets import Sheet, phase_power_i

_SHEET_CODES = {
    "const": S_CONST,
    "id": S_ID,
    "recip": S_RECIP,
    "log": S_LOG,
    "reciplog": S_RECIPLOG,
    "abs": S_ABS,
}

_MAX_DIM = 12
_MAX_GL_DIM = 8
_BLOCK = 1 << 16

DEFAULT_SEED = 0xC0FFEE


@dataclass(frozen=True)
class Kernel:
    """Structured integrand: unit, point norm, reciprocal point norm, or a
    sheet-composed phase x -> f(e(i^k * |x|_k / scale))."""

    kind: str  # "unit" | "lp" | "reciplp" | "sheetphase"
    k: int = 1
    sheet: Sheet | None = None
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("unit", "lp", "reciplp", "sheetphase"):
            raise ValidationError(f"unknown kernel kind {self.kind!r}")
        if self.kind != "unit" and self.k < 1:
            raise ValidationError("kernel order k must be >= 1")
        if self.kind == "sheetphase":
            if self.sheet is None:
                raise ValidationError("sheetphase kernel needs a sheet")
            if not (self.scale > 0):
                raise ValidationError("sheetphase kernel needs scale > 0")


def unit_kernel() -> Kernel:
    return Kernel("unit")


def lp_kernel(k: int) -> Kernel:
    return Kernel("lp", k)


def reciprocal_lp_kernel(k: int) -> Kernel:
    return Kernel("reciplp", k)


def sheet_phase_kernel(sheet: Sheet, k: int, scale: float) -> Kernel:
    return Kernel("sheetphase", k, sheet, float(scale))


@dataclass(frozen=True)
class QuadratureConfig:
    method: str = "auto"  # "auto" | "gl" | "mc"
    nodes: int = 16  # GL nodes per dimension at the first refinement level
    samples: int = 200_000  # MC sample count
    seed: int = DEFAULT_SEED
    rel_tol: float = 1e-8
    max_levels: int = 6

    def __post_init__(self):
        if self.method not in ("auto", "gl", "mc"):
            raise ValidationError(f"quadrature method must be gl|mc|auto, got {self.method!r}")
        if self.nodes < 2:
            raise ValidationError("nodes must be >= 2")
        if self.samples < 100:
            raise ValidationError("samples must be >= 100")
        if not (self.rel_tol > 0):
            raise ValidationError("rel_tol must be positive")
        if self.max_levels < 1:
            raise ValidationError("max_levels must be >= 1")

    def doubled(self) -> "QuadratureConfig":
        """Same configuration at twice the effort (nodes or samples)."""
        return replace(self, nodes=self.nodes * 2, samples=self.samples * 2)


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class IntegrationResult:
    value: complex
    error_estimate: float
    method_used: str
    evaluations: int
    converged: bool = True


@lru_cache(maxsize=64)
def _leg_nodes(m: int):
    t, w = np.polynomial.legendre.leggauss(m)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def _kernel_params(kernel: Kernel):
    if kernel.kind == "unit":
        return (K_UNIT, 1, 1.0, 0, 0.0, 0.0, 0.0, 0.0)
    if kernel.kind == "lp":
        return (K_LP, kernel.k, 1.0, 0, 0.0, 0.0, 0.0, 0.0)
    if kernel.kind == "reciplp":
        return (K_RECIP_LP, kernel.k, 1.0, 0, 0.0, 0.0, 0.0, 0.0)
    ik = phase_power_i(kernel.k)
    sheet = kernel.sheet
    return (
        K_SHEET_PHASE,
        kernel.k,
        kernel.scale,
        _SHEET_CODES[sheet.kind],
        sheet.value if sheet.kind == "const" else 0.0,
        0.0,
        ik.real,
        ik.imag,
    )


def _eval_values(kernel, pts: np.ndarray) -> np.ndarray:
    """Kernel values at an (N, n) block; accepts a Kernel or any vectorized
    callable pts -> values (the callable path always runs on numpy)."""
    if isinstance(kernel, Kernel):
        vals = backend.eval_kernel(pts, *_kernel_params(kernel))
    else:
        vals = np.asarray(kernel(pts), dtype=np.complex128)
        if vals.shape != (pts.shape[0],):
            raise ValidationError("callable kernel must return one value per point")
    if not np.all(np.isfinite(vals)):
        raise NonFiniteIntegrand("kernel produced a non-finite value inside the box")
    return vals


def _gl_pass(kernel, box: BoxDomain, m: int) -> tuple[complex, int]:
    """One tensor-product Gauss-Legendre pass with m nodes per dimension."""
    n = box.ndim
    t, w = _leg_nodes(m)
    lo = np.minimum(box.lower, box.upper)
    hi = np.maximum(box.lower, box.upper)
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    nodes = mid[:, None] + half[:, None] * t[None, :]  # (n, m) ascending
    wts = half[:, None] * w[None, :]
    sign = float(np.prod(box.signs))

    total = m ** n
    acc = 0.0 + 0.0j
    for start in range(0, total, _BLOCK):
        idx = np.arange(start, min(start + _BLOCK, total), dtype=np.int64)
        pts = np.empty((idx.size, n))
        wt = np.ones(idx.size)
        rem = idx
        for j in range(n - 1, -1, -1):  # last dimension varies fastest
            rem, ij = np.divmod(rem, m)
            pts[:, j] = nodes[j, ij]
            wt *= wts[j, ij]
        vals = _eval_values(kernel, pts)
        acc += complex(np.dot(wt, vals))
    return sign * acc, total


def integrate_box(kernel, box: BoxDomain, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegrationResult:
    """Signed iterated integral of the kernel over the oriented box.

    Gauss-Legendre doubles nodes per level until two successive values
    agree to rel_tol (relative to max(|value|, 1e-300)); running out of
    levels returns the best value flagged unconverged rather than raising.
    Monte Carlo is a single pass whose error estimate is the standard
    error of the mean scaled by |volume|.
    """
    n = box.ndim
    if n > _MAX_DIM:
        raise ValidationError(f"dimension {n} exceeds the supported maximum {_MAX_DIM}")
    if box.is_degenerate():
        return IntegrationResult(0.0 + 0.0j, 0.0, "degenerate-box", 1, True)

    method = cfg.method
    if method == "auto":
        method = "gl" if n <= 6 else "mc"
    if method == "mc":
        return mc_integrate(kernel, box, cfg.samples, cfg.seed)
    if n > _MAX_GL_DIM:
        raise ValidationError(
            f"Gauss-Legendre is limited to n <= {_MAX_GL_DIM} (tensor node count explodes); use mc"
        )

    m = cfg.nodes
    evals = 0
    prev = None
    value = 0.0 + 0.0j
    diff = 0.0
    for level in range(1, cfg.max_levels + 1):
        value, ne = _gl_pass(kernel, box, m)
        evals += ne
        if prev is not None:
            diff = abs(value - prev)
            if diff <= cfg.rel_tol * max(abs(value), 1e-300):
                return IntegrationResult(
                    value, diff, f"gl(nodes={m},levels={level})", evals, True
                )
        prev = value
        m *= 2
    if cfg.max_levels == 1:
        # single pass requested: no refinement, no disagreement to report
        return IntegrationResult(value, 0.0, f"gl(nodes={cfg.nodes},levels=1)", evals, True)
    # budget exhausted: hand back the finest value, flagged
    return IntegrationResult(
        value, diff, f"gl(nodes={m // 2},levels={cfg.max_levels},budget-exceeded)", evals, False
    )


def refine_integrate(
    kernel,
    box: BoxDomain,
    rel_tol: float,
    max_levels: int,
    nodes: int = 16,
) -> IntegrationResult:
    """Gauss-Legendre with explicit refinement parameters."""
    cfg = QuadratureConfig(method="gl", nodes=nodes, rel_tol=rel_tol, max_levels=max_levels)
    return integrate_box(kernel, box, cfg)


def mc_integrate(kernel, box: BoxDomain, samples: int, seed: int) -> IntegrationResult:
    """Seeded uniform Monte Carlo over the unoriented box, times signed volume.

    Sample i is always row i of one uniform draw, so results are
    reproducible for a fixed (seed, samples).  Draws landing exactly on
    the origin (the only singular point of the reciprocal norm kernels)
    are redrawn.
    """
    if samples < 100:
        raise ValidationError("samples must be >= 100")
    n = box.ndim
    if box.is_degenerate():
        return IntegrationResult(0.0 + 0.0j, 0.0, "degenerate-box", 1, True)
    rng = np.random.default_rng(seed)
    lo = np.minimum(box.lower, box.upper)
    hi = np.maximum(box.lower, box.upper)
    pts = rng.uniform(lo, hi, size=(samples, n))
    zero = np.all(pts == 0.0, axis=1)
    while np.any(zero):
        pts[zero] = rng.uniform(lo, hi, size=(int(zero.sum()), n))
        zero = np.all(pts == 0.0, axis=1)
    vals = _eval_values(kernel, pts)
    sv = signed_volume(box)
    mean = complex(np.mean(vals))
    var = float(np.var(vals, ddof=1))  # total variance of re and im parts
    se = math.sqrt(var / samples)
    return IntegrationResult(
        mean * sv, se * abs(sv), f"mc(samples={samples},seed={seed})", samples, True
    )
