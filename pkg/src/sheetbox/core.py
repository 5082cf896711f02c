"""Vectors, pairings, box domains, and the unit-phase map.

Vectors are plain 1-D float64 numpy arrays.  Boxes store the absolute
values of the two endpoint vectors; the integral from ``lower`` to
``upper`` is signed, with a per-dimension orientation sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeBaseOddRoot,
    Overflow,
    ValidationError,
)

TWO_PI = 2.0 * math.pi


def as_vector(x) -> np.ndarray:
    """Coerce to a finite 1-D float64 array of length >= 1."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1 or v.size < 1:
        raise ValidationError(f"expected a 1-D vector of length >= 1, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValidationError("vector components must be finite")
    return v


@dataclass(frozen=True, eq=False)
class Pairing:
    """Bilinear form standing in for the inner product.

    ``dot`` is the standard dot product, ``symplectic2d`` the antisymmetric
    form a1*b2 - a2*b1 (valid for n = 2 only), and ``bilinear`` an arbitrary
    square matrix M giving a^T M b.
    """

    kind: str
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("dot", "symplectic2d", "bilinear"):
            raise ValidationError(f"unknown pairing kind {self.kind!r}")
        if self.kind == "bilinear":
            m = np.asarray(self.matrix, dtype=np.float64)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValidationError("bilinear pairing needs a square matrix")
            if not np.all(np.isfinite(m)):
                raise ValidationError("bilinear pairing matrix must be finite")
            object.__setattr__(self, "matrix", m)


DOT = Pairing("dot")
SYMPLECTIC2D = Pairing("symplectic2d")


def bilinear(matrix) -> Pairing:
    return Pairing("bilinear", np.asarray(matrix, dtype=np.float64))


def pairing_eval(pairing: Pairing, a, b) -> float:
    """Evaluate the pairing; raises DimensionMismatch on incompatible shapes."""
    a = as_vector(a)
    b = as_vector(b)
    if a.size != b.size:
        raise DimensionMismatch(f"vector lengths differ: {a.size} vs {b.size}")
    if pairing.kind == "dot":
        return float(a @ b)
    if pairing.kind == "symplectic2d":
        if a.size != 2:
            raise DimensionMismatch("symplectic2d pairing is only defined for n = 2")
        return float(a[0] * b[1] - a[1] * b[0])
    m = pairing.matrix
    if m.shape[0] != a.size:
        raise DimensionMismatch(
            f"bilinear matrix is {m.shape[0]}x{m.shape[1]} but vectors have length {a.size}"
        )
    return float(a @ m @ b)


def pairing_is_antisymmetric(pairing: Pairing, n: int) -> bool:
    """Probe the standard basis: <e_i, e_j> must equal -<e_j, e_i> for all i, j."""
    basis = np.eye(n)
    for i in range(n):
        for j in range(i, n):
            try:
                fwd = pairing_eval(pairing, basis[i], basis[j])
                rev = pairing_eval(pairing, basis[j], basis[i])
            except DimensionMismatch:
                return False
            if fwd != -rev:
                return False
    return True


def euclidean_norm(a) -> float:
    return float(np.linalg.norm(as_vector(a)))


def lp_point_norm(x, k: int) -> float:
    """(sum_j x_j^k)^(1/k).  Box points are componentwise nonnegative, which
    keeps the odd-k root real; a negative power sum means the caller strayed."""
    x = as_vector(x)
    if k < 1:
        raise ValidationError("k must be >= 1")
    s = float(np.sum(x ** k))
    if s < 0.0:
        raise NegativeBaseOddRoot(f"sum of {k}-th powers is negative ({s})")
    return s ** (1.0 / k)


@dataclass(frozen=True, eq=False)
class BoxDomain:
    """Oriented integration region: from lower_j to upper_j in each dimension.

    Both bound arrays hold absolute values (componentwise >= 0); a dimension
    with upper < lower is traversed in reverse and contributes a -1 sign.
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = as_vector(self.lower)
        up = as_vector(self.upper)
        if lo.size != up.size:
            raise DimensionMismatch(f"bound lengths differ: {lo.size} vs {up.size}")
        if np.any(lo < 0) or np.any(up < 0):
            raise ValidationError("box bounds are absolute values and must be >= 0")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)

    @property
    def ndim(self) -> int:
        return self.lower.size

    @property
    def signs(self) -> np.ndarray:
        """Orientation sign per dimension; zero-width dimensions carry +1."""
        return np.where(self.upper >= self.lower, 1.0, -1.0)

    @property
    def widths(self) -> np.ndarray:
        return np.abs(self.upper - self.lower)

    def is_degenerate(self) -> bool:
        return bool(np.any(self.upper == self.lower))

    def unoriented(self) -> "BoxDomain":
        return BoxDomain(np.minimum(self.lower, self.upper), np.maximum(self.lower, self.upper))


def box_from_pair(a, b) -> BoxDomain:
    """Box spanned by the componentwise absolute values of the two vectors."""
    a = as_vector(a)
    b = as_vector(b)
    if a.size != b.size:
        raise DimensionMismatch(f"vector lengths differ: {a.size} vs {b.size}")
    return BoxDomain(np.abs(a), np.abs(b))


def signed_volume(box: BoxDomain) -> float:
    """prod_j (upper_j - lower_j); negative when an odd number of dims reverse."""
    return float(np.prod(box.upper - box.lower))


def unit_phase_e(z) -> complex:
    """e(z) = exp(2*pi*i*z).  Unit modulus for real z; e(-i*r) = exp(2*pi*r)."""
    z = complex(z)
    try:
        mag = math.exp(-TWO_PI * z.imag)
    except OverflowError:
        raise Overflow(f"exp(2*pi*{-z.imag}) is not representable") from None
    ang = TWO_PI * z.real
    return complex(mag * math.cos(ang), mag * math.sin(ang))
