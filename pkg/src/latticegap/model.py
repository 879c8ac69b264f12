"""Nine-coordinate integer encoding of a simplex pair and its invariants.

A pair made of two segments, or of a point and a triangle, in [0, k]^3 is
encoded by the two direction columns of its vertex-difference matrix plus
the base offset between the two bodies.  Coordinates 1-3 hold the first
column, 4-6 the second, 7-9 the offset; every entry lies in [-k, k].

Two scalar forms drive all certificates: gram_det, the determinant of the
2x2 Gram matrix of the direction columns, and offset_det, the negated 3x3
determinant of the columns aligned with the offset.  The squared distance
between the affine hulls of an encoded pair is offset_det^2 / gram_det.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import LatticeSimplex, vsub
from .intpoly import IntPoly

# Squared-gap denominator of the extremal pair, as a polynomial in k:
# 8k^4 - 24k^3 + 40k^2 - 28k + 10 = 2(2k^2-4k+5)(2k^2-2k+1).
EXTREMAL_GAP_DENOMINATOR = IntPoly((10, -28, 40, -24, 8))

# The single cube size where exhaustive search beats the closed form.
FORMULA_EXCEPTION_K = 3


def extremal_gap_squared(k: int) -> Fraction:
    """Closed-form squared gap of the extremal pair at cube size k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return Fraction(1, EXTREMAL_GAP_DENOMINATOR(k))


@dataclass(frozen=True)
class PairEncoding:
    """Nine integer coordinates bounded by k, plus the cube size itself."""

    coords: tuple
    k: int

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if len(coords) != 9:
            raise ValueError("an encoding has exactly 9 coordinates")
        for c in coords:
            if not isinstance(c, int):
                raise ValueError("coordinates must be integers")
            if abs(c) > self.k:
                raise ValueError(f"coordinate {c} outside [-{self.k}, {self.k}]")


def _offset_det_expr(c):
    x1, x2, x3, x4, x5, x6, x7, x8, x9 = c
    return (x1 * (x6 * x8 - x5 * x9)
            + x2 * (x4 * x9 - x6 * x7)
            + x3 * (x5 * x7 - x4 * x8))


def _gram_det_expr(c):
    x1, x2, x3, x4, x5, x6, _, _, _ = c
    m1 = x1 * x5 - x2 * x4
    m2 = x1 * x6 - x3 * x4
    m3 = x2 * x6 - x3 * x5
    return m1 * m1 + m2 * m2 + m3 * m3


def _corner_sum_expr(c):
    x1, x2, x3, x4, x5, x6, _, _, _ = c
    return -x1 + x2 + x3 + x4 + x5 + x6


def offset_det(x: PairEncoding) -> int:
    """Negated determinant of [columns | offset]; couples offset to columns."""
    return _offset_det_expr(x.coords)


def gram_det(x: PairEncoding) -> int:
    """Determinant of the 2x2 Gram matrix of the two direction columns.

    Zero exactly when the columns are linearly dependent.
    """
    return _gram_det_expr(x.coords)


def corner_sum(x: PairEncoding) -> int:
    """Signed coordinate sum -x1+x2+...+x6; larger means closer to the
    corner configuration that the extremal pair occupies."""
    return _corner_sum_expr(x.coords)


def sq_dist_affine_hulls(x: PairEncoding) -> Fraction:
    """Squared distance between the affine hulls of the encoded pair."""
    g = gram_det(x)
    if g == 0:
        raise ValueError("affine-hull distance undefined: dependent columns")
    f = offset_det(x)
    return Fraction(f * f, g)


def in_envelope(x: PairEncoding) -> bool:
    """Coordinate bounds satisfied by every sign-normalized encoding of a
    disjoint pair: x1 <= 0, x2..x6 >= 0, and per axis i the three sums
    |x_i - x_{i+6}|, |x_{i+3} + x_{i+6}|, |x_i - x_{i+3} - x_{i+6}| stay
    within k."""
    c = x.coords
    k = x.k
    if c[0] > 0 or any(c[i] < 0 for i in range(1, 6)):
        return False
    for i in range(3):
        a, b, off = c[i], c[i + 3], c[i + 6]
        if abs(a - off) > k or abs(b + off) > k or abs(a - b - off) > k:
            return False
    return True


def in_monotone_region(x: PairEncoding) -> bool:
    """Sign-normalized encodings with no column pair pinned to both walls:
    for no axis i are |x_i| and |x_{i+3}| simultaneously equal to k.  On
    this region the Gram determinant only grows when the configuration is
    pushed toward the corner."""
    c = x.coords
    k = x.k
    if c[0] > 0 or any(c[i] < 0 for i in range(1, 6)):
        return False
    for i in range(3):
        if abs(c[i]) == k and abs(c[i + 3]) == k:
            return False
    return True


def encode_pair(first: LatticeSimplex, second: LatticeSimplex) -> PairEncoding:
    """Encode a segment pair or a (point, triangle) pair in [0, k]^3.

    For two segments the columns are the two direction vectors; for a point
    and a triangle the columns are the triangle's two edge vectors and the
    point must be given first.  The offset always points from the first
    body's base vertex to the second's.
    """
    if first.k != second.k:
        raise ValueError("simplices must share the same cube size")
    if first.dim != 3 or second.dim != 3:
        raise ValueError("the encoding is defined in dimension 3")
    nv1, nv2 = len(first.vertices), len(second.vertices)
    if (nv1 - 1) + (nv2 - 1) != 2:
        raise ValueError("simplex dimensions must sum to 2")
    if nv1 == 3:
        raise ValueError("give the point first and the triangle second")
    v1, v2 = first.vertices, second.vertices
    if nv1 == 2:
        col1 = vsub(v1[1], v1[0])
        col2 = vsub(v2[1], v2[0])
    else:
        col1 = vsub(v2[1], v2[0])
        col2 = vsub(v2[2], v2[0])
    off = vsub(v2[0], v1[0])
    return PairEncoding(col1 + col2 + off, first.k)


# --- the corner re-parameterization -------------------------------------

def corner_map(pre, k: int) -> PairEncoding:
    """Translate a bounded offset pattern into an encoding anchored at the
    cube corner at size k: coordinates 1 and 7 map t -> t - k, coordinates
    2-6 map t -> k - t, coordinates 8 and 9 are kept."""
    pre = tuple(pre)
    if len(pre) != 9:
        raise ValueError("need 9 coordinates")
    out = []
    for i, t in enumerate(pre, start=1):
        if i in (1, 7):
            out.append(t - k)
        elif i <= 6:
            out.append(k - t)
        else:
            out.append(t)
    return PairEncoding(tuple(out), k)


def corner_map_polynomials(pre) -> tuple:
    """offset_det and gram_det of the corner-mapped pattern, as exact
    polynomials in the cube size k."""
    pre = tuple(pre)
    if len(pre) != 9:
        raise ValueError("need 9 coordinates")
    coords = []
    for i, t in enumerate(pre, start=1):
        if i in (1, 7):
            coords.append(IntPoly((t, -1)))
        elif i <= 6:
            coords.append(IntPoly((-t, 1)))
        else:
            coords.append(IntPoly((t,)))
    return _offset_det_expr(coords), _gram_det_expr(coords)
