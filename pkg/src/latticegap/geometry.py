"""Exact distances between lattice points, segments, and triangles in a cube.

All coordinates are integers in [0, k]^d and every squared distance is an
exact Fraction, so a distance is zero precisely when the two bodies meet.
d = 2 is supported only for point-segment pairs; everything else lives in
d = 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vcross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _gram_det(edges) -> int:
    """Determinant of the Gram matrix of edge vectors; 0 iff dependent."""
    n = len(edges)
    if n == 1:
        return vdot(edges[0], edges[0])
    g11 = vdot(edges[0], edges[0])
    g12 = vdot(edges[0], edges[1])
    g22 = vdot(edges[1], edges[1])
    return g11 * g22 - g12 * g12


@dataclass(frozen=True)
class LatticeSimplex:
    """A point, segment, or triangle with integer vertices in [0, k]^d.

    Vertices must be pairwise distinct and affinely independent; order is
    preserved as given.
    """

    vertices: tuple
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not 1 <= len(verts) <= 3:
            raise ValueError("a simplex here has 1 to 3 vertices")
        dims = {len(v) for v in verts}
        if dims not in ({2}, {3}):
            raise ValueError("vertices must share dimension 2 or 3")
        for v in verts:
            for c in v:
                if not isinstance(c, int):
                    raise ValueError("vertex coordinates must be integers")
                if not 0 <= c <= self.k:
                    raise ValueError(f"coordinate {c} outside [0, {self.k}]")
        if len(set(verts)) != len(verts):
            raise ValueError("vertices must be pairwise distinct")
        if len(verts) > 1:
            edges = [vsub(v, verts[0]) for v in verts[1:]]
            if len(verts) == 3 and len(verts[0]) == 2:
                raise ValueError("triangles are only supported in dimension 3")
            if _gram_det(edges) == 0:
                raise ValueError("vertices must be affinely independent")

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def simplex_dim(self) -> int:
        return len(self.vertices) - 1


def sq_dist_point_point(p, q) -> Fraction:
    w = vsub(p, q)
    return Fraction(vdot(w, w))


def sq_dist_point_segment(p, a, b) -> Fraction:
    """Exact squared distance from p to segment [a, b] (any dimension).

    The unconstrained minimizer t = <p-a, b-a> / |b-a|^2 is clamped to
    [0, 1]; clamped cases reduce to endpoint distances.
    """
    u = vsub(b, a)
    w = vsub(p, a)
    uu = vdot(u, u)
    dp = vdot(w, u)
    if dp <= 0:
        return Fraction(vdot(w, w))
    if dp >= uu:
        wb = vsub(p, b)
        return Fraction(vdot(wb, wb))
    return Fraction(vdot(w, w) * uu - dp * dp, uu)


def sq_dist_segment_segment(a1, b1, a2, b2) -> Fraction:
    """Exact squared distance between segments [a1, b1] and [a2, b2].

    Solve the 2x2 normal system for the closest points of the two lines;
    if the system is singular (parallel lines) or the solution leaves the
    unit square, the minimum sits on the boundary, i.e. among the four
    point-segment subproblems.
    """
    u = vsub(b1, a1)
    v = vsub(b2, a2)
    w = vsub(a2, a1)
    uu = vdot(u, u)
    vv = vdot(v, v)
    uv = vdot(u, v)
    e = vdot(u, w)
    f = vdot(v, w)
    den = uu * vv - uv * uv
    if den > 0:
        tn = vv * e - uv * f
        sn = uv * e - uu * f
        if 0 <= tn <= den and 0 <= sn <= den:
            ww = vdot(w, w)
            return Fraction(ww * den - e * tn + f * sn, den)
    return min(
        sq_dist_point_segment(a1, a2, b2),
        sq_dist_point_segment(b1, a2, b2),
        sq_dist_point_segment(a2, a1, b1),
        sq_dist_point_segment(b2, a1, b1),
    )


def sq_dist_point_triangle(p, v0, v1, v2) -> Fraction:
    """Exact squared distance from p to triangle (v0, v1, v2) in 3-space.

    Project onto the triangle's plane by solving the 2x2 Gram system; if
    the projection's barycentric coordinates are all non-negative the plane
    distance is the answer, otherwise the minimum is on one of the edges.
    """
    e1 = vsub(v1, v0)
    e2 = vsub(v2, v0)
    c11 = vdot(e1, e1)
    c12 = vdot(e1, e2)
    c22 = vdot(e2, e2)
    den = c11 * c22 - c12 * c12
    if den == 0:
        raise ValueError("degenerate triangle")
    w = vsub(p, v0)
    d1 = vdot(w, e1)
    d2 = vdot(w, e2)
    an = c22 * d1 - c12 * d2
    bn = c11 * d2 - c12 * d1
    if an >= 0 and bn >= 0 and an + bn <= den:
        ww = vdot(w, w)
        return Fraction(ww * den - d1 * an - d2 * bn, den)
    return min(
        sq_dist_point_segment(p, v0, v1),
        sq_dist_point_segment(p, v0, v2),
        sq_dist_point_segment(p, v1, v2),
    )


def sq_distance(s1: LatticeSimplex, s2: LatticeSimplex) -> Fraction:
    """Exact squared distance between two simplices of supported shapes."""
    if s1.k != s2.k or s1.dim != s2.dim:
        raise ValueError("simplices must share the same cube")
    shape = tuple(sorted((len(s1.vertices), len(s2.vertices))))
    if len(s1.vertices) > len(s2.vertices):
        s1, s2 = s2, s1
    v1, v2 = s1.vertices, s2.vertices
    if shape == (1, 1):
        return sq_dist_point_point(v1[0], v2[0])
    if shape == (1, 2):
        return sq_dist_point_segment(v1[0], v2[0], v2[1])
    if shape == (2, 2):
        return sq_dist_segment_segment(v1[0], v1[1], v2[0], v2[1])
    if shape == (1, 3):
        return sq_dist_point_triangle(v1[0], v2[0], v2[1], v2[2])
    raise ValueError(f"unsupported simplex pair shape {shape}")


# --- symmetries of the cube [0, k]^d ------------------------------------

def cube_symmetries(d: int) -> tuple:
    """All 2^d * d! signed coordinate permutations of the cube [0, k]^d.

    Each element is (perm, flips): output coordinate i takes input
    coordinate perm[i], reflected to k - x when flips[i] is set.
    """
    return tuple(product(permutations(range(d)), product((False, True), repeat=d)))


def apply_cube_symmetry(point, sym, k: int):
    perm, flips = sym
    return tuple(k - point[p] if f else point[p] for p, f in zip(perm, flips))


def extremal_pair(k: int):
    """The segment pair conjectured closest for each cube size k >= 2.

    Its squared distance is 1 / (2(2k^2-4k+5)(2k^2-2k+1)); see the model
    module for the matching polynomial.
    """
    if k < 2:
        raise ValueError("the extremal pair needs k >= 2")
    p = LatticeSimplex(((k, 2, 1), (0, k - 1, k)), k)
    q = LatticeSimplex(((0, 0, 0), (k - 1, k, k)), k)
    return p, q
