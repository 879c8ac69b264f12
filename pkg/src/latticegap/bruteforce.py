"""Exhaustive ground truth for the minimal gap at small cube sizes.

The minimal positive distance between disjoint lattice polytopes in the
cube is always attained by a pair of simplices whose dimensions sum to one
less than the ambient dimension, so the scan covers point-segment pairs in
the square and segment-segment plus point-triangle pairs in the cube.

The inner loops run on plain machine integers: every pairwise squared
distance is a ratio of two non-negative integers, minima are maintained by
cross-multiplied comparison, and Fractions only appear in the final result.
Pairs at distance zero intersect and are skipped.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, gcd

from .certificate import Certificate
from .certify import canonical_pair_key, canonicalize_pair
from .geometry import LatticeSimplex, apply_cube_symmetry, cube_symmetries, sq_distance
from .model import FORMULA_EXCEPTION_K, extremal_gap_squared

POINT_SEGMENT = "point-segment"
SEGMENT_SEGMENT = "segment-segment"
POINT_TRIANGLE = "point-triangle"

# Unreduced scans stay under this for k <= 3 in the cube; size 4 needs
# either symmetry reduction or an explicit budget.
DEFAULT_BUDGET = 8_000_000


class BudgetExceededError(Exception):
    """The scan would attempt more pairs than the budget allows."""

    def __init__(self, required: int, budget: int):
        super().__init__(f"scan needs {required} pairs, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class EpsResult:
    """Exact minimal positive squared distance with its attaining pairs.

    Witnesses are canonical simplex pairs, deduplicated under the full
    pair-symmetry group and sorted by canonical key.
    """

    d: int
    k: int
    eps_squared: Fraction
    witnesses: tuple
    classes: tuple
    pairs_scanned: int

    def __post_init__(self):
        if self.eps_squared <= 0:
            raise ValueError("minimal squared distance must be positive")


def permitted_classes(d: int) -> tuple:
    if d == 2:
        return (POINT_SEGMENT,)
    if d == 3:
        return (SEGMENT_SEGMENT, POINT_TRIANGLE)
    raise ValueError("only dimensions 2 and 3 are supported")


# --- cached entity tables -------------------------------------------------

@lru_cache(maxsize=None)
def _points(d: int, k: int) -> tuple:
    return tuple(product(range(k + 1), repeat=d))


@lru_cache(maxsize=None)
def _segment_records(d: int, k: int) -> tuple:
    """Flat per-segment tuples: endpoints a < b, direction u = b - a, the
    squared length uu, and the bounding box, all as plain ints."""
    pts = _points(d, k)
    out = []
    for a, b in combinations(pts, 2):
        u = tuple(b[i] - a[i] for i in range(d))
        uu = sum(c * c for c in u)
        lo = tuple(min(a[i], b[i]) for i in range(d))
        hi = tuple(max(a[i], b[i]) for i in range(d))
        out.append(a + b + u + (uu,) + lo + hi)
    return tuple(out)


@lru_cache(maxsize=None)
def _triangle_records(k: int) -> tuple:
    """Flat per-triangle tuples for the cube: base vertex v0, edge vectors
    e1 = v1 - v0 and e2 = v2 - v0, their Gram entries and determinant, the
    bounding box, then (anchor, direction, squared length) for each of the
    three boundary edges.  Collinear triples are excluded."""
    pts = _points(3, k)
    out = []
    for pa, pb, pc in combinations(pts, 3):
        e1 = (pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2])
        e2 = (pc[0] - pa[0], pc[1] - pa[1], pc[2] - pa[2])
        cx = e1[1] * e2[2] - e1[2] * e2[1]
        cy = e1[2] * e2[0] - e1[0] * e2[2]
        cz = e1[0] * e2[1] - e1[1] * e2[0]
        if cx == 0 and cy == 0 and cz == 0:
            continue
        c11 = sum(c * c for c in e1)
        c22 = sum(c * c for c in e2)
        c12 = sum(e1[i] * e2[i] for i in range(3))
        den = cx * cx + cy * cy + cz * cz  # equals c11*c22 - c12*c12
        lo = tuple(min(pa[i], pb[i], pc[i]) for i in range(3))
        hi = tuple(max(pa[i], pb[i], pc[i]) for i in range(3))
        edges = ()
        for va, vb in ((pa, pb), (pa, pc), (pb, pc)):
            u = (vb[0] - va[0], vb[1] - va[1], vb[2] - va[2])
            edges += va + u + (sum(c * c for c in u),)
        out.append(pa + e1 + e2 + (c11, c12, c22, den) + lo + hi + edges)
    assert len(out) == triangle_count(k)
    return tuple(out)


@lru_cache(maxsize=None)
def collinear_triple_count(k: int) -> int:
    """Collinear triples of lattice points in the cube, counted line by
    line: each maximal lattice line with m points holds comb(m, 3)."""
    pts = _points(3, k)
    inside = frozenset(pts)
    total = 0
    for v in product(range(-k, k + 1), repeat=3):
        if v == (0, 0, 0):
            continue
        nz = next(c for c in v if c != 0)
        if nz < 0:  # one direction per line
            continue
        if gcd(gcd(abs(v[0]), abs(v[1])), abs(v[2])) != 1:
            continue
        for p in pts:
            prev = (p[0] - v[0], p[1] - v[1], p[2] - v[2])
            if prev in inside:
                continue  # not the start of its line
            m = 0
            q = p
            while q in inside:
                m += 1
                q = (q[0] + v[0], q[1] + v[1], q[2] + v[2])
            if m >= 3:
                total += comb(m, 3)
    return total


def triangle_count(k: int) -> int:
    n = (k + 1) ** 3
    return comb(n, 3) - collinear_triple_count(k)


@lru_cache(maxsize=None)
def _canonical_point_indices(d: int, k: int) -> tuple:
    """Indices of points that are the least member of their orbit under
    the cube symmetries: coordinates ascending, each at most k/2."""
    out = []
    for idx, p in enumerate(_points(d, k)):
        if all(2 * c <= k for c in p) and all(p[i] <= p[i + 1] for i in range(d - 1)):
            out.append(idx)
    return tuple(out)


@lru_cache(maxsize=None)
def _canonical_segment_indices(d: int, k: int) -> tuple:
    """Indices of segments equal to the least image of their orbit."""
    syms = tuple(cube_symmetries(d))
    out = []
    for idx, rec in enumerate(_segment_records(d, k)):
        verts = (rec[0:d], rec[d:2 * d])
        best = min(tuple(sorted((apply_cube_symmetry(verts[0], s, k),
                                 apply_cube_symmetry(verts[1], s, k))))
                   for s in syms)
        if best == verts:
            out.append(idx)
    return tuple(out)


# --- integer distance kernels ---------------------------------------------

def _pseg(wx, wy, wz, ux, uy, uz, uu):
    """Squared point-segment distance as (numerator, denominator), with
    w the vector from the segment anchor to the point."""
    ww = wx * wx + wy * wy + wz * wz
    dp = wx * ux + wy * uy + wz * uz
    if dp <= 0:
        return ww, 1
    if dp >= uu:
        return ww - 2 * dp + uu, 1
    return ww * uu - dp * dp, uu


def _scan_point_segment(args):
    """One chunk of the point-segment scan in the square."""
    k, chunk, chunks, reduced = args
    pts = _points(2, k)
    segs = _segment_records(2, k)
    outer = _canonical_point_indices(2, k) if reduced else range(len(pts))
    best_n = best_d = None
    wit = []
    for pi in outer[chunk::chunks]:
        px, py = pts[pi]
        for si, rec in enumerate(segs):
            ax, ay, _, _, ux, uy, uu, lox, loy, hix, hiy = rec
            if best_n is not None:
                gx = lox - px
                if gx < 0:
                    gx = px - hix
                    if gx < 0:
                        gx = 0
                gy = loy - py
                if gy < 0:
                    gy = py - hiy
                    if gy < 0:
                        gy = 0
                if (gx * gx + gy * gy) * best_d > best_n:
                    continue
            wx = px - ax
            wy = py - ay
            ww = wx * wx + wy * wy
            dp = wx * ux + wy * uy
            if dp <= 0:
                n, d = ww, 1
            elif dp >= uu:
                n, d = ww - 2 * dp + uu, 1
            else:
                n, d = ww * uu - dp * dp, uu
            if n == 0:
                continue
            if best_n is None or n * best_d < best_n * d:
                best_n, best_d = n, d
                wit = [(pi, si)]
            elif n * best_d == best_n * d:
                wit.append((pi, si))
    return best_n, best_d, wit


def _scan_segment_segment(args):
    """One chunk of the segment-segment scan in the cube."""
    k, chunk, chunks, reduced = args
    segs = _segment_records(3, k)
    n_segs = len(segs)
    outer = _canonical_segment_indices(3, k) if reduced else range(n_segs)
    best_n = best_d = None
    wit = []
    for i in outer[chunk::chunks]:
        (ax1, ay1, az1, bx1, by1, bz1, ux1, uy1, uz1, uu1,
         lox1, loy1, loz1, hix1, hiy1, hiz1) = segs[i]
        inner = range(n_segs) if reduced else range(i + 1, n_segs)
        for j in inner:
            if j == i:
                continue
            (ax2, ay2, az2, bx2, by2, bz2, ux2, uy2, uz2, uu2,
             lox2, loy2, loz2, hix2, hiy2, hiz2) = segs[j]
            if best_n is not None:
                gx = lox2 - hix1
                if gx < 0:
                    gx = lox1 - hix2
                    if gx < 0:
                        gx = 0
                gy = loy2 - hiy1
                if gy < 0:
                    gy = loy1 - hiy2
                    if gy < 0:
                        gy = 0
                gz = loz2 - hiz1
                if gz < 0:
                    gz = loz1 - hiz2
                    if gz < 0:
                        gz = 0
                if (gx * gx + gy * gy + gz * gz) * best_d > best_n:
                    continue
            wx = ax2 - ax1
            wy = ay2 - ay1
            wz = az2 - az1
            uv = ux1 * ux2 + uy1 * uy2 + uz1 * uz2
            e = ux1 * wx + uy1 * wy + uz1 * wz
            f = ux2 * wx + uy2 * wy + uz2 * wz
            den = uu1 * uu2 - uv * uv
            n = -1
            if den > 0:
                tn = uu2 * e - uv * f
                if 0 <= tn <= den:
                    sn = uv * e - uu1 * f
                    if 0 <= sn <= den:
                        ww = wx * wx + wy * wy + wz * wz
                        n = ww * den - e * tn + f * sn
                        d = den
            if n < 0:
                # parallel, or the unconstrained minimum leaves the box:
                # the minimum sits at an endpoint of one of the segments
                n, d = _pseg(-wx, -wy, -wz, ux2, uy2, uz2, uu2)
                n2, d2 = _pseg(bx1 - ax2, by1 - ay2, bz1 - az2,
                               ux2, uy2, uz2, uu2)
                if n2 * d < n * d2:
                    n, d = n2, d2
                n2, d2 = _pseg(wx, wy, wz, ux1, uy1, uz1, uu1)
                if n2 * d < n * d2:
                    n, d = n2, d2
                n2, d2 = _pseg(bx2 - ax1, by2 - ay1, bz2 - az1,
                               ux1, uy1, uz1, uu1)
                if n2 * d < n * d2:
                    n, d = n2, d2
            if n == 0:
                continue
            if best_n is None or n * best_d < best_n * d:
                best_n, best_d = n, d
                wit = [(i, j)]
            elif n * best_d == best_n * d:
                wit.append((i, j))
    return best_n, best_d, wit


def _scan_point_triangle(args):
    """One chunk of the point-triangle scan in the cube.

    Triangles drive the outer loop so each flat record is unpacked once;
    symmetry reduction restricts the short point side instead."""
    k, chunk, chunks, reduced = args
    pts = _points(3, k)
    tris = _triangle_records(k)
    inner = _canonical_point_indices(3, k) if reduced else range(len(pts))
    best_n = best_d = None
    wit = []
    for ti in range(len(tris))[chunk::chunks]:
        rec = tris[ti]
        (v0x, v0y, v0z, e1x, e1y, e1z, e2x, e2y, e2z,
         c11, c12, c22, den, lox, loy, loz, hix, hiy, hiz) = rec[:19]
        for pi in inner:
            px, py, pz = pts[pi]
            if best_n is not None:
                gx = lox - px
                if gx < 0:
                    gx = px - hix
                    if gx < 0:
                        gx = 0
                gy = loy - py
                if gy < 0:
                    gy = py - hiy
                    if gy < 0:
                        gy = 0
                gz = loz - pz
                if gz < 0:
                    gz = pz - hiz
                    if gz < 0:
                        gz = 0
                if (gx * gx + gy * gy + gz * gz) * best_d > best_n:
                    continue
            wx = px - v0x
            wy = py - v0y
            wz = pz - v0z
            d1 = wx * e1x + wy * e1y + wz * e1z
            d2 = wx * e2x + wy * e2y + wz * e2z
            an = c22 * d1 - c12 * d2
            bn = c11 * d2 - c12 * d1
            if an >= 0 and bn >= 0 and an + bn <= den:
                ww = wx * wx + wy * wy + wz * wz
                n = ww * den - d1 * an - d2 * bn
                d = den
            else:
                # closest point lies on the triangle boundary
                n, d = _pseg(px - rec[19], py - rec[20], pz - rec[21],
                             rec[22], rec[23], rec[24], rec[25])
                n2, d2 = _pseg(px - rec[26], py - rec[27], pz - rec[28],
                               rec[29], rec[30], rec[31], rec[32])
                if n2 * d < n * d2:
                    n, d = n2, d2
                n2, d2 = _pseg(px - rec[33], py - rec[34], pz - rec[35],
                               rec[36], rec[37], rec[38], rec[39])
                if n2 * d < n * d2:
                    n, d = n2, d2
            if n == 0:
                continue
            if best_n is None or n * best_d < best_n * d:
                best_n, best_d = n, d
                wit = [(pi, ti)]
            elif n * best_d == best_n * d:
                wit.append((pi, ti))
    return best_n, best_d, wit


# --- scan driver ----------------------------------------------------------

_SCANNERS = {
    POINT_SEGMENT: _scan_point_segment,
    SEGMENT_SEGMENT: _scan_segment_segment,
    POINT_TRIANGLE: _scan_point_triangle,
}


def _pair_count(cls: str, d: int, k: int, reduced: bool) -> int:
    n_pts = (k + 1) ** d
    n_segs = comb(n_pts, 2)
    if cls == POINT_SEGMENT:
        n_outer = len(_canonical_point_indices(d, k)) if reduced else n_pts
        return n_outer * n_segs
    if cls == SEGMENT_SEGMENT:
        if reduced:
            return len(_canonical_segment_indices(d, k)) * (n_segs - 1)
        return comb(n_segs, 2)
    if cls == POINT_TRIANGLE:
        n_outer = len(_canonical_point_indices(d, k)) if reduced else n_pts
        return n_outer * triangle_count(k)
    raise ValueError(f"unknown enumeration class {cls!r}")


def _witness_pair(cls: str, d: int, k: int, i: int, j: int) -> tuple:
    if cls == SEGMENT_SEGMENT:
        segs = _segment_records(d, k)
        ra, rb = segs[i], segs[j]
        return ((ra[0:d], ra[d:2 * d]), (rb[0:d], rb[d:2 * d]))
    pts = _points(d, k)
    if cls == POINT_SEGMENT:
        rb = _segment_records(d, k)[j]
        return ((pts[i],), (rb[0:d], rb[d:2 * d]))
    rec = _triangle_records(k)[j]
    v0 = rec[0:3]
    v1 = (v0[0] + rec[3], v0[1] + rec[4], v0[2] + rec[5])
    v2 = (v0[0] + rec[6], v0[1] + rec[7], v0[2] + rec[8])
    return ((pts[i],), (v0, v1, v2))


def eps_bruteforce(d: int, k: int, classes=None, budget=DEFAULT_BUDGET,
                   workers=1, reduced=False) -> EpsResult:
    """Exact minimum positive squared distance over every pair in the
    selected enumeration classes, with canonical deduplicated witnesses.

    The scan refuses to start when the pair count exceeds the budget.
    Symmetry reduction restricts the outer loop to canonical orbit
    representatives; the minimum and the canonical witness set are
    unchanged because the inner loop stays exhaustive.
    """
    if k < 1:
        raise ValueError("cube size must be at least 1")
    allowed = permitted_classes(d)
    if classes is None:
        classes = allowed
    classes = tuple(classes)
    for cls in classes:
        if cls not in allowed:
            raise ValueError(f"class {cls!r} is not available in dimension {d}")
    if not classes:
        raise ValueError("at least one enumeration class is required")

    total = sum(_pair_count(cls, d, k, reduced) for cls in classes)
    if total > budget:
        raise BudgetExceededError(total, budget)
    if total < 100_000:
        workers = 1  # process spin-up costs more than the scan

    best_n = best_d = None
    raw = []  # (class, i, j)
    for cls in classes:
        # build the tables in this process first; forked workers inherit them
        if cls == POINT_TRIANGLE:
            _triangle_records(k)
        else:
            _segment_records(d, k)
        if reduced and cls == SEGMENT_SEGMENT:
            _canonical_segment_indices(d, k)
        scanner = _SCANNERS[cls]
        chunks = max(1, workers * 4) if workers > 1 else 1
        jobs = [(k, c, chunks, reduced) for c in range(chunks)]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(scanner, jobs))
        else:
            results = [scanner(job) for job in jobs]
        for n, dd, wit in results:
            if n is None:
                continue
            if best_n is None or n * best_d < best_n * dd:
                best_n, best_d = n, dd
                raw = [(cls, i, j) for i, j in wit]
            elif n * best_d == best_n * dd:
                raw.extend((cls, i, j) for i, j in wit)

    if best_n is None:
        raise ValueError("no disjoint pair found in the selected classes")
    eps_squared = Fraction(best_n, best_d)

    by_key = {}
    for cls, i, j in raw:
        verts1, verts2 = _witness_pair(cls, d, k, i, j)
        pair = canonicalize_pair(LatticeSimplex(verts1, k), LatticeSimplex(verts2, k))
        by_key[canonical_pair_key(*pair)] = pair
    witnesses = tuple(by_key[key] for key in sorted(by_key))
    for s1, s2 in witnesses:
        if sq_distance(s1, s2) != eps_squared:
            raise AssertionError("witness does not attain the minimum")

    return EpsResult(d, k, eps_squared, witnesses, classes, total)


# --- derived checks --------------------------------------------------------

def check_point_triangle_gap(k: int, budget=DEFAULT_BUDGET, workers=1,
                             reduced=False) -> Certificate:
    """Certify that every lattice point strictly outside a lattice triangle
    in the cube stays strictly farther than the segment-segment minimum."""
    seg = eps_bruteforce(3, k, (SEGMENT_SEGMENT,), budget, workers, reduced)
    tri = eps_bruteforce(3, k, (POINT_TRIANGLE,), budget, workers, reduced)
    passed = tri.eps_squared > seg.eps_squared
    return Certificate.make(
        "point-triangle-gap", passed,
        witnesses=() if passed else tri.witnesses,
        notes=(f"min point-triangle squared distance {tri.eps_squared} "
               f"{'exceeds' if passed else 'does not exceed'} "
               f"segment minimum {seg.eps_squared} at k = {k}"),
        k=k, segment_min=seg.eps_squared, point_triangle_min=tri.eps_squared,
        pairs_scanned=seg.pairs_scanned + tri.pairs_scanned)


# Known minimal squared gaps at desk scale, regeneration-checked: the scan
# itself re-derives every row.  The square rows follow 1/((k-1)^2 + k^2)
# from k = 2 on; the cube rows follow the closed form except at size 3.
SMALL_TABLE = (
    (2, 1, Fraction(1, 2)),
    (2, 2, Fraction(1, 5)),
    (2, 3, Fraction(1, 13)),
    (2, 4, Fraction(1, 25)),
    (3, 1, Fraction(1, 6)),
    (3, 2, Fraction(1, 50)),
    (3, 3, Fraction(1, 299)),
)


def reproduce_small_table(budget=DEFAULT_BUDGET, workers=1, reduced=False,
                          entries=SMALL_TABLE) -> Certificate:
    """Recompute every known small-cube minimal gap and compare exactly."""
    rows = []
    bad = []
    for d, k, expected in entries:
        res = eps_bruteforce(d, k, budget=budget, workers=workers, reduced=reduced)
        rows.append((d, k, expected, res.eps_squared))
        if res.eps_squared != expected:
            bad.append((d, k, expected, res.eps_squared))
    return Certificate.make(
        "small-gap-table", not bad, witnesses=tuple(bad),
        notes=f"{len(rows)} table rows recomputed by exhaustive scan",
        rows=tuple(rows))


def verify_small_k_formula(max_k=3, budget=DEFAULT_BUDGET, workers=1,
                           reduced=False) -> Certificate:
    """Compare the brute-force minimum against the closed-form squared gap
    for k = 1..max_k.  Equality is required everywhere except at the known
    exceptional size, where the two values must differ."""
    rows = []
    bad = []
    for k in range(1, max_k + 1):
        res = eps_bruteforce(3, k, budget=budget, workers=workers, reduced=reduced)
        formula = extremal_gap_squared(k)
        ok = (res.eps_squared == formula) == (k != FORMULA_EXCEPTION_K)
        rows.append((k, res.eps_squared, formula))
        if not ok:
            bad.append(k)
    return Certificate.make(
        "small-k-formula", not bad, witnesses=tuple(bad),
        notes=f"brute force vs closed form for k = 1..{max_k}, "
              f"exception expected at k = {FORMULA_EXCEPTION_K}",
        comparisons=tuple(rows), exception_k=FORMULA_EXCEPTION_K)
