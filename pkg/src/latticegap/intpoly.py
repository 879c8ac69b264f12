"""Exact univariate integer polynomials and real-root isolation.

Coefficients are arbitrary-precision ints and interval endpoints are
Fractions, so nothing here ever rounds.  The polynomials produced by the
distance certificates have degree at most four, which keeps the Sturm
chains short; the code does not depend on that.

Conventions: coefficient index i holds the coefficient of k^i, the last
coefficient is non-zero, and the zero polynomial has no coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd

from .certificate import Certificate

# Sentinel returned when an equation holds for every integer argument.
ALL_INTEGERS = "all"


class IntPoly:
    """Immutable univariate polynomial with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficients required, got {c!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def __reduce__(self):
        # slots plus the guarded __setattr__ defeat the default pickling
        return (IntPoly, (self.coeffs,))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def variable(cls) -> "IntPoly":
        return cls((0, 1))

    # ring structure -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        # the zero polynomial reports -1
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def _coerce(self, other):
        if isinstance(other, int):
            return IntPoly((other,))
        if isinstance(other, IntPoly):
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPoly()
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = IntPoly((1,))
        for _ in range(n):
            out = out * self
        return out

    # evaluation ---------------------------------------------------------

    def __call__(self, point):
        """Evaluate by Horner's rule; the result type follows the argument."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def sign_at(self, point) -> int:
        """Exact sign at a rational point, computed in pure integers.

        sign p(a/b) = sign of sum c_i a^i b^(n-i) because b > 0.
        """
        q = Fraction(point)
        a, b = q.numerator, q.denominator
        acc = 0
        power_b = 1
        for c in reversed(self.coeffs):
            acc = acc * a + c * power_b
            power_b *= b
        return (acc > 0) - (acc < 0)

    # calculus and normal forms -------------------------------------------

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def content(self) -> int:
        if self.is_zero:
            return 0
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def primitive_part(self) -> "IntPoly":
        """Divide out the positive content; the sign of every value is kept."""
        if self.is_zero:
            return self
        g = self.content()
        return IntPoly(tuple(c // g for c in self.coeffs))

    def root_bound(self) -> Fraction:
        """Strict Cauchy bound: every real root r has |r| < the bound."""
        if self.degree < 1:
            raise ValueError("root bound needs degree >= 1")
        top = max(abs(c) for c in self.coeffs[:-1])
        return 1 + Fraction(top, abs(self.leading))

    # formatting -----------------------------------------------------------

    def __repr__(self):
        return f"IntPoly({self.coeffs!r})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}k" if i == 1 else f"{mag}k^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def poly_eval(p: IntPoly, point):
    """Exact evaluation; ints stay ints and Fractions stay Fractions."""
    return p(point)


def _fraction_rem(a: IntPoly, b: IntPoly) -> list:
    """Remainder of a by b over the rationals, as a coefficient list."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a.coeffs]
    d = [Fraction(c) for c in b.coeffs]
    while len(r) >= len(d):
        if r[-1] == 0:
            r.pop()
            continue
        coef = r[-1] / d[-1]
        off = len(r) - len(d)
        for i in range(len(d) - 1):
            r[off + i] -= coef * d[i]
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _primitive_int(fracs: list) -> IntPoly:
    """Scale a rational coefficient list by a positive constant into a
    primitive integer polynomial.  Positive scaling preserves every sign."""
    if not fracs:
        return IntPoly()
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // gcd(scale, f.denominator)
    ints = [int(f * scale) for f in fracs]
    return IntPoly(ints).primitive_part()


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor, primitive with positive leading coefficient."""
    a = a.primitive_part()
    b = b.primitive_part()
    while not b.is_zero:
        a, b = b, _primitive_int(_fraction_rem(a, b))
    if a.is_zero or a.leading > 0:
        return a
    return -a


def _exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient a / b when the division is exact over the integers."""
    r = [Fraction(c) for c in a.coeffs]
    d = [Fraction(c) for c in b.coeffs]
    out = [Fraction(0)] * (len(r) - len(d) + 1)
    while len(r) >= len(d):
        if r[-1] == 0:
            r.pop()
            continue
        coef = r[-1] / d[-1]
        out[len(r) - len(d)] = coef
        off = len(r) - len(d)
        for i in range(len(d) - 1):
            r[off + i] -= coef * d[i]
        r.pop()
    if any(f != 0 for f in r):
        raise ValueError("division is not exact")
    if any(f.denominator != 1 for f in out):
        raise ValueError("quotient is not an integer polynomial")
    return IntPoly(tuple(int(f) for f in out))


def square_free_part(p: IntPoly) -> IntPoly:
    """p with repeated factors collapsed: p / gcd(p, p')."""
    if p.is_zero:
        raise ValueError("zero polynomial has no square-free part")
    if p.degree < 1:
        return p.primitive_part()
    return _exact_div(p.primitive_part(), poly_gcd(p, p.derivative()))


def sturm_chain(q: IntPoly) -> list:
    """Sturm chain of q: q, q', then negated remainders, each scaled to a
    primitive integer polynomial by a positive constant."""
    chain = [q.primitive_part(), q.derivative().primitive_part()]
    while not chain[-1].is_zero:
        rem = _fraction_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(-_primitive_int(rem))
    return [c for c in chain if not c.is_zero]


def _variations(chain: list, point: Fraction) -> int:
    signs = [s for s in (p.sign_at(point) for p in chain) if s != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x * y < 0)


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint open rational intervals, one distinct real root in each.

    Both endpoints of every interval are non-roots, so the square-free part
    of the input changes sign across each interval.
    """

    intervals: tuple
    input_square_free: bool

    @property
    def root_count(self) -> int:
        return len(self.intervals)

    def max_upper(self):
        if not self.intervals:
            return None
        return max(hi for _, hi in self.intervals)


def isolate_real_roots(p: IntPoly, max_width=Fraction(1)) -> RootIsolation:
    """Isolate every distinct real root of p in intervals of width <= max_width.

    Uses the Sturm chain of the square-free part.  Width 1 guarantees each
    interval holds at most one integer candidate.
    """
    if p.is_zero:
        raise ValueError("every real number is a root of the zero polynomial")
    if max_width <= 0:
        raise ValueError("max_width must be positive")
    max_width = Fraction(max_width)
    was_square_free = p.degree < 1 or poly_gcd(p, p.derivative()).degree == 0
    q = square_free_part(p)
    if q.degree < 1:
        return RootIsolation((), was_square_free)

    chain = sturm_chain(q)

    def var(t):
        return _variations(chain, t)

    def fence_exact_root(m, a, b, width):
        # m is a known rational root; shrink a symmetric window around it
        # until it contains m alone and neither endpoint is a root.
        w = min(m - a, b - m, width) / 2
        while (q.sign_at(m - w) == 0 or q.sign_at(m + w) == 0
               or var(m - w) - var(m + w) != 1):
            w /= 2
        return m - w, m + w

    def refine(a, b, va, vb):
        # exactly one root in (a, b); both endpoints are non-roots
        while b - a > max_width:
            m = (a + b) / 2
            if q.sign_at(m) == 0:
                return fence_exact_root(m, a, b, max_width)
            vm = var(m)
            if va - vm == 1:
                b, vb = m, vm
            else:
                a, va = m, vm
        return a, b

    bound = q.root_bound()
    intervals = []
    stack = [(-bound, bound, var(-bound), var(bound))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count == 0:
            continue
        if count == 1:
            intervals.append(refine(a, b, va, vb))
            continue
        m = (a + b) / 2
        if q.sign_at(m) == 0:
            lo, hi = fence_exact_root(m, a, b, max_width)
            intervals.append((lo, hi))
            stack.append((a, lo, va, var(lo)))
            stack.append((hi, b, var(hi), vb))
        else:
            vm = var(m)
            stack.append((a, m, va, vm))
            stack.append((m, b, vm, vb))
    intervals.sort()
    return RootIsolation(tuple(intervals), was_square_free)


def _avoid_point(q: IntPoly, interval: tuple, point: int) -> tuple:
    """Shrink one isolating interval of q away from a non-root integer.

    Afterwards the interval lies strictly below the point when its root
    does, and starts at or above the point otherwise.  The one-root and
    sign-change guarantees are preserved.
    """
    lo, hi = interval
    if hi < point or lo > point:
        return interval
    if q.sign_at(lo) * q.sign_at(point) < 0:
        # root strictly below the point; walk the upper end down past it
        cur_lo = lo
        w = Fraction(point) - cur_lo
        while True:
            w /= 2
            t = point - w
            s = q.sign_at(t)
            if s == 0:
                # the root is exactly t; box it strictly inside (cur_lo, point)
                d = min(t - cur_lo, point - t) / 2
                return (t - d, t + d)
            if q.sign_at(cur_lo) * s < 0:
                return (cur_lo, t)
            cur_lo = t
    # root strictly above the point; the point itself is a safe lower end
    return (Fraction(point), hi) if lo < point else interval


def positive_for_all_integers_geq(p: IntPoly, start: int) -> Certificate:
    """Certify that p(j) > 0 for every integer j >= start.

    Strategy: isolate the real roots.  If every isolating interval lies
    strictly below start, the sign on [start, oo) is constant and one
    evaluation settles it.  Otherwise check each integer up to the last
    interval and the leading coefficient for the unbounded tail.
    """
    subject = "integer-positivity"
    if p.is_zero:
        return Certificate.make(
            subject, False, witnesses=(start,),
            notes="polynomial is identically zero", poly=str(p), start=start)

    v0 = p(start)
    if v0 <= 0:
        return Certificate.make(
            subject, False, witnesses=(start,),
            notes=f"value at {start} is {v0}",
            poly=str(p), start=start, value_at_start=v0)

    if p.degree == 0:
        return Certificate.make(
            subject, True, notes=f"constant {v0} > 0",
            poly=str(p), start=start, value_at_start=v0,
            evaluations=((start, v0),), intervals=(), max_interval_upper=None)

    iso = isolate_real_roots(p)
    # p(start) != 0, so start is not a root and intervals can be pushed off it
    q = square_free_part(p)
    intervals = tuple(_avoid_point(q, iv, start) for iv in iso.intervals)
    max_hi = max((hi for _, hi in intervals), default=None)

    if max_hi is None or max_hi < start:
        # no root reaches start; the sign of p(start) rules the whole tail
        return Certificate.make(
            subject, True,
            notes=f"all real roots lie below {start}; value there is {v0}",
            poly=str(p), start=start, value_at_start=v0,
            evaluations=((start, v0),), intervals=intervals,
            max_interval_upper=max_hi)

    last = floor(max_hi) + 1
    evaluations = []
    for j in range(start, last + 1):
        vj = p(j)
        evaluations.append((j, vj))
        if vj <= 0:
            return Certificate.make(
                subject, False, witnesses=(j,),
                notes=f"value at {j} is {vj}",
                poly=str(p), start=start, value_at_start=v0,
                evaluations=tuple(evaluations), intervals=intervals,
                max_interval_upper=max_hi)
    if p.leading < 0:
        # beyond the last root the sign follows the leading coefficient
        j = last + 1
        return Certificate.make(
            subject, False, witnesses=(j,),
            notes=f"negative leading coefficient; value at {j} is {p(j)}",
            poly=str(p), start=start, value_at_start=v0,
            evaluations=tuple(evaluations), intervals=intervals,
            max_interval_upper=max_hi)
    return Certificate.make(
        subject, True,
        notes=f"checked integers {start}..{last}, positive tail beyond",
        poly=str(p), start=start, value_at_start=v0,
        evaluations=tuple(evaluations), intervals=intervals,
        max_interval_upper=max_hi)


def integer_solutions_of_abs_eq(p: IntPoly, target: int, start: int):
    """All integers j >= start with |p(j)| == target.

    Returns the ALL_INTEGERS sentinel when p is a constant of the right
    magnitude; a finite sorted tuple otherwise.  The unbounded case is never
    enumerated.
    """
    if target < 0:
        raise ValueError("target must be non-negative")
    if p.degree <= 0:
        value = p.coeffs[0] if p.coeffs else 0
        return ALL_INTEGERS if abs(value) == target else ()

    shifted = {p - target, p + target}
    sols = set()
    for s in shifted:
        iso = isolate_real_roots(s)
        for lo, hi in iso.intervals:
            for j in range(floor(lo), ceil(hi) + 1):
                if j >= start and abs(p(j)) == target:
                    sols.add(j)
    return tuple(sorted(sols))
