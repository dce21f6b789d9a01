"""Exact real roots of binary forms: isolation, refinement, comparison.

An AlgebraicReal is a squarefree integer polynomial together with an
isolating rational interval whose endpoints are not roots, or the marker for
the point [1:0] at infinity.  All queries (ordering, equality, sign of a
polynomial at the root) are decided exactly: bisection against the defining
polynomial, Sturm counts for equality through the gcd of defining
polynomials.  No epsilon ever decides anything; intervals only accelerate.
"""

from __future__ import annotations

from fractions import Fraction

from . import _polytools as pt
from .errors import NotSquarefree
from .gaussian import GaussianRational, rational_from_str, rational_to_str
from .forms import BinaryForm, ProjPoint1

_F0 = Fraction(0)
_F1 = Fraction(1)


class AlgebraicReal:
    """A real root of an integer polynomial, pinned down by an interval."""

    __slots__ = ("poly", "lo", "hi", "exact", "infinite")

    def __init__(self, poly, lo, hi, exact=None, infinite=False):
        object.__setattr__(self, "poly", tuple(int(c) for c in poly) if poly else ())
        object.__setattr__(self, "lo", Fraction(lo) if lo is not None else None)
        object.__setattr__(self, "hi", Fraction(hi) if hi is not None else None)
        object.__setattr__(self, "exact", Fraction(exact) if exact is not None else None)
        object.__setattr__(self, "infinite", bool(infinite))

    def __setattr__(self, *a):
        raise AttributeError("AlgebraicReal is immutable-ish; use refine()")

    @staticmethod
    def from_rational(q):
        q = Fraction(q)
        return AlgebraicReal([-q.numerator, q.denominator], q - 1, q + 1, exact=q)

    @staticmethod
    def infinity():
        return AlgebraicReal((), None, None, infinite=True)

    # -- queries -------------------------------------------------------------

    def is_rational(self):
        return self.exact is not None

    def as_rational(self):
        return self.exact

    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return self.exact if self.exact is not None else (self.lo + self.hi) / 2

    def __float__(self):
        if self.infinite:
            return float("inf")
        return float(self.midpoint())

    def __repr__(self):
        if self.infinite:
            return "AlgebraicReal[1:0]"
        if self.exact is not None:
            return f"AlgebraicReal({self.exact})"
        return f"AlgebraicReal({float(self):.6g} in ({self.lo},{self.hi}))"

    # -- refinement ----------------------------------------------------------

    def refine(self):
        """One bisection step; returns a narrower AlgebraicReal."""
        if self.infinite or self.exact is not None:
            if self.exact is not None and self.hi - self.lo > 0:
                w = (self.hi - self.lo) / 4
                return AlgebraicReal(self.poly, max(self.lo, self.exact - w),
                                     min(self.hi, self.exact + w), exact=self.exact)
            return self
        lo, hi, exact = pt.refine_interval(list(self.poly), self.lo, self.hi)
        return AlgebraicReal(self.poly, lo, hi, exact=exact)

    def refine_below(self, width):
        a = self
        while not a.infinite and a.exact is None and a.width() > width:
            a = a.refine()
        return a

    def try_rational(self, budget=128):
        """Exact rational value if the root is rational, else None.

        Probes the simplest fraction in the isolating interval, bisecting
        between probes.  Once the interval is narrower than 1/den^2 the root
        itself is the simplest fraction inside, so any rational root with
        moderate denominator is found within the budget; irrational roots
        exhaust the budget and yield None.
        """
        if self.infinite:
            return None
        if self.exact is not None:
            return self.exact
        p = [Fraction(c) for c in self.poly]
        a = self
        for _ in range(budget):
            cand = _simplest_in(a.lo, a.hi)
            if a.lo < cand < a.hi and pt.peval(p, cand) == 0:
                return cand
            a = a.refine()
            if a.exact is not None:
                return a.exact
        return None

    # -- exact predicates ----------------------------------------------------

    def sign_of(self, poly):
        """Exact sign of an integer/rational polynomial at this root."""
        if self.infinite:
            raise ValueError("sign_of at [1:0] is not defined in the chart")
        if self.exact is not None:
            v = pt.peval([Fraction(c) for c in poly], self.exact)
            return (v > 0) - (v < 0)
        g = pt.gcd_q([Fraction(c) for c in poly], [Fraction(c) for c in self.poly])
        if pt.pdeg(g) >= 1:
            gi = pt.to_int_primitive(g)
            chain = pt.sturm_chain(gi)
            lo, hi = self.lo, self.hi
            # endpoints of the isolating interval are non-roots of self.poly,
            # hence non-roots of any divisor containing only self's root; but g
            # may vanish elsewhere in the interval is impossible: g | poly
            if pt.count_roots_between(chain, lo, hi) == 1:
                return 0
        a = self
        while True:
            lo_v = pt.peval([Fraction(c) for c in poly], a.lo)
            hi_v = pt.peval([Fraction(c) for c in poly], a.hi)
            if lo_v > 0 and hi_v > 0:
                if _no_root_inside(poly, a.lo, a.hi):
                    return 1
            if lo_v < 0 and hi_v < 0:
                if _no_root_inside(poly, a.lo, a.hi):
                    return -1
            a = a.refine()
            if a.exact is not None:
                v = pt.peval([Fraction(c) for c in poly], a.exact)
                return (v > 0) - (v < 0)

    def equals(self, other):
        if self.infinite or other.infinite:
            return self.infinite and other.infinite
        if self.exact is not None and other.exact is not None:
            return self.exact == other.exact
        if self.hi <= other.lo or other.hi <= self.lo:
            return False
        g = pt.gcd_q([Fraction(c) for c in self.poly],
                     [Fraction(c) for c in other.poly])
        if pt.pdeg(g) < 1:
            return False
        gi = pt.to_int_primitive(g)
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo >= hi:
            return False
        # nudge endpoints off roots of g
        a, b = self, other
        while pt.peval([Fraction(c) for c in gi], lo) == 0 or \
                pt.peval([Fraction(c) for c in gi], hi) == 0:
            a, b = a.refine(), b.refine()
            if a.hi <= b.lo or b.hi <= a.lo:
                return False
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if lo >= hi:
                return False
        chain = pt.sturm_chain(gi)
        return pt.count_roots_between(chain, lo, hi) == 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.from_rational(other)
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        if self.infinite:
            return hash("alg-inf")
        if self.exact is not None:
            return hash(self.exact)
        return hash((self.poly,))  # coarse, but consistent with equals

    def less_than(self, other):
        """Chart order; [1:0] compares greater than every finite value."""
        if self.infinite:
            return False
        if other.infinite:
            return True
        if self.equals(other):
            return False
        a, b = self, other
        while not (a.hi <= b.lo or b.hi <= a.lo):
            a, b = a.refine(), b.refine()
        return a.hi <= b.lo

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.from_rational(other)
        return self.less_than(other)

    def __le__(self, other):
        return self == other or self < other

    # -- serialization -------------------------------------------------------

    def to_json(self):
        if self.infinite:
            return {"infinity": True}
        if self.exact is not None:
            return rational_to_str(self.exact)
        asc = list(self.poly)
        return {
            "form": {"degree": len(asc) - 1,
                     "coeffs": [str(c) for c in reversed(asc)]},
            "interval": [rational_to_str(self.lo), rational_to_str(self.hi)],
        }

    @staticmethod
    def from_json(obj):
        if isinstance(obj, str):
            return AlgebraicReal.from_rational(rational_from_str(obj))
        if obj.get("infinity"):
            return AlgebraicReal.infinity()
        coeffs = [int(c) for c in obj["form"]["coeffs"]]
        lo, hi = (rational_from_str(x) for x in obj["interval"])
        return AlgebraicReal(list(reversed(coeffs)), lo, hi)


def _simplest_in(lo, hi):
    """The fraction with smallest denominator in the closed interval."""
    if lo > hi:
        lo, hi = hi, lo
    fl = lo.numerator // lo.denominator
    if lo.denominator == 1:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    inner = _simplest_in(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / inner


def _no_root_inside(poly, lo, hi):
    ip = pt.to_int_primitive([Fraction(c) for c in poly])
    if len(ip) <= 1:
        return True
    sf = pt.to_int_primitive(pt.squarefree_q([Fraction(c) for c in ip]))
    chain = pt.sturm_chain(sf)
    if pt.peval([Fraction(c) for c in sf], lo) == 0 or \
            pt.peval([Fraction(c) for c in sf], hi) == 0:
        return False
    return pt.count_roots_between(chain, lo, hi) == 0


def isolate_real_roots(f: BinaryForm):
    """All real projective roots of a squarefree real form, in chart order.

    Returns AlgebraicReals for the finite roots ascending by chart value,
    with the [1:0] root appended last when present.  Raises NotSquarefree on
    repeated roots.
    """
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero form")
    if not f.is_real():
        raise ValueError("real form required")
    from .forms import is_squarefree
    if not is_squarefree(f):
        raise NotSquarefree("form has a repeated root")
    chart = f.chart_poly()
    out = []
    if pt.pdeg(chart) == 1:
        q = Fraction(-chart[0]) / Fraction(chart[1])
        out.append(AlgebraicReal.from_rational(q))
    elif pt.pdeg(chart) >= 2:
        ip = pt.to_int_primitive(chart)
        for lo, hi, exact in pt.isolate_real_roots_sqfree(ip):
            out.append(AlgebraicReal(ip, lo, hi, exact=exact))
    if f.coeffs[0].is_zero():  # root at [1:0]
        out.append(AlgebraicReal.infinity())
    return out


def count_real_roots(f: BinaryForm):
    return len(isolate_real_roots(f))


def conjugate_root_pair(f: BinaryForm):
    """Conjugate Gaussian-rational roots of a real quadratic form.

    Returns (p, conj(p)) with positive imaginary chart part first when the
    discriminant is negative and the roots lie in Q(i); returns None when the
    discriminant is >= 0 (the roots are real).  A negative discriminant whose
    roots are not Gaussian-rational raises ValueError: such a pair is exact
    but lives outside Q(i), and callers fall back to the quadratic itself.
    """
    if f.degree != 2 or not f.is_real():
        raise ValueError("conjugate_root_pair needs a real quadratic form")
    a, b, c = (x.re for x in f.coeffs)  # a s^2 + b s t + c t^2
    if a == 0:
        return None  # [1:0] is a root, both roots real
    disc = b * b - 4 * a * c
    if disc >= 0:
        return None
    r = _rational_sqrt(-disc)
    if r is None:
        raise ValueError("conjugate roots are not Gaussian-rational")
    root = GaussianRational(-b / (2 * a), r / (2 * a))
    p = ProjPoint1(root, GaussianRational(1))
    return (p, p.conjugate()) if root.im > 0 else (p.conjugate(), p)


def _rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    num = _isqrt_exact(q.numerator)
    den = _isqrt_exact(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _isqrt_exact(n):
    import math
    r = math.isqrt(n)
    return r if r * r == n else None


def sort_points_circular(points):
    """Sort chart points ascending with [1:0] last (the RP^1 wrap point).

    Accepts a mix of AlgebraicReal and rational values; returns AlgebraicReal.
    """
    vals = []
    for p in points:
        if isinstance(p, AlgebraicReal):
            vals.append(p)
        else:
            vals.append(AlgebraicReal.from_rational(p))
    finite = [v for v in vals if not v.infinite]
    inf = [v for v in vals if v.infinite]
    # insertion sort via exact comparisons; n is tiny
    ordered = []
    for v in finite:
        i = 0
        while i < len(ordered) and ordered[i].less_than(v):
            i += 1
        ordered.insert(i, v)
    return ordered + inf
