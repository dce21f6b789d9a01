"""Homogeneous binary forms over Q(i) and points of the projective line.

A form of degree d is stored as d+1 coefficients with index k holding the
coefficient of s^(d-k) t^k, so index 0 is the pure s^d term and index d the
pure t^d term.  Addition requires equal degrees; multiplication adds degrees.
The degree is formal: leading coefficients may vanish, which is exactly how a
root at [1:0] shows up, and the resultant/gcd code respects that.

Real-coefficient forms take fast integer paths (primitive pseudo-remainder
gcds, Bareiss determinants); the general Q(i) code is used for seeds and
conjugate pairs.  The resultant follows the Sylvester convention with the
rows of the first argument on top: resultant((s-t)(s+t), s-2t) == 3.
"""

from __future__ import annotations

from fractions import Fraction

from . import _polytools as pt
from .errors import DivisionFailure
from .gaussian import GR_ONE, GR_ZERO, GaussianRational, rational_from_str, rational_to_str

_F0 = Fraction(0)
_F1 = Fraction(1)


def _gr(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x, 0)


class BinaryForm:
    """Homogeneous polynomial in (s, t) with Gaussian-rational coefficients."""

    __slots__ = ("coeffs", "_real")

    def __init__(self, coeffs):
        cs = tuple(_gr(c) for c in coeffs)
        if not cs:
            raise ValueError("a form needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "_real", all(c.im == 0 for c in cs))

    def __setattr__(self, *a):
        raise AttributeError("BinaryForm is immutable")

    # -- basics --------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def is_real(self):
        return self._real

    def is_constant(self):
        return self.degree == 0

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = []
            if d - k:
                mono.append("s" + (f"^{d - k}" if d - k > 1 else ""))
            if k:
                mono.append("t" + (f"^{k}" if k > 1 else ""))
            head = "*".join(mono) or "1"
            terms.append(f"({c})*{head}")
        return "BinaryForm<" + (" + ".join(terms) or "0") + ">"

    # -- constructors --------------------------------------------------------

    @staticmethod
    def constant(c):
        return BinaryForm([_gr(c)])

    @staticmethod
    def from_real(coeffs):
        return BinaryForm([GaussianRational(Fraction(c), 0) for c in coeffs])

    @staticmethod
    def zero(degree):
        return BinaryForm([GR_ZERO] * (degree + 1))

    @staticmethod
    def from_root(point, scale=GR_ONE):
        """Linear form vanishing at [a : b], namely b*s - a*t (times scale)."""
        return BinaryForm([point.b * _gr(scale), -point.a * _gr(scale)])

    @staticmethod
    def from_roots(points):
        f = BinaryForm([GR_ONE])
        for p in points:
            f = f * BinaryForm.from_root(p)
        return f

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("can only add forms of equal degree")
        return BinaryForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self.degree != other.degree:
            raise ValueError("can only subtract forms of equal degree")
        return BinaryForm([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        out = [GR_ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(out)

    __rmul__ = __mul__

    def scale(self, c):
        c = _gr(c)
        return BinaryForm([a * c for a in self.coeffs])

    def evaluate(self, a, b=None):
        """Value at the pair (a, b) or at a ProjPoint1."""
        if b is None:
            a, b = a.a, a.b
        a, b = _gr(a), _gr(b)
        d = self.degree
        # split as sum c_k a^(d-k) b^k, accumulated with running powers
        acc = GR_ZERO
        pa = [GR_ONE]
        for _ in range(d):
            pa.append(pa[-1] * a)
        pb = GR_ONE
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + c * pa[d - k] * pb
            pb = pb * b
        return acc

    def derivative_s(self):
        d = self.degree
        if d == 0:
            return BinaryForm([GR_ZERO])
        return BinaryForm([self.coeffs[k] * (d - k) for k in range(d)])

    def derivative_t(self):
        d = self.degree
        if d == 0:
            return BinaryForm([GR_ZERO])
        return BinaryForm([self.coeffs[k] * k for k in range(1, d + 1)])

    def conjugate(self):
        return BinaryForm([c.conjugate() for c in self.coeffs])

    def monic(self):
        """Divide by the leading nonzero coefficient; zero form unchanged."""
        for c in self.coeffs:
            if not c.is_zero():
                return BinaryForm([a / c for a in self.coeffs])
        return self

    # -- views ---------------------------------------------------------------

    def real_fractions(self):
        """Coefficients as plain Fractions, or None when any is imaginary."""
        if not self._real:
            return None
        return [c.re for c in self.coeffs]

    def chart_poly(self):
        """Univariate f(x, 1) in ascending powers of x = s/t (Fraction list).

        Only valid for real forms; a root at [1:0] appears as a degree drop.
        """
        rs = self.real_fractions()
        if rs is None:
            raise ValueError("chart_poly needs a real form")
        return pt.ptrim(list(reversed(rs)))

    @staticmethod
    def from_chart_poly(poly, degree):
        """Rehomogenize an ascending chart polynomial to the given degree."""
        cs = [_F0] * (degree + 1)
        for j, c in enumerate(poly):
            cs[degree - j] = Fraction(c)
        return BinaryForm.from_real(cs)

    def compose_linear(self, m):
        """Substitute (s, t) -> (m00*s + m01*t, m10*s + m11*t)."""
        a, b = _gr(m[0][0]), _gr(m[0][1])
        c, d = _gr(m[1][0]), _gr(m[1][1])
        s_img = BinaryForm([a, b])
        t_img = BinaryForm([c, d])
        deg = self.degree
        # running powers of the two images
        ps = [BinaryForm([GR_ONE])]
        for _ in range(deg):
            ps.append(ps[-1] * s_img)
        ptows = [BinaryForm([GR_ONE])]
        for _ in range(deg):
            ptows.append(ptows[-1] * t_img)
        out = BinaryForm.zero(deg)
        for k, coef in enumerate(self.coeffs):
            if coef.is_zero():
                continue
            term = (ps[deg - k] * ptows[k]).scale(coef)
            out = out + term
        return out

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {"degree": self.degree,
                "coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(obj):
        coeffs = [GaussianRational.from_json(c) for c in obj["coeffs"]]
        f = BinaryForm(coeffs)
        if f.degree != obj["degree"]:
            raise ValueError("degree field disagrees with coefficient count")
        return f


class ProjPoint1:
    """A point [a : b] of the projective line over Q(i)."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a, b = _gr(a), _gr(b)
        if a.is_zero() and b.is_zero():
            raise ValueError("[0 : 0] is not a projective point")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, *arg):
        raise AttributeError("ProjPoint1 is immutable")

    @staticmethod
    def from_chart(x):
        """Finite point with chart value x = a/b, i.e. [x : 1]."""
        return ProjPoint1(_gr(x), GR_ONE)

    @staticmethod
    def infinity():
        return ProjPoint1(GR_ONE, GR_ZERO)

    def same_point(self, other):
        return (self.a * other.b - self.b * other.a).is_zero()

    def is_real(self):
        """True when [a : b] admits a real representative."""
        return (self.a * self.b.conjugate()).im == 0

    def is_finite(self):
        return not self.b.is_zero()

    def chart_value(self):
        """a/b as a GaussianRational, or None for [1:0]."""
        if self.b.is_zero():
            return None
        return self.a / self.b

    def conjugate(self):
        return ProjPoint1(self.a.conjugate(), self.b.conjugate())

    def __eq__(self, other):
        return isinstance(other, ProjPoint1) and self.same_point(other)

    def __hash__(self):
        # canonicalize: scale so the first nonzero coordinate is 1
        if not self.b.is_zero():
            return hash(("fin", self.a / self.b))
        return hash(("inf",))

    def __repr__(self):
        return f"ProjPoint1[{self.a} : {self.b}]"

    def to_json(self):
        def coord(c):
            return rational_to_str(c.re) if c.im == 0 else c.to_json()
        return [coord(self.a), coord(self.b)]

    @staticmethod
    def from_json(obj):
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise ValueError("a projective point is a two-element array")
        return ProjPoint1(GaussianRational.from_json(obj[0]),
                          GaussianRational.from_json(obj[1]))


# -- gcd, division, resultants ------------------------------------------------


def _t_valuation(f):
    """Largest k with t^k dividing f (count of leading zero coefficients)."""
    v = 0
    for c in f.coeffs:
        if c.is_zero():
            v += 1
        else:
            break
    return v


def _gauss_chart(f):
    """Ascending chart coefficients over Q(i) (reverse order, trimmed)."""
    lst = list(reversed(f.coeffs))
    while lst and lst[-1].is_zero():
        lst.pop()
    return lst


def _gauss_divmod(p, q):
    if not q:
        raise ZeroDivisionError
    r = list(p)
    d = len(q) - 1
    lc = q[-1]
    quot = [GR_ZERO] * max(0, len(r) - d)
    while len(r) - 1 >= d and r:
        k = len(r) - 1 - d
        c = r[-1] / lc
        quot[k] = c
        for i in range(d + 1):
            r[k + i] = r[k + i] - c * q[i]
        while r and r[-1].is_zero():
            r.pop()
    return quot, r


def _gauss_gcd(p, q):
    a, b = list(p), list(q)
    while b:
        _, r = _gauss_divmod(a, b)
        # monic normalization keeps coefficient growth in check
        if r:
            lc = r[-1]
            r = [c / lc for c in r]
        a, b = b, r
    if a:
        lc = a[-1]
        a = [c / lc for c in a]
    return a


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic gcd of two binary forms (roots at [1:0] included)."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    vf, vg = _t_valuation(f), _t_valuation(g)
    v = min(vf, vg)
    if f.is_real() and g.is_real():
        u = pt.gcd_q(f.chart_poly(), g.chart_poly())
        core = BinaryForm.from_chart_poly(u, pt.pdeg(u))
    else:
        u = _gauss_gcd(_gauss_chart(f), _gauss_chart(g))
        cs = [_gr(c) for c in reversed(u)]
        core = BinaryForm(cs)
    if v:
        core = _shift_t(core, v)
    return core.monic()


def _shift_t(f, v):
    """Multiply by t^v (new leading zeros ahead of the s-power coefficients)."""
    if v == 0:
        return f
    return BinaryForm([GR_ZERO] * v + list(f.coeffs))


def form_div_exact(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Exact quotient f/g; DivisionFailure when the division leaves a remainder."""
    if g.is_zero():
        raise ZeroDivisionError("division of a form by zero")
    if f.is_zero():
        if f.degree < g.degree:
            raise DivisionFailure("quotient degree would be negative")
        return BinaryForm.zero(f.degree - g.degree)
    vf, vg = _t_valuation(f), _t_valuation(g)
    if vg > vf:
        raise DivisionFailure("divisor has a higher-order root at [1:0]")
    pf, pg = _gauss_chart(f), _gauss_chart(g)
    quot, rem = _gauss_divmod(pf, pg)
    if rem:
        raise DivisionFailure("remainder is nonzero")
    out_deg = f.degree - g.degree
    cs = [GR_ZERO] * (out_deg + 1)
    for j, c in enumerate(quot):
        cs[out_deg - j] = c
    return BinaryForm(cs)


def resultant(f: BinaryForm, g: BinaryForm):
    """Sylvester resultant of two forms at their formal degrees.

    Rows of f first (deg g of them), then rows of g.  Returns a
    GaussianRational; real for real inputs.
    """
    m, n = f.degree, g.degree
    if n == 0:
        return _gr(g.coeffs[0]) ** m
    if m == 0:
        return _gr(f.coeffs[0]) ** n
    if f.is_real() and g.is_real():
        fr = [c.re for c in f.coeffs]
        gr = [c.re for c in g.coeffs]
        rows = []
        for i in range(n):
            rows.append([_F0] * i + fr + [_F0] * (n - 1 - i))
        for i in range(m):
            rows.append([_F0] * i + gr + [_F0] * (m - 1 - i))
        return GaussianRational(pt.det_fractions(rows), 0)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([GR_ZERO] * i + list(f.coeffs) + [GR_ZERO] * (n - 1 - i))
    for i in range(m):
        rows.append([GR_ZERO] * i + list(g.coeffs) + [GR_ZERO] * (m - 1 - i))
    return _gauss_det(rows, size)


def _gauss_det(rows, n):
    m = [list(r) for r in rows]
    det = GR_ONE
    for k in range(n):
        piv = None
        for i in range(k, n):
            if not m[i][k].is_zero():
                piv = i
                break
        if piv is None:
            return GR_ZERO
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        inv = GR_ONE / m[k][k]
        for i in range(k + 1, n):
            if m[i][k].is_zero():
                continue
            factor = m[i][k] * inv
            m[i] = [a - factor * b for a, b in zip(m[i], m[k])]
    return det


def squarefree_part(f: BinaryForm) -> BinaryForm:
    """Monic form with the same roots as f, all simple."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero form")
    if f.degree == 0:
        return BinaryForm([GR_ONE])
    g = form_gcd(form_gcd(f, f.derivative_s()), f.derivative_t())
    return form_div_exact(f, g).monic()


def is_squarefree(f: BinaryForm) -> bool:
    g = form_gcd(form_gcd(f, f.derivative_s()), f.derivative_t())
    return g.degree == 0


def multiplicity_split(f: BinaryForm):
    """Yun-style splitting: list of (multiplicity, monic factor) pairs.

    The factors are squarefree, pairwise coprime, and
    prod factor^multiplicity == f up to a constant.
    """
    out = []
    rest = f
    m = 0
    while rest.degree > 0:
        m += 1
        g = form_gcd(form_gcd(rest, rest.derivative_s()), rest.derivative_t())
        level = form_div_exact(rest, g).monic()  # product of factors with mult >= m
        out.append(level)
        rest = g
    factors = []
    for i in range(len(out)):
        if i + 1 < len(out):
            fac = form_div_exact(out[i], form_gcd(out[i], out[i + 1])).monic()
        else:
            fac = out[i]
        if fac.degree > 0:
            factors.append((i + 1, fac))
    return factors


def root_multiplicities(f: BinaryForm):
    """Sorted multiset of root multiplicities over C, summing to deg f."""
    out = []
    for mult, fac in multiplicity_split(f):
        out.extend([mult] * fac.degree)
    return sorted(out)


def resultant_coeff_forms(fcoeffs, gcoeffs) -> BinaryForm:
    """Resultant in a second variable pair of two forms whose coefficients
    are themselves real binary forms in (s, t).

    fcoeffs / gcoeffs list the (u, v)-coefficients from u^p down to v^p; the
    entries are BinaryForms (or None for zero).  Every non-None entry in a
    list must carry the same formal degree, so the resultant is homogeneous
    of degree q*deg_f + p*deg_g in (s, t).  Computed by specializing
    (s, t) -> (x_j, 1) at enough points, taking scalar Sylvester determinants
    and interpolating, which commutes with specialization because the
    determinant is a polynomial identity in the coefficients.  The Sylvester
    matrix is built at the formal (u, v)-degrees p and q, never trimmed, as
    binary-form resultants require.
    """
    p = len(fcoeffs) - 1
    q = len(gcoeffs) - 1
    fdegs = {c.degree for c in fcoeffs if c is not None}
    gdegs = {c.degree for c in gcoeffs if c is not None}
    if len(fdegs) > 1 or len(gdegs) > 1:
        raise ValueError("coefficient forms must share one formal degree")
    maxf = fdegs.pop() if fdegs else 0
    maxg = gdegs.pop() if gdegs else 0
    bound = q * maxf + p * maxg
    fr = [c.real_fractions() if c is not None else None for c in fcoeffs]
    gr = [c.real_fractions() if c is not None else None for c in gcoeffs]
    if any(v is None and c is not None for v, c in zip(fr, fcoeffs)) or \
            any(v is None and c is not None for v, c in zip(gr, gcoeffs)):
        raise ValueError("coefficient forms must be real")

    def spec(cs, x):
        if cs is None:
            return _F0
        # cs ascending in t-index: sum cs[k] x^(d-k)
        acc = _F0
        for c in cs:
            acc = acc * x + c
        return acc

    xs = list(range(bound + 1))
    ys = []
    size = p + q
    for x in xs:
        x = Fraction(x)
        frow = [spec(cs, x) for cs in fr]
        grow = [spec(cs, x) for cs in gr]
        rows = []
        for i in range(q):
            rows.append([_F0] * i + frow + [_F0] * (q - 1 - i))
        for i in range(p):
            rows.append([_F0] * i + grow + [_F0] * (p - 1 - i))
        assert all(len(r) == size for r in rows)
        ys.append(pt.det_fractions(rows))
    poly = pt.interpolate(xs, ys)
    return BinaryForm.from_chart_poly(poly, bound)
