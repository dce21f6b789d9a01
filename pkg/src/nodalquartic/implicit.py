"""Implicit degree-4 equations of parametrized quartics.

The two moving lines x1*p0 - x0*p1 and x2*p0 - x0*p2 both vanish on the
image of theta, so their resultant in (s, t) is a degree-8 ternary form
cutting out the image together with an extraneous piece.  At x0 = 0 both
lines collapse onto multiples of p0, which forces the factor x0^4; the
degree-4 cofactor is the implicit equation.  The resultant is recovered
by tensor interpolation of scalar Sylvester determinants on a 5 x 5
integer grid (its bidegree in (x1, x2) at x0 = 1 is at most (4, 4)),
the x0^4 factor is stripped exactly, and the output is certified by the
identity F(theta(s, t)) == 0 plus a squarefree restriction to a witness
line, which a repeated factor of F would make impossible.
"""

from fractions import Fraction
from math import gcd

from .errors import ImplicitizationFailure
from .forms import BinaryForm, is_squarefree, resultant
from .gaussian import rational_from_str, rational_to_str

_F0 = Fraction(0)
_F1 = Fraction(1)


def _monomials(degree):
    return [(i, j, degree - i - j)
            for i in range(degree, -1, -1)
            for j in range(degree - i, -1, -1)]


class TernaryForm:
    """Homogeneous polynomial in (x0, x1, x2) with rational coefficients.

    coeffs maps exponent triples to nonzero Fractions; the zero form of
    any degree has an empty table.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree, coeffs):
        table = {}
        for expo, c in coeffs.items():
            c = Fraction(c)
            if not c:
                continue
            i, j, k = expo
            if i < 0 or j < 0 or k < 0 or i + j + k != degree:
                raise ValueError("exponents do not match the degree")
            table[(i, j, k)] = c
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "coeffs", table)

    def __setattr__(self, *a):
        raise AttributeError("TernaryForm is immutable")

    @staticmethod
    def from_terms(degree, terms):
        return TernaryForm(degree, terms)

    @staticmethod
    def zero(degree):
        return TernaryForm(degree, {})

    def coefficient(self, i, j, k):
        return self.coeffs.get((i, j, k), _F0)

    def is_zero(self):
        return not self.coeffs

    def terms(self):
        return sorted(self.coeffs.items(), reverse=True)

    def evaluate(self, x0, x1, x2):
        acc = _F0
        for (i, j, k), c in self.coeffs.items():
            acc += c * x0 ** i * x1 ** j * x2 ** k
        return acc

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("can only add forms of equal degree")
        out = dict(self.coeffs)
        for expo, c in other.coeffs.items():
            out[expo] = out.get(expo, _F0) + c
        return TernaryForm(self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return TernaryForm(self.degree,
                           {e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for (a, b, c), u in self.coeffs.items():
            for (d, e, f), v in other.coeffs.items():
                key = (a + d, b + e, c + f)
                out[key] = out.get(key, _F0) + u * v
        return TernaryForm(self.degree + other.degree, out)

    __rmul__ = __mul__

    def partial(self, axis):
        out = {}
        for expo, c in self.coeffs.items():
            e = expo[axis]
            if not e:
                continue
            nxt = list(expo)
            nxt[axis] = e - 1
            out[tuple(nxt)] = c * e
        return TernaryForm(self.degree - 1, out)

    def restrict_line(self, a, b):
        """The binary form (u, v) -> self(u*a + v*b) for rational triples."""
        d = self.degree
        out = [_F0] * (d + 1)
        for (i, j, k), c in self.coeffs.items():
            term = [c]
            for e, av, bv in ((i, a[0], b[0]), (j, a[1], b[1]),
                              (k, a[2], b[2])):
                if not e:
                    continue
                av, bv = Fraction(av), Fraction(bv)
                # (u*av + v*bv)^e expanded in ascending powers of v
                binom = [_F1]
                for _ in range(e):
                    nxt = [_F0] * (len(binom) + 1)
                    for r, x in enumerate(binom):
                        nxt[r] += x * av
                        nxt[r + 1] += x * bv
                    binom = nxt
                term = _conv(term, binom)
            for r, x in enumerate(term):
                out[r] += x
        return BinaryForm.from_real(out)

    def compose_curve(self, forms):
        """The composition with a parametrization (a binary form identity)."""
        d = self.degree
        pows = []
        for f in forms:
            col = [BinaryForm.constant(1)]
            for _ in range(d):
                col.append(col[-1] * f)
            pows.append(col)
        deg = forms[0].degree * d
        acc = BinaryForm.zero(deg)
        for (i, j, k), c in self.coeffs.items():
            acc = acc + (pows[0][i] * pows[1][j] * pows[2][k]).scale(c)
        return acc

    def integer_primitive(self):
        """Content-1 integer rescale with the leading coefficient positive."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.coeffs.values():
            num = gcd(num, abs(int(c * den)))
        scale = Fraction(den, num)
        if self.coeffs[max(self.coeffs)] < 0:
            scale = -scale
        return self.scale(scale)

    def __eq__(self, other):
        return isinstance(other, TernaryForm) and \
            self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, tuple(self.terms())))

    def __repr__(self):
        return f"TernaryForm(deg={self.degree}, {len(self.coeffs)} terms)"

    def to_json(self):
        return {"degree": self.degree,
                "terms": [[i, j, k, rational_to_str(c)]
                          for (i, j, k), c in self.terms()]}

    @staticmethod
    def from_json(obj):
        return TernaryForm(obj["degree"],
                           {(i, j, k): rational_from_str(c)
                            for i, j, k, c in obj["terms"]})


def _conv(a, b):
    out = [_F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class ImplicitQuartic:
    """A degree-4 implicit equation certified against its parametrization."""

    __slots__ = ("F",)

    def __init__(self, F):
        if F.degree != 4 or F.is_zero():
            raise ValueError("ImplicitQuartic needs a nonzero quartic form")
        object.__setattr__(self, "F", F)

    def __setattr__(self, *a):
        raise AttributeError("ImplicitQuartic is immutable")

    def __eq__(self, other):
        return isinstance(other, ImplicitQuartic) and self.F == other.F

    def __repr__(self):
        return f"ImplicitQuartic({self.F!r})"

    def to_json(self):
        return self.F.to_json()

    @staticmethod
    def from_json(obj):
        return ImplicitQuartic(TernaryForm.from_json(obj))


def _interp(values):
    """Coefficients (ascending) of the poly taking values at 0, 1, ..., n."""
    n = len(values)
    # Newton divided differences on the integer nodes
    table = [Fraction(v) for v in values]
    diffs = [table[0]]
    for level in range(1, n):
        table = [(table[r + 1] - table[r]) / level
                 for r in range(len(table) - 1)]
        diffs.append(table[0])
    out = [_F0]
    basis = [_F1]
    for r, d in enumerate(diffs):
        if r:
            basis = _conv(basis, [Fraction(-(r - 1)), _F1])
        while len(out) < len(basis):
            out.append(_F0)
        for idx, x in enumerate(basis):
            out[idx] += d * x
    return out


# fixed pool of witness lines for the squarefree section certificate
_LINE_POOL = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1),
              (0, 1, 1), (1, -1, 0), (1, 2, 3), (2, -1, 1), (3, 1, -2),
              (1, 3, -1), (5, 2, 1)]


def _squarefree_witness(F):
    for i in range(len(_LINE_POOL)):
        for j in range(i + 1, len(_LINE_POOL)):
            a = tuple(Fraction(v) for v in _LINE_POOL[i])
            b = tuple(Fraction(v) for v in _LINE_POOL[j])
            r = F.restrict_line(a, b)
            if all(c.is_zero() for c in r.coeffs):
                continue
            if is_squarefree(r):
                return a, b
    return None


def implicitize(c) -> ImplicitQuartic:
    """The degree-4 form vanishing on the image of the parametrization.

    Raises ImplicitizationFailure when the cofactor of x0^4 in the moving
    line resultant does not annihilate theta or has a repeated factor;
    both happen exactly when the parametrization is non-reduced (it runs
    over a conic twice and the cofactor is the square of that conic).
    """
    grid = {}
    for a in range(5):
        for b in range(5):
            fa = c.p0.scale(a) - c.p1
            fb = c.p0.scale(b) - c.p2
            grid[a, b] = resultant(fa, fb).re
    rows = [_interp([grid[a, b] for b in range(5)]) for a in range(5)]
    coeffs = {}
    for j in range(5):
        col = _interp([rows[a][j] if j < len(rows[a]) else _F0
                       for a in range(5)])
        for i, v in enumerate(col):
            if v:
                coeffs[i, j] = v
    if not coeffs:
        raise ImplicitizationFailure("moving line resultant vanishes")
    table = {}
    for (i, j), v in coeffs.items():
        k = 8 - i - j
        if k < 4:
            raise ImplicitizationFailure(
                "resultant is not divisible by x0^4")
        table[(k - 4, i, j)] = v
    F = TernaryForm(4, table).integer_primitive()
    if not _annihilates(F, c):
        raise ImplicitizationFailure(
            "degree-4 cofactor does not annihilate the parametrization")
    if _squarefree_witness(F) is None:
        raise ImplicitizationFailure(
            "no squarefree line section; the image is non-reduced")
    return ImplicitQuartic(F)


def _annihilates(F, c):
    composed = F.compose_curve(c.forms)
    return all(x.is_zero() for x in composed.coeffs)
