"""Degree-4 parametrized curves and their construction from node seeds.

A curve is a triple of real degree-4 binary forms with no common root,
mapping the real parameter line into the projective plane.  A node seed
lists three unordered preimage pairs; the curve built from it has its double
points at the three coordinate points of the plane: with q_i the quadratic
vanishing on pair i, the triple is p0 = q1*q2, p1 = q0*q2, p2 = q0*q1, so
both members of pair i land on the i-th coordinate point.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import ClassId
from .errors import DegenerateSeed, InvalidCurve
from .forms import BinaryForm, ProjPoint1, form_gcd
from .gaussian import GR_ONE, GaussianRational


class Curve:
    """Immutable triple of real degree-4 forms with constant common gcd."""

    __slots__ = ("p0", "p1", "p2")

    def __init__(self, p0: BinaryForm, p1: BinaryForm, p2: BinaryForm):
        forms = (p0, p1, p2)
        for f in forms:
            if f.degree != 4:
                raise InvalidCurve(f"component degree {f.degree}, need 4")
            if not f.is_real():
                raise InvalidCurve("components must have real coefficients")
            if f.is_zero():
                raise InvalidCurve("zero component")
        g = form_gcd(form_gcd(p0, p1), p2)
        if g.degree != 0:
            raise InvalidCurve("components share a root")
        if _all_proportional(forms):
            raise InvalidCurve("components are proportional (image is a point)")
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    def __setattr__(self, *a):
        raise AttributeError("Curve is immutable")

    @property
    def forms(self):
        return (self.p0, self.p1, self.p2)

    def evaluate(self, a, b=None):
        """Image point of the parameter [a:b] as a coordinate triple."""
        if b is None and isinstance(a, ProjPoint1):
            a, b = a.a, a.b
        return tuple(f.evaluate(a, b) for f in self.forms)

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return all(x.coeffs == y.coeffs for x, y in zip(self.forms, other.forms))

    def __repr__(self):
        return f"Curve({self.p0!r}, {self.p1!r}, {self.p2!r})"

    def to_json(self):
        return {"degree": 4, "p0": self.p0.to_json(), "p1": self.p1.to_json(),
                "p2": self.p2.to_json()}

    @staticmethod
    def from_json(obj):
        if obj.get("degree") != 4:
            raise InvalidCurve(f"unsupported degree {obj.get('degree')}")
        return Curve(*(BinaryForm.from_json(obj[k]) for k in ("p0", "p1", "p2")))


def _all_proportional(forms):
    base = next((f for f in forms if not f.is_zero()), None)
    for f in forms:
        # f proportional to base <=> cross products of coefficients vanish
        for i in range(len(base.coeffs)):
            for j in range(i + 1, len(base.coeffs)):
                lhs = f.coeffs[i] * base.coeffs[j]
                rhs = f.coeffs[j] * base.coeffs[i]
                if lhs != rhs:
                    return False
    return True


class NodeSeed:
    """Three unordered preimage pairs, each real-real or conjugate."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        pairs = tuple(tuple(p) for p in pairs)
        if len(pairs) != 3 or any(len(p) != 2 for p in pairs):
            raise DegenerateSeed("need exactly three pairs of points")
        pts = []
        for a, b in pairs:
            if not isinstance(a, ProjPoint1) or not isinstance(b, ProjPoint1):
                raise DegenerateSeed("pair members must be projective points")
            if a.is_real() != b.is_real():
                raise DegenerateSeed("pair mixes a real and an imaginary point")
            if not a.is_real() and not a.conjugate().same_point(b):
                raise DegenerateSeed("imaginary pair members must be conjugate")
            pts.extend((a, b))
        for i in range(6):
            for j in range(i + 1, 6):
                if pts[i].same_point(pts[j]):
                    raise DegenerateSeed(f"seed points {i} and {j} coincide")
        object.__setattr__(self, "pairs", pairs)

    def __setattr__(self, *a):
        raise AttributeError("NodeSeed is immutable")

    def quadratics(self):
        """The three real quadratics q_i vanishing on pair i."""
        out = []
        for a, b in self.pairs:
            q = BinaryForm.from_roots([a, b])
            if not q.is_real():
                raise DegenerateSeed("pair quadratic is not real")
            out.append(q)
        return tuple(out)

    def to_json(self):
        return {"pairs": [[a.to_json(), b.to_json()] for a, b in self.pairs]}

    @staticmethod
    def from_json(obj):
        pairs = [[ProjPoint1.from_json(p) for p in pair] for pair in obj["pairs"]]
        return NodeSeed(pairs)


def realize_from_seed(seed: NodeSeed) -> Curve:
    """Curve with nodes at the coordinate points and the seeded preimages."""
    q0, q1, q2 = seed.quadratics()
    return Curve(q1 * q2, q0 * q2, q0 * q1)


def _chart_point(x):
    return ProjPoint1(GaussianRational(Fraction(x)), GR_ONE)


def seed_for_word(word, solitary, real_values=None, imag_values=None):
    """Seed whose diagram is the given word read at ascending chart values.

    Position j of the word sits at chart value real_values[j] (default j);
    the two positions sharing a label form a pair.  Solitary pairs are
    conjugate points at +/- i*imag_values[m] (default 1, 2, 3).  With no
    chords at all, the default conjugate pairs are spread to centers
    0, 1, 2 (pair m at m + (m+1)i): keeping them all on the imaginary
    axis would leave the parameter involution x -> -x, which folds the
    image onto a conic.
    """
    if isinstance(word, str):
        word = tuple(int(c) for c in word)
    k = len(word) // 2
    if real_values is None:
        real_values = list(range(2 * k))
    pos = {}
    for j, lab in enumerate(word):
        pos.setdefault(lab, []).append(j)
    pairs = []
    for lab in sorted(pos):
        a, b = pos[lab]
        pairs.append((_chart_point(real_values[a]), _chart_point(real_values[b])))
    for m in range(solitary):
        if imag_values is not None:
            y = Fraction(imag_values[m])
            x = Fraction(0)
        else:
            y = Fraction(m + 1)
            x = Fraction(m) if k == 0 else Fraction(0)
        p = ProjPoint1(GaussianRational(x, y), GR_ONE)
        pairs.append((p, p.conjugate()))
    return NodeSeed(pairs)


def realize_class(c: ClassId) -> Curve:
    """Default realization: word positions at chart values 0..2k-1 and
    conjugate pairs at the seed_for_word defaults."""
    return realize_from_seed(seed_for_word(c.word, c.solitary))


def apply_transform(c: Curve, m) -> Curve:
    """Post-compose with the plane map x_i -> sum_j m[i][j] x_j."""
    rows = [[Fraction(x) for x in row] for row in m]
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("need a 3x3 matrix")
    if det3(rows) == 0:
        raise ValueError("plane transform must be invertible")
    out = []
    for row in rows:
        f = BinaryForm.zero(4)
        for coef, p in zip(row, c.forms):
            if coef:
                f = f + p.scale(GaussianRational(coef))
        out.append(f)
    return Curve(*out)


def reparametrize(c: Curve, m) -> Curve:
    """Pre-compose with the parameter substitution (s,t) -> m(s,t)."""
    a, b = Fraction(m[0][0]), Fraction(m[0][1])
    cc, d = Fraction(m[1][0]), Fraction(m[1][1])
    if a * d - b * cc == 0:
        raise ValueError("parameter substitution must be invertible")
    mm = ((a, b), (cc, d))
    return Curve(*(f.compose_linear(mm) for f in c.forms))


def det3(m):
    m = [[Fraction(x) for x in row] for row in m]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def invert3(m):
    """Inverse of a 3x3 rational matrix (adjugate over determinant)."""
    m = [[Fraction(x) for x in row] for row in m]
    d = det3(m)
    if d == 0:
        raise ValueError("singular matrix")
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            a = [[m[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
            minor = a[0][0] * a[1][1] - a[0][1] * a[1][0]
            cof[i][j] = (-1) ** (i + j) * minor
    return tuple(tuple(cof[j][i] / d for j in range(3)) for i in range(3))


def mat_mul3(a, b):
    return tuple(tuple(sum(Fraction(a[i][k]) * Fraction(b[k][j]) for k in range(3))
                       for j in range(3)) for i in range(3))
