"""Implicit degree-4 equations of the parametrized curves.

The independent oracle here is a nullspace computation: the identity
F(theta(s, t)) == 0 is 17 linear conditions (one per coefficient of a
degree-16 binary form) on the 15 coefficients of a ternary quartic, and
for a generic three-node curve the solution space is one-dimensional.
That route shares no code with the resultant-based implicitizer.
"""

import random
from fractions import Fraction as F

import pytest

from nodalquartic.curves import (
    Curve, apply_transform, realize_class, reparametrize,
)
from nodalquartic.diagram import ClassId, enumerate_all
from nodalquartic.errors import ImplicitizationFailure
from nodalquartic.forms import BinaryForm
from nodalquartic.implicit import ImplicitQuartic, TernaryForm, implicitize

# degree-4 exponent triples, x0-major so x0^4 comes first
MONOS = [(i, j, 4 - i - j) for i in range(4, -1, -1) for j in range(4 - i, -1, -1)]


def mk(rows):
    return Curve(*(BinaryForm.from_real([F(v) for v in r]) for r in rows))


def asc(form):
    """Ascending chart coefficients of a real binary form."""
    return list(reversed(form.real_fractions()))


def pmul(a, b):
    out = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def ppow(a, n):
    out = [F(1)]
    for _ in range(n):
        out = pmul(out, a)
    return out


def kernel_quartic(c):
    """Unique-up-to-scale ternary quartic annihilating theta, by elimination."""
    ps = [asc(c.p0), asc(c.p1), asc(c.p2)]
    cols = []
    for i, j, k in MONOS:
        prod = pmul(pmul(ppow(ps[0], i), ppow(ps[1], j)), ppow(ps[2], k))
        prod += [F(0)] * (17 - len(prod))
        cols.append(prod)
    # rows: one linear condition per power of the composed form
    m = [[cols[col][r] for col in range(15)] for r in range(17)]
    pivots = []
    row = 0
    for col in range(15):
        piv = next((r for r in range(row, 17) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for r in range(17):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    free = [col for col in range(15) if col not in pivots]
    assert len(free) == 1, "kernel dimension is not one"
    fc = free[0]
    vec = [F(0)] * 15
    vec[fc] = F(1)
    for r, col in enumerate(pivots):
        vec[col] = -m[r][fc]
    return dict(zip(MONOS, vec))


def primitive(coeffs):
    """Integer-primitive, sign-fixed coefficient tuple in MONOS order."""
    vals = [coeffs.get(m, F(0)) for m in MONOS]
    den = 1
    for v in vals:
        den = den * v.denominator // __import__("math").gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = __import__("math").gcd(g, abs(v))
    assert g
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def coeff_dict(q):
    return {m: q.F.coefficient(*m) for m in MONOS}


def test_resultant_route_matches_kernel_oracle_on_reps():
    for cid in enumerate_all():
        c = realize_class(cid)
        assert primitive(coeff_dict(implicitize(c))) == primitive(kernel_quartic(c))


def test_resultant_route_matches_kernel_oracle_under_transform():
    rng = random.Random(11)
    for cid in enumerate_all():
        c = realize_class(cid)
        while True:
            t = tuple(tuple(F(rng.randint(-3, 3)) for _ in range(3))
                      for _ in range(3))
            det = (t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1])
                   - t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0])
                   + t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]))
            if det:
                break
        moved = apply_transform(c, t)
        assert primitive(coeff_dict(implicitize(moved))) == \
            primitive(kernel_quartic(moved))


def test_implicit_equation_invariant_under_reparametrization():
    c = realize_class(ClassId("112233", 0))
    moved = reparametrize(c, ((F(2), F(1)), (F(1), F(1))))
    assert primitive(coeff_dict(implicitize(c))) == \
        primitive(coeff_dict(implicitize(moved)))


def test_vanishes_at_sample_points():
    for cid in enumerate_all():
        c = realize_class(cid)
        q = implicitize(c)
        for s, t in [(1, 1), (2, 1), (1, 0), (0, 1), (-3, 5)]:
            pt = [form.evaluate(F(s), F(t)).re for form in c.forms]
            assert q.F.evaluate(*pt) == 0


def test_composition_with_theta_is_zero_form():
    c = realize_class(ClassId("1212", 1))
    q = implicitize(c)
    ps = [asc(c.p0), asc(c.p1), asc(c.p2)]
    total = [F(0)] * 17
    for (i, j, k), coeff in coeff_dict(q).items():
        if not coeff:
            continue
        prod = pmul(pmul(ppow(ps[0], i), ppow(ps[1], j)), ppow(ps[2], k))
        for r, v in enumerate(prod):
            total[r] += coeff * v
    assert all(v == 0 for v in total)


def test_normalized_reps_have_nodes_at_coordinate_points():
    # multiplicity two at each coordinate point kills x_i^4 and x_i^3 x_j
    dead = [m for m in MONOS if max(m) >= 3]
    assert len(dead) == 9
    for cid in enumerate_all():
        q = implicitize(realize_class(cid))
        for m in dead:
            assert q.F.coefficient(*m) == 0


def test_irreducible_over_rationals():
    import sympy

    x0, x1, x2 = sympy.symbols("x0 x1 x2")
    rng = random.Random(23)
    for cid in enumerate_all():
        c = realize_class(cid)
        if rng.random() < 0.5:
            c = reparametrize(c, ((F(1), F(rng.randint(1, 3))),
                                  (F(0), F(1))))
        q = implicitize(c)
        expr = sum(sympy.Rational(v.numerator, v.denominator)
                   * x0 ** i * x1 ** j * x2 ** k
                   for (i, j, k), v in coeff_dict(q).items())
        _, factors = sympy.factor_list(expr, x0, x1, x2)
        assert len(factors) == 1 and factors[0][1] == 1


def test_double_cover_of_conic_rejected():
    c = mk([[36, 0, 13, 0, 1], [9, 0, 10, 0, 1], [4, 0, 5, 0, 1]])
    with pytest.raises(ImplicitizationFailure):
        implicitize(c)


def test_ternary_form_arithmetic():
    a = TernaryForm.from_terms(2, {(2, 0, 0): F(1), (0, 2, 0): F(1),
                                   (0, 0, 2): F(-1)})
    b = TernaryForm.from_terms(1, {(1, 0, 0): F(2), (0, 0, 1): F(3)})
    prod = a * b
    assert prod.degree == 3
    for x in range(-2, 3):
        for y in range(-2, 3):
            va = a.evaluate(F(x), F(y), F(1))
            vb = b.evaluate(F(x), F(y), F(1))
            assert prod.evaluate(F(x), F(y), F(1)) == va * vb
    s = a + a.scale(F(3))
    assert s.evaluate(F(2), F(1), F(1)) == 4 * a.evaluate(F(2), F(1), F(1))
    d = a.partial(1)
    assert d.degree == 1
    assert d.evaluate(F(0), F(5), F(0)) == 10


def test_restrict_to_line_is_binary_form():
    a = TernaryForm.from_terms(2, {(2, 0, 0): F(1), (0, 2, 0): F(1),
                                   (0, 0, 2): F(-4)})
    r = a.restrict_line((F(1), F(0), F(0)), (F(0), F(1), F(1)))
    assert r.degree == 2
    # u^2 + v^2 - 4 v^2
    assert r.real_fractions() == [F(1), F(0), F(-3)]


def test_json_round_trip():
    q = implicitize(realize_class(ClassId("1122", 1)))
    back = TernaryForm.from_json(q.F.to_json())
    assert primitive({m: back.coefficient(*m) for m in MONOS}) == \
        primitive(coeff_dict(q))
