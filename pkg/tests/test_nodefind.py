"""Node recovery: pencil minors, preimage pairing, positions."""

import random
from fractions import Fraction as F

import pytest

from nodalquartic.curves import (
    Curve, NodeSeed, apply_transform, realize_class, realize_from_seed,
    reparametrize,
)
from nodalquartic.diagram import enumerate_all
from nodalquartic.errors import ImaginaryNodePresent, NotGeneric
from nodalquartic.forms import BinaryForm, ProjPoint1
from nodalquartic.gaussian import GaussianRational as G
from nodalquartic.nodefind import (
    ConjugateQuadratic, MinorForm, Node, find_nodes, minor_forms,
    preimages_of_point,
)
from nodalquartic.roots import AlgebraicReal


def mk(rows):
    return Curve(*(BinaryForm.from_real([F(v) for v in r]) for r in rows))


def chart(x):
    return ProjPoint1(G(F(x)), G(1))


def imag(y):
    return ProjPoint1(G(0, F(y)), G(1))


def approx(v, digits=10):
    """Float value of a Fraction or AlgebraicReal coordinate."""
    if isinstance(v, F):
        return float(v)
    if v.exact is not None:
        return float(v.exact)
    w = v.refine_below(F(1, 10 ** digits))
    return float((w.lo + w.hi) / 2)


def theta(c, x):
    return [sum(float(v) * x ** j for j, v in enumerate(f.chart_poly()))
            for f in c.forms]


def cross_err(v, w):
    cr = [v[1] * w[2] - v[2] * w[1], v[2] * w[0] - v[0] * w[2],
          v[0] * w[1] - v[1] * w[0]]
    sc = max(abs(x) for x in v) * max(abs(x) for x in w)
    return max(abs(x) for x in cr) / sc


# -- pencil minors -------------------------------------------------------------


def test_minor_is_exact_quotient():
    # G_ij * (s v - t u) == p_i(s,t) p_j(u,v) - p_j(s,t) p_i(u,v)
    rng = random.Random(1)
    c = mk([[1, 2, 4, -2, 1], [-1, -1, -1, -4, 3], [3, 3, -3, -1, 2]])
    g01 = MinorForm(c.p0, c.p1)
    for _ in range(25):
        s, t, u, v = (F(rng.randint(-9, 9), rng.randint(1, 5))
                      for _ in range(4))
        lhs = g01.evaluate(ProjPoint1(G(s), G(t)),
                           ProjPoint1(G(u), G(v))) * (s * v - t * u)
        pi = [f.evaluate(G(s), G(t)).re for f in c.forms]
        pj = [f.evaluate(G(u), G(v)).re for f in c.forms]
        assert lhs == pi[0] * pj[1] - pj[0] * pi[1]


def test_minor_symmetry_and_chart():
    c = realize_class(enumerate_all(3)[0])
    for gm in minor_forms(c):
        m = gm.matrix
        assert all(m[k][l] == m[l][k] for k in range(4) for l in range(4))
        for x1, x2 in [(F(2), F(-3)), (F(1, 2), F(5)), (F(0), F(7, 3))]:
            assert gm.eval_chart(x1, x2) == gm.eval_chart(x2, x1)


def test_minor_sym_chart_matches_chart():
    # rewriting in (a + b, a b) agrees with direct chart evaluation
    rng = random.Random(2)
    c = mk([[2, 1, -4, 3, 1], [-2, -3, 3, -4, -1], [0, -2, -1, 2, 2]])
    for gm in minor_forms(c):
        d = gm.sym_chart()
        for _ in range(10):
            a, b = F(rng.randint(-8, 8), 3), F(rng.randint(-8, 8), 2)
            x, y = a + b, a * b
            got = sum(cv * x ** i * y ** j for (i, j), cv in d.items())
            assert got == gm.eval_chart(a, b)


def test_minor_vanishes_on_identified_pairs():
    c = realize_from_seed(NodeSeed([(chart(0), chart(1)),
                                    (chart(2), chart(3)),
                                    (chart(4), chart(5))]))
    gms = minor_forms(c)
    for gm in gms:
        for a, b in [(F(0), F(1)), (F(2), F(3)), (F(4), F(5))]:
            assert gm.eval_chart(a, b) == 0
    # a single minor can vanish elsewhere, but never all three at once
    assert any(gm.eval_chart(F(0), F(2)) != 0 for gm in gms)
    assert any(gm.eval_chart(F(1), F(7)) != 0 for gm in gms)


def test_minor_rejects_nonreal_input():
    s = BinaryForm([G(0, F(1))] + [G(1)] * 4)
    with pytest.raises(ValueError):
        MinorForm(s, s)


# -- seeded recovery (composition oracle) --------------------------------------


def test_recover_all_nine_classes():
    for cid in enumerate_all(3):
        c = realize_class(cid)
        nodes = find_nodes(c)
        assert len(nodes) == 3
        kinds = [n.kind for n in nodes]
        k = cid.chord_count
        assert kinds.count("crossing") == k
        assert kinds.count("solitary") == 3 - k
        # crossing preimages are the seeded chart values, paired by the word
        word = cid.word
        expect = []
        for lab in sorted(set(word), key=word.index):
            ps = [i for i, ch in enumerate(word) if ch == lab]
            expect.append((F(ps[0]), F(ps[1])))
        expect.sort()
        got = []
        for n in nodes[:k]:
            a, b = n.chart_preimages()
            qa, qb = a.try_rational(), b.try_rational()
            assert qa is not None and qb is not None
            got.append((min(qa, qb), max(qa, qb)))
        assert got == expect  # sorted by smaller preimage already
        # solitary pairs conjugate, positive-imaginary member first,
        # ordered by (trace, norm)
        keys = []
        for n in nodes[k:]:
            p, pb = n.preimages
            cv = p.chart_value()
            assert cv.im > 0
            assert pb.chart_value() == cv.conjugate()
            keys.append((2 * cv.re, cv.re ** 2 + cv.im ** 2))
        assert keys == sorted(keys)
        # positions are exactly the three coordinate points
        pos = sorted(n.position for n in nodes)
        assert pos == [(F(0), F(0), F(1)), (F(0), F(1), F(0)),
                       (F(1), F(0), F(0))]


def test_transform_moves_positions_not_preimages():
    c = realize_class(enumerate_all(3)[0])  # word 112233
    m = ((1, 2, 1), (0, 1, 3), (1, 1, 1))
    nodes = find_nodes(apply_transform(c, m))
    for i, n in enumerate(nodes):
        a, b = n.chart_preimages()
        assert (a.try_rational(), b.try_rational()) == (F(2 * i), F(2 * i + 1))
        img = [F(m[r][i]) for r in range(3)]
        top = max(img, key=abs)
        assert n.position == tuple(v / top for v in img)


def test_reparametrize_moves_preimages():
    c = realize_class(enumerate_all(3)[0])
    d = reparametrize(c, ((2, 1), (1, 1)))  # old = (2x + 1)/(x + 1)
    nodes = find_nodes(d)
    got = []
    for n in nodes:
        a, b = n.chart_preimages()
        pair = tuple("inf" if p.infinite else p.try_rational()
                     for p in (a, b))
        got.append(pair)
    # old values 0..5 pull back through x = (old - 1)/(2 - old)
    assert got == [(F(-2), "inf"), (F(-3, 2), F(-4, 3)), (F(-1, 2), F(0))]
    # positions are still the coordinate points
    assert sorted(n.position for n in nodes) == [
        (F(0), F(0), F(1)), (F(0), F(1), F(0)), (F(1), F(0), F(0))]


def test_seeded_pair_through_infinity():
    seed = NodeSeed([(ProjPoint1.infinity(), chart(0)), (chart(1), chart(3)),
                     (imag(1), imag(-1))])
    nodes = find_nodes(realize_from_seed(seed))
    kinds = [n.kind for n in nodes]
    assert kinds == ["crossing", "crossing", "solitary"]
    a, b = nodes[0].chart_preimages()
    assert a.try_rational() == 0 and b.infinite
    a, b = nodes[1].chart_preimages()
    assert (a.try_rational(), b.try_rational()) == (1, 3)


# -- curves with irrational node data ------------------------------------------


def test_regression_algebraic_pairing():
    # partner assignment across two crossings with irrational preimages;
    # an earlier interval heuristic swapped them
    c = mk([[1, 2, 4, -2, 1], [-1, -1, -1, -4, 3], [3, 3, -3, -1, 2]])
    nodes = find_nodes(c)
    assert [n.kind for n in nodes] == ["crossing", "crossing", "solitary"]
    expect = [(-3.5147, 6.2415), (-1.9980, 0.5966)]
    for n, (ea, eb) in zip(nodes, expect):
        a, b = n.chart_preimages()
        fa, fb = approx(a), approx(b)
        assert abs(fa - ea) < 1e-3 and abs(fb - eb) < 1e-3
        assert cross_err(theta(c, fa), theta(c, fb)) < 1e-9
    sol = nodes[2]
    assert isinstance(sol.preimages, ConjugateQuadratic)
    # conjugate pair 0.33460 +- 0.43505 i, checked against the complex
    # roots of the preimage form
    assert abs(approx(sol.preimages.trace) - 0.669207) < 1e-5
    assert abs(approx(sol.preimages.norm) - 0.301232) < 1e-5


def test_random_curves_pair_consistently():
    # positions and partners cross-checked by direct evaluation
    rng = random.Random(7)
    checked = 0
    for _ in range(20):
        rows = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(3)]
        try:
            c = mk(rows)
            nodes = find_nodes(c)
        except (ValueError, NotGeneric, ImaginaryNodePresent):
            continue
        assert len(nodes) == 3
        for n in nodes:
            if n.kind != "crossing":
                continue
            a, b = n.chart_preimages()
            if a.infinite or b.infinite:
                continue
            fa, fb = approx(a), approx(b)
            v, w = theta(c, fa), theta(c, fb)
            assert cross_err(v, w) < 1e-6, rows
            pos = [approx(x) for x in n.position]
            k = max(range(3), key=lambda i: abs(pos[i]))
            assert max(abs(v[i] / v[k] - pos[i] / pos[k])
                       for i in range(3)) < 1e-5, rows
            checked += 1
    assert checked >= 8


def test_imaginary_nodes_detected():
    with pytest.raises(ImaginaryNodePresent):
        find_nodes(mk([[-1, -2, 0, 2, -3], [-3, 3, 1, -3, -1],
                       [1, -3, 1, -2, -3]]))


def test_cusp_rejected():
    # coincident preimage pair: q0 = x^2, q1 = (x-1)(x-2), q2 = (x-3)(x-4)
    cusp = mk([[24, -50, 35, -10, 1], [0, 0, 12, -7, 1], [0, 0, 2, -3, 1]])
    with pytest.raises(NotGeneric):
        find_nodes(cusp)


def test_two_to_one_cover_rejected():
    # all pairs on the imaginary axis: theta(-x) == theta(x)
    even = mk([[36, 0, 13, 0, 1], [9, 0, 10, 0, 1], [4, 0, 5, 0, 1]])
    with pytest.raises(NotGeneric) as e:
        find_nodes(even)
    assert "birational" in str(e.value)


# -- fibers and serialization --------------------------------------------------


def test_preimages_of_point():
    c = realize_class(enumerate_all(3)[0])
    # node fibers are the seeded quadratics: pair 0 -> [1:0:0], pair 2 -> [0:0:1]
    g = preimages_of_point(c, (F(1), F(0), F(0)))
    assert g.degree == 2
    assert all(g.evaluate(G(F(v)), G(1)).is_zero() for v in (0, 1))
    g = preimages_of_point(c, (F(0), F(0), F(1)))
    assert g.degree == 2
    assert all(g.evaluate(G(F(v)), G(1)).is_zero() for v in (4, 5))
    # theta([1:0]) = [1:1:1] for monic seeded quartics, a smooth point
    g = preimages_of_point(c, (F(1), F(1), F(1)))
    assert g.degree == 1
    assert preimages_of_point(c, (F(1), F(5), F(7))).degree == 0
    with pytest.raises(ValueError):
        preimages_of_point(c, (F(0), F(0), F(0)))


def test_node_json_roundtrip():
    c = mk([[1, 2, 4, -2, 1], [-1, -1, -1, -4, 3], [3, 3, -3, -1, 2]])
    for n in find_nodes(c):
        m = Node.from_json(n.to_json())
        assert m.kind == n.kind
        for u, v in zip(m.position, n.position):
            assert abs(approx(u) - approx(v)) < 1e-9
        if n.is_crossing():
            for u, v in zip(m.chart_preimages(), n.chart_preimages()):
                assert abs(approx(u) - approx(v)) < 1e-9
        else:
            assert abs(approx(m.preimages.trace)
                       - approx(n.preimages.trace)) < 1e-9
    # rational data round trips exactly
    for n in find_nodes(realize_class(enumerate_all(3)[5])):
        m = Node.from_json(n.to_json())
        assert m.position == n.position
