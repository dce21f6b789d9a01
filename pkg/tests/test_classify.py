"""Classification and normalization of curves."""

import random
from fractions import Fraction as F

import pytest

from nodalquartic.classify import (
    Classification, _transform_to_coordinates, classify, normalize,
)
from nodalquartic.curves import (
    Curve, NodeSeed, apply_transform, mat_mul3, realize_class,
    realize_from_seed, reparametrize,
)
from nodalquartic.diagram import ClassId, enumerate_all
from nodalquartic.errors import DegenerateNodes, IrrationalNodes
from nodalquartic.forms import BinaryForm, ProjPoint1
from nodalquartic.gaussian import GaussianRational as G

IDENT = ((F(1), F(0), F(0)), (F(0), F(1), F(0)), (F(0), F(0), F(1)))


def chart(x):
    return ProjPoint1(G(F(x)), G(1))


def imag(y):
    return ProjPoint1(G(0, F(y)), G(1))


def mk(rows):
    return Curve(*(BinaryForm.from_real([F(v) for v in r]) for r in rows))


def regression_curve():
    return mk([[1, 2, 4, -2, 1], [-1, -1, -1, -4, 3], [3, 3, -3, -1, 2]])


def test_round_trip_all_nine():
    seen = set()
    for cid in enumerate_all(3):
        got = classify(realize_class(cid))
        assert got.class_id == cid
        assert got.diagram.chord_count == cid.chord_count
        assert len(got.circular_order) == 2 * cid.chord_count
        seen.add(got.class_id)
    assert len(seen) == 9


def test_interleaved_seed():
    s = NodeSeed([(chart(0), chart(3)), (chart(1), chart(4)),
                  (chart(2), chart(5))])
    assert classify(realize_from_seed(s)).class_id == ClassId("123123", 0)


def test_single_chord_seed():
    s = NodeSeed([(imag(1), imag(-1)), (imag(2), imag(-2)),
                  (chart(0), chart(1))])
    assert classify(realize_from_seed(s)).class_id == ClassId("11", 2)


def test_projective_invariance():
    rng = random.Random(3)
    for cid in (enumerate_all(3)[1], enumerate_all(3)[6]):
        c = realize_class(cid)
        for _ in range(3):
            while True:
                t = tuple(tuple(rng.randint(-3, 3) for _ in range(3))
                          for _ in range(3))
                try:
                    d = apply_transform(c, t)
                    break
                except ValueError:
                    continue
            assert classify(d).class_id == cid


def test_reparametrization_invariance():
    c = realize_class(enumerate_all(3)[0])
    cid = ClassId("112233", 0)
    # shift, flip (orientation reversal), and a map through [1:0]
    for m in (((1, 7), (0, 1)), ((0, 1), (1, 0)), ((2, 1), (1, 1))):
        assert classify(reparametrize(c, m)).class_id == cid


def test_classifies_irrational_nodes_exactly():
    # crossings near (-3.51, 6.24) and (-2.00, 0.60): the second pair
    # sits inside the first, so the chords are nested, not interleaved
    got = classify(regression_curve())
    assert got.class_id == ClassId("1122", 1)
    order = got.circular_order
    assert all(order[i].less_than(order[i + 1])
               for i in range(len(order) - 1))


def test_classification_json_shape():
    got = classify(realize_class(enumerate_all(3)[5]))
    obj = got.to_json()
    assert obj["class"] == "2-1122|s1"
    assert obj["word"] == "1122"
    assert obj["solitary"] == 1
    assert len(obj["nodes"]) == 3


def test_normalize_identity_on_realized():
    for cid in enumerate_all(3):
        t, cp = normalize(realize_class(cid))
        assert t == IDENT
        assert all(x.coeffs == y.coeffs
                   for x, y in zip(cp.forms, realize_class(cid).forms))


def test_normalize_inverts_transform():
    c = realize_class(enumerate_all(3)[0])
    for t in (((2, 1, 0), (1, 1, 3), (0, 1, 1)),
              ((1, 0, 2), (0, 3, 1), (1, 1, 0))):
        t = tuple(tuple(F(v) for v in row) for row in t)
        rec, cp = normalize(apply_transform(c, t))
        prod = mat_mul3(rec, t)
        # recovered transform is the inverse up to per-row scale
        assert all(prod[i][j] == 0 for i in range(3) for j in range(3)
                   if i != j)
        assert all(prod[i][i] != 0 for i in range(3))
        assert classify(cp).class_id == classify(c).class_id
        for n in classify(cp).nodes:
            assert sorted(n.position) == [F(0), F(0), F(1)]


def test_normalized_factor_identity():
    # p0 = c0 q1 q2, p1 = c1 q0 q2, p2 = c2 q0 q1 for the node fibers q_i
    from nodalquartic.nodefind import preimages_of_point
    c = realize_class(enumerate_all(3)[3])
    _, cp = normalize(apply_transform(c, ((1, 2, 0), (0, 1, 1), (1, 0, 1))))
    q = [preimages_of_point(cp, tuple(F(1 if j == i else 0) for j in range(3)))
         for i in range(3)]
    assert all(f.degree == 2 for f in q)
    pairs = [(1, 2), (0, 2), (0, 1)]
    for f, (i, j) in zip(cp.forms, pairs):
        assert f.monic().coeffs == (q[i] * q[j]).monic().coeffs


def test_normalize_irrational_nodes():
    with pytest.raises(IrrationalNodes):
        normalize(regression_curve())


def test_degenerate_positions_rejected():
    cols = [[F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(1), F(1), F(0)]]
    with pytest.raises(DegenerateNodes):
        _transform_to_coordinates(cols)
    ok = _transform_to_coordinates([[F(1), F(0), F(0)], [F(0), F(1), F(0)],
                                    [F(1), F(1), F(1)]])
    assert ok is not None
