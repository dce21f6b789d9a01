"""Transform paths, genericity certificates, and certified isotopies."""

import json
import os
import random
from fractions import Fraction as F

import pytest

from nodalquartic.classify import classify, normalize
from nodalquartic.curves import (
    Curve, NodeSeed, apply_transform, det3, realize_class, realize_from_seed,
    seed_for_word,
)
from nodalquartic.diagram import ClassId, enumerate_all
from nodalquartic.errors import (
    DifferentClass, InvalidCurve, IrrationalNodes, NotGeneric,
)
from nodalquartic.forms import BinaryForm, ProjPoint1
from nodalquartic.gaussian import GaussianRational as G
from nodalquartic.isotopy import build_path, transform_path, verify_generic
from nodalquartic.nodefind import find_nodes

IDENT = tuple(tuple(F(int(i == j)) for j in range(3)) for i in range(3))


def pt(x):
    return ProjPoint1.from_chart(F(x))


def imag(x, y):
    return ProjPoint1(G(F(x), F(y)), G(1))


def mk(rows):
    return Curve(*(BinaryForm.from_real([F(v) for v in r]) for r in rows))


def diag(a, b, c):
    return tuple(tuple(F(v) if i == j else F(0) for j, v in enumerate(row))
                 for i, row in enumerate(((a, 0, 0), (0, b, 0), (0, 0, c))))


def neg(m):
    return tuple(tuple(-x for x in row) for row in m)


def crossing_values(c):
    vals = []
    for n in find_nodes(c):
        if not n.is_crossing():
            continue
        for v in n.chart_preimages():
            assert not v.infinite
            q = v.try_rational()
            assert q is not None
            vals.append(q)
    return sorted(vals)


# -- transform paths ----------------------------------------------------------


def test_transform_identity_constant():
    assert transform_path(IDENT, 4) == [IDENT] * 4


def test_transform_diagonal_straight():
    path = transform_path(diag(2, 1, 1), 5)
    assert path == [diag(1 + F(i, 4), 1, 1) for i in range(5)]


def test_transform_negative_det_lands_on_negation():
    t = diag(1, 1, -1)
    path = transform_path(t, 9)
    assert path[0] == IDENT
    assert path[-1] == neg(t)
    assert all(det3(m) != 0 for m in path)


def test_transform_random_always_invertible():
    rng = random.Random(5)
    done = 0
    while done < 40:
        t = tuple(tuple(F(rng.randint(-4, 4), rng.choice((1, 2, 3)))
                        for _ in range(3)) for _ in range(3))
        d = det3(t)
        if d == 0:
            continue
        path = transform_path(t, 7)
        assert len(path) == 7
        assert path[0] == IDENT
        assert path[-1] == (t if d > 0 else neg(t))
        assert all(det3(m) != 0 for m in path)
        done += 1


def test_transform_needs_two_samples():
    with pytest.raises(ValueError):
        transform_path(IDENT, 1)


def test_transform_rejects_singular():
    with pytest.raises(ValueError):
        transform_path(diag(1, 1, 0), 4)


# -- genericity certificates --------------------------------------------------


def test_certificates_for_all_classes():
    for cid in enumerate_all(3):
        cert = verify_generic(realize_class(cid))
        k = cid.chord_count
        assert list(cert.node_kinds) == (["crossing"] * k
                                         + ["solitary"] * (3 - k))
        assert cert.triple_gcd_degree == 0
        assert len(cert.real_witness) == 2 * k
        assert sum(1 for iv in cert.real_witness if iv is None) <= 1
        finite = sorted(iv for iv in cert.real_witness if iv is not None)
        for left, right in zip(finite, finite[1:]):
            assert left[1] < right[0]
        assert len(cert.solitary_witness) == 3 - k
        for tr, nm in cert.solitary_witness:
            # negative discriminant: the pair really is off the real axis
            assert tr * tr < 4 * nm


def test_certificate_json_shape():
    cert = verify_generic(realize_class(ClassId("1122", 1)))
    d = cert.to_json()
    assert set(d) == {"node_kinds", "real_preimages", "solitary_pairs",
                      "triple_gcd_degree"}
    assert len(d["real_preimages"]) == 4
    assert len(d["solitary_pairs"]) == 1
    json.dumps(d)


def test_imaginary_crossings_not_generic():
    bad = mk([[-1, -2, 0, 2, -3], [-3, 3, 1, -3, -1], [1, -3, 1, -2, -3]])
    with pytest.raises(NotGeneric):
        verify_generic(bad)


def test_coincident_preimages_not_generic():
    # q0 = x^2: the node at [1:0:0] is a cusp, not a simple crossing
    cusp = mk([[24, -50, 35, -10, 1], [0, 0, 12, -7, 1], [0, 0, 2, -3, 1]])
    with pytest.raises(NotGeneric):
        verify_generic(cusp)


def test_shared_seed_root_rejected_at_construction():
    # pairs {0,1},{0,2},{3,4}: q0 and q1 share the root 0, so all three
    # coordinates vanish there; the curve type itself refuses the triple
    q0 = BinaryForm.from_real([F(1), F(-1), F(0)])
    q1 = BinaryForm.from_real([F(1), F(-2), F(0)])
    q2 = BinaryForm.from_real([F(1), F(-7), F(12)])
    with pytest.raises(InvalidCurve):
        Curve(q1 * q2, q0 * q2, q0 * q1)


# -- build_path ---------------------------------------------------------------


def test_constant_path():
    a = realize_class(ClassId("112233", 0))
    p = build_path(a, a, 5)
    assert len(p) == 5
    assert [t for t, _, _ in p.steps] == [F(0), F(1, 4), F(1, 2), F(3, 4),
                                          F(1)]
    assert all(c == a for _, c, _ in p.steps)
    assert all(cert.triple_gcd_degree == 0 for _, _, cert in p.steps)


def test_monotone_interpolation_112233():
    a = realize_from_seed(NodeSeed([(pt(0), pt(1)), (pt(2), pt(3)),
                                    (pt(4), pt(5))]))
    b = realize_from_seed(NodeSeed([(pt(0), pt(2)), (pt(3), pt(5)),
                                    (pt(7), pt(9))]))
    p = build_path(a, b, 9)
    assert p.steps[0][1] == a
    assert p.steps[-1][1] == b
    ts = [t for t, _, _ in p.steps]
    assert ts[0] == 0 and ts[-1] == 1
    assert all(x < y for x, y in zip(ts, ts[1:]))
    tracks = [crossing_values(c) for _, c, _ in p.steps]
    for i in range(6):
        seq = [tr[i] for tr in tracks]
        assert seq == sorted(seq) or seq == sorted(seq, reverse=True)
    for _, c, _ in p.steps:
        assert all(x.im == 0 for f in c.forms for x in f.coeffs)


def test_solitary_pair_travels_upper_half():
    a = realize_class(ClassId("1212", 1))
    b = realize_from_seed(seed_for_word("1212", 1, imag_values=[5]))
    p = build_path(a, b, 9)
    assert p.steps[0][1] == a
    assert p.steps[-1][1] == b
    norms = []
    for _, c, cert in p.steps:
        assert crossing_values(c) == [F(0), F(1), F(2), F(3)]
        (tr, nm), = cert.solitary_witness
        assert tr == 0
        norms.append(nm)
    assert norms[0] == 1 and norms[-1] == 25
    assert all(x < y for x, y in zip(norms, norms[1:]))


def test_transformed_endpoint_lands_on_normalized():
    a = realize_class(ClassId("112323", 0))
    t = ((1, 2, 1), (0, 1, 3), (1, 1, 1))
    b = apply_transform(realize_from_seed(
        seed_for_word("112323", 0, real_values=[-3, -1, 0, 2, 5, 11])), t)
    p = build_path(a, b, 7)
    tb, b1 = normalize(b)
    assert p.steps[0][1] == a
    assert p.steps[-1][1] == b1
    assert len(p.ambient["pre"]) == 7 and len(p.ambient["post"]) == 7
    assert p.ambient["pre"][0] == IDENT
    assert p.ambient["post"][0] == IDENT
    assert apply_transform(b, p.ambient["post"][-1]) == p.steps[-1][1]
    for m in p.ambient["pre"] + p.ambient["post"]:
        assert det3(m) != 0


def test_sign_flipped_endpoint():
    a = realize_class(ClassId("1122", 1))
    b = apply_transform(a, diag(-1, 1, 1))
    p = build_path(a, b, 7)
    _, b1 = normalize(b)
    assert p.steps[0][1] == a
    assert p.steps[-1][1] == b1


def test_rotation_alignment():
    c = realize_from_seed(NodeSeed([(pt(0), pt(2)), (pt(1), pt(5)),
                                    (pt(3), pt(4))]))
    cid = classify(c).class_id
    p = build_path(realize_class(cid), c, 7)
    assert len(p) == 7
    assert p.steps[-1][1] == c


def test_infinity_preimage():
    ci = realize_from_seed(NodeSeed([(pt(0), ProjPoint1.infinity()),
                                     (pt(1), pt(3)), (pt(2), pt(4))]))
    cid = classify(ci).class_id
    p = build_path(ci, realize_class(cid), 7)
    assert p.steps[0][1] == ci
    assert sum(1 for iv in p.steps[0][2].real_witness if iv is None) == 1


def test_random_endpoints_every_class():
    rng = random.Random(3)

    def draw(cid):
        k = len(cid.word) // 2
        while True:
            rv = sorted(F(rng.randint(-30, 60), rng.choice((1, 2, 3)))
                        for _ in range(2 * k))
            if len(set(rv)) < 2 * k:
                continue
            pos = {}
            for j, lab in enumerate(cid.word):
                pos.setdefault(lab, []).append(j)
            pairs = [(ProjPoint1.from_chart(rv[i]),
                      ProjPoint1.from_chart(rv[j]))
                     for i, j in (pos[lab] for lab in sorted(pos))]
            zs = set()
            while len(zs) < cid.solitary:
                zs.add((rng.randint(-9, 9), rng.randint(1, 9)))
            for x, y in sorted(zs):
                pairs.append((imag(x, y), imag(x, -y)))
            try:
                b = realize_from_seed(NodeSeed(pairs))
            except InvalidCurve:
                continue
            if classify(b).class_id == cid:
                return b

    for cid in enumerate_all(3):
        b = draw(cid)
        p = build_path(realize_class(cid), b, 5)
        assert len(p) == 5
        assert p.steps[0][1] == realize_class(cid)
        assert p.steps[-1][1] == b


def test_wrong_class_rejected():
    with pytest.raises(DifferentClass):
        build_path(realize_class(ClassId("112233", 0)),
                   realize_class(ClassId("123123", 0)), 5)


def test_irrational_nodes_rejected():
    reg = mk([[1, 2, 4, -2, 1], [-1, -1, -1, -4, 3], [3, 3, -3, -1, 2]])
    with pytest.raises(IrrationalNodes):
        build_path(reg, reg, 5)


def test_build_needs_two_samples():
    a = realize_class(ClassId("112233", 0))
    with pytest.raises(ValueError):
        build_path(a, a, 1)


def test_path_is_immutable():
    a = realize_class(ClassId("", 3))
    p = build_path(a, a, 2)
    with pytest.raises(AttributeError):
        p.class_id = None


def test_save_to_dir_layout(tmp_path):
    cid = ClassId("11", 2)
    a = realize_class(cid)
    p = build_path(a, a, 3)
    p.save_to_dir(str(tmp_path))
    names = sorted(os.listdir(tmp_path))
    assert names == ["manifest.json", "step_0000.json", "step_0001.json",
                     "step_0002.json"]
    with open(tmp_path / "manifest.json") as f:
        man = json.load(f)
    assert man["class"] == str(cid)
    assert man["steps"] == 3
    assert len(man["certificates"]) == 3
    assert set(man["ambient"]) == {"pre", "post"}
    with open(tmp_path / "step_0000.json") as f:
        s0 = json.load(f)
    assert s0["t"] == "0/1"
    assert s0["degree"] == 4
    assert set(s0) >= {"p0", "p1", "p2"}
