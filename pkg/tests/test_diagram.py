"""Chord diagram canonicalization against a brute-force dihedral oracle."""

import itertools

import pytest
from hypothesis import given, strategies as st

from nodalquartic.diagram import (
    ChordDiagram, ClassId, canonicalize, crossing_count, diagrams_equal,
    enumerate_all,
)
from nodalquartic.errors import MalformedWord


# -- independent oracle: full search over rotations x reflections x label
#    permutations, no first-occurrence shortcut ------------------------------

def oracle_canonical(word):
    word = tuple(word)
    k = len(word) // 2
    labels = sorted(set(word))
    best = None
    for flip in (False, True):
        seq = word[::-1] if flip else word
        for r in range(max(1, len(seq))):
            rot = seq[r:] + seq[:r]
            for perm in itertools.permutations(range(1, k + 1)):
                ren = dict(zip(labels, perm))
                img = tuple(ren[c] for c in rot)
                if best is None or img < best:
                    best = img
    return best


def all_matchings(points):
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in all_matchings(rest):
            yield [(a, points[i])] + m


def matching_word(m, n):
    word = [0] * n
    for lab, (a, b) in enumerate(m, start=1):
        word[a] = lab
        word[b] = lab
    return tuple(word)


def oracle_classes(k):
    return {oracle_canonical(matching_word(m, 2 * k))
            for m in all_matchings(list(range(2 * k)))}


def test_oracle_sanity():
    assert oracle_canonical((1, 2, 1, 2)) == (1, 2, 1, 2)
    assert oracle_canonical((2, 1, 2, 1)) == (1, 2, 1, 2)
    assert len(list(all_matchings([0, 1, 2, 3, 4, 5]))) == 15


# -- frozen derived values ---------------------------------------------------

def test_canonicalize_examples():
    assert canonicalize(ChordDiagram("231231")).word_str() == "123123"
    assert canonicalize(ChordDiagram("1122")).word_str() == "1122"
    assert canonicalize(ChordDiagram("332211")).word_str() == "112233"


def test_canonicalize_matches_oracle_exhaustive():
    for k in range(4):
        for m in all_matchings(list(range(2 * k))):
            w = matching_word(m, 2 * k)
            got = canonicalize(ChordDiagram(w)).word
            assert got == oracle_canonical(w), w


def test_canonicalize_idempotent():
    for k in range(4):
        for m in all_matchings(list(range(2 * k))):
            d = canonicalize(ChordDiagram(matching_word(m, 2 * k)))
            assert canonicalize(d).word == d.word


def test_crossing_count_examples():
    assert crossing_count(ChordDiagram("112233")) == 0
    assert crossing_count(ChordDiagram("123123")) == 3
    assert crossing_count(ChordDiagram("1212")) == 1


def test_crossing_count_canonical_invariant():
    for m in all_matchings(list(range(6))):
        d = ChordDiagram(matching_word(m, 6))
        assert crossing_count(d) == crossing_count(canonicalize(d))


def test_three_chord_classes_against_oracle():
    # nested-chords class: 123321 rotates/relabels to the smaller 112332
    words = {"".join(map(str, w)) for w in oracle_classes(3)}
    assert words == {"112233", "112332", "112323", "121323", "123123"}
    counts = sorted(crossing_count(ChordDiagram(w)) for w in words)
    assert counts == [0, 0, 1, 2, 3]


def test_enumerate_all_nine():
    classes = enumerate_all(3)
    assert len(classes) == 9
    by_k = {}
    for c in classes:
        by_k.setdefault(c.chord_count, []).append(c)
    assert [len(by_k.get(k, [])) for k in (3, 2, 1, 0)] == [5, 2, 1, 1]
    # solitary counts complement the chord counts
    for c in classes:
        assert c.chord_count + c.solitary == 3
    # cross-check each k against the oracle orbit enumeration
    for k in range(4):
        got = {c.word for c in by_k.get(k, [])}
        want = {"".join(map(str, w)) for w in oracle_classes(k)}
        assert got == want
    assert len({c.render() for c in classes}) == 9


def test_enumerate_other_totals():
    assert len(enumerate_all(0)) == 1
    assert enumerate_all(0)[0].render() == "0-|s0"
    ids = [c.render() for c in enumerate_all(1)]
    assert ids == ["1-11|s0", "0-|s1"]


def test_diagrams_equal():
    assert diagrams_equal(ChordDiagram("1212", 1), ChordDiagram("2121", 1))
    assert not diagrams_equal(ChordDiagram("1122", 1), ChordDiagram("1212", 1))
    assert diagrams_equal(ChordDiagram("", 3), ChordDiagram("", 3))
    assert not diagrams_equal(ChordDiagram("1122", 0), ChordDiagram("1122", 1))


def test_malformed_words():
    with pytest.raises(MalformedWord):
        ChordDiagram("1123")
    with pytest.raises(MalformedWord):
        ChordDiagram("111")
    with pytest.raises(MalformedWord):
        ChordDiagram("1133")  # labels must be 1..k
    with pytest.raises(MalformedWord):
        ChordDiagram.from_text("1122")  # missing |s


def test_text_roundtrip():
    d = ChordDiagram.from_text("121323|S0")
    assert d.to_text() == "121323|s0"
    assert ChordDiagram.from_text("|s3").solitary_count == 3
    c = ClassId.parse("3-123123|s0")
    assert c.render() == "3-123123|s0"
    assert ClassId.parse("0-|s3").render() == "0-|s3"
    with pytest.raises(MalformedWord):
        ClassId.parse("3-231231|s0")  # not canonical


@st.composite
def random_diagram(draw):
    k = draw(st.integers(min_value=1, max_value=5))
    pts = list(range(2 * k))
    word = [0] * (2 * k)
    labs = list(range(1, k + 1))
    draw_order = draw(st.permutations(pts))
    for lab in labs:
        a = draw_order.pop()
        b = draw_order.pop()
        word[a] = lab
        word[b] = lab
    return tuple(word)


@given(random_diagram(), st.integers(0, 11), st.booleans(), st.data())
def test_canonical_symmetry_invariance(word, rot, flip, data):
    k = len(word) // 2
    seq = word[::-1] if flip else word
    r = rot % len(seq)
    moved = seq[r:] + seq[:r]
    perm = data.draw(st.permutations(list(range(1, k + 1))))
    ren = dict(zip(range(1, k + 1), perm))
    relabeled = tuple(ren[c] for c in moved)
    a = canonicalize(ChordDiagram(word))
    b = canonicalize(ChordDiagram(relabeled))
    assert a.word == b.word
