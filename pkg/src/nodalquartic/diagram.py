"""Chord diagrams on a circle plus a count of isolated double points.

A diagram with k chords is a cyclic word of length 2k in which each of the
labels 1..k appears exactly twice; the two occurrences are the chord's
endpoints.  Canonical form is the lexicographically smallest word over all
rotations, the reflection, and relabelings.  Relabeling minimality is
achieved by renaming labels in first-occurrence order after each rotation or
flip, which is the lex-least choice among all renamings of that image.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedWord


def _validate_word(word):
    counts = {}
    for c in word:
        counts[c] = counts.get(c, 0) + 1
    for lab, n in counts.items():
        if n != 2:
            raise MalformedWord(f"label {lab} occurs {n} times, need 2")
    k = len(word) // 2
    if set(counts) != set(range(1, k + 1)):
        raise MalformedWord(f"labels must be 1..{k}, got {sorted(counts)}")


def _first_occurrence_relabel(seq):
    ren = {}
    out = []
    for c in seq:
        if c not in ren:
            ren[c] = len(ren) + 1
        out.append(ren[c])
    return tuple(out)


class ChordDiagram:
    """Immutable cyclic double-occurrence word plus solitary count."""

    __slots__ = ("word", "solitary_count")

    def __init__(self, word, solitary_count=0):
        if isinstance(word, str):
            word = tuple(int(c) for c in word)
        else:
            word = tuple(int(c) for c in word)
        if len(word) % 2:
            raise MalformedWord("odd word length")
        if solitary_count < 0:
            raise MalformedWord("negative solitary count")
        _validate_word(word)
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "solitary_count", int(solitary_count))

    def __setattr__(self, *a):
        raise AttributeError("ChordDiagram is immutable")

    @property
    def chord_count(self):
        return len(self.word) // 2

    def word_str(self):
        return "".join(str(c) for c in self.word)

    def __repr__(self):
        return f"ChordDiagram({self.to_text()!r})"

    def __eq__(self, other):
        if not isinstance(other, ChordDiagram):
            return NotImplemented
        return self.word == other.word and self.solitary_count == other.solitary_count

    def __hash__(self):
        return hash((self.word, self.solitary_count))

    def to_text(self):
        return f"{self.word_str()}|s{self.solitary_count}"

    @staticmethod
    def from_text(text):
        text = text.strip().lower()
        if "|s" not in text:
            raise MalformedWord(f"missing |s marker in {text!r}")
        word_part, sol_part = text.split("|s", 1)
        if "-" in word_part:  # tolerate a "k-" class prefix
            k_part, word_part = word_part.split("-", 1)
            if not k_part.isdigit() or int(k_part) * 2 != len(word_part):
                raise MalformedWord(f"bad chord-count prefix in {text!r}")
        if not sol_part.isdigit():
            raise MalformedWord(f"bad solitary count in {text!r}")
        if word_part and not word_part.isdigit():
            raise MalformedWord(f"bad word in {text!r}")
        return ChordDiagram(word_part, int(sol_part))


def canonicalize(d: ChordDiagram) -> ChordDiagram:
    """Lex-minimal representative over rotations, reflection, relabeling."""
    w = d.word
    n = len(w)
    if n == 0:
        return d
    best = None
    for flip in (False, True):
        seq = tuple(reversed(w)) if flip else w
        for r in range(n):
            cand = _first_occurrence_relabel(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return ChordDiagram(best, d.solitary_count)


def crossing_count(d: ChordDiagram) -> int:
    """Number of chord pairs whose endpoints interleave on the circle."""
    pos = {}
    for i, c in enumerate(d.word):
        pos.setdefault(c, []).append(i)
    labels = sorted(pos)
    total = 0
    for i, a in enumerate(labels):
        a1, a2 = pos[a]
        for b in labels[i + 1:]:
            inside = sum(1 for x in pos[b] if a1 < x < a2)
            if inside == 1:
                total += 1
    return total


def diagrams_equal(a: ChordDiagram, b: ChordDiagram) -> bool:
    if a.solitary_count != b.solitary_count:
        return False
    return canonicalize(a).word == canonicalize(b).word


@dataclass(frozen=True)
class ClassId:
    """One of the rigid-isotopy classes: canonical word + solitary count."""

    word: str
    solitary: int

    @property
    def chord_count(self):
        return len(self.word) // 2

    def render(self):
        return f"{self.chord_count}-{self.word}|s{self.solitary}"

    def __str__(self):
        return self.render()

    def diagram(self):
        return ChordDiagram(self.word, self.solitary)

    @staticmethod
    def parse(text):
        d = ChordDiagram.from_text(text)
        c = canonicalize(d)
        if c.word != d.word:
            raise MalformedWord(f"{text!r} is not canonical (use {c.to_text()!r})")
        return ClassId(c.word_str(), c.solitary_count)

    @staticmethod
    def of(d: ChordDiagram):
        c = canonicalize(d)
        return ClassId(c.word_str(), c.solitary_count)


def _matchings(points):
    if not points:
        yield []
        return
    first = points[0]
    for i in range(1, len(points)):
        partner = points[i]
        rest = points[1:i] + points[i + 1:]
        for m in _matchings(rest):
            yield [(first, partner)] + m


def enumerate_all(total_nodes: int = 3):
    """All classes with k chords and total_nodes - k dots, k descending."""
    out = []
    for k in range(total_nodes, -1, -1):
        sol = total_nodes - k
        seen = set()
        for m in _matchings(list(range(2 * k))):
            word = [0] * (2 * k)
            for lab, (a, b) in enumerate(m, start=1):
                word[a] = lab
                word[b] = lab
            c = canonicalize(ChordDiagram(word, sol))
            seen.add(c.word)
        for w in sorted(seen):
            out.append(ClassId("".join(str(c) for c in w), sol))
    return out
