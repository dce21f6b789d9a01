"""Curve to canonical chord diagram to rigid-isotopy class.

The chord word is read along the circular order of the real preimage
values on the parameter line (chart order with [1:0] at the wrap); each
crossing node contributes one chord, each solitary node one dot.  The
diagram is then canonicalized, which erases the starting point and the
traversal direction, so the class is invariant under plane transforms
and under reparametrization.  No normalization is involved: curves whose
node data is irrational classify exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .curves import Curve, apply_transform, det3, invert3
from .diagram import ChordDiagram, ClassId, canonicalize
from .errors import DegenerateNodes, IrrationalNodes
from .nodefind import find_nodes
from .roots import AlgebraicReal


class Classification:
    """Canonical diagram, class id, node records, circular preimage order."""

    __slots__ = ("diagram", "class_id", "nodes", "circular_order")

    def __init__(self, diagram, class_id, nodes, circular_order):
        self.diagram = diagram
        self.class_id = class_id
        self.nodes = tuple(nodes)
        self.circular_order = tuple(circular_order)

    def __repr__(self):
        return f"Classification({self.class_id})"

    def to_json(self):
        return {
            "class": str(self.class_id),
            "word": self.diagram.word_str(),
            "solitary": self.diagram.solitary_count,
            "nodes": [n.to_json() for n in self.nodes],
        }


def _circular_entries(nodes):
    """(chart value, node index) for every real preimage, circular order.

    Chart order with the [1:0] value (if any) at the end, which is the
    wrap point of the circle.  All values are pairwise distinct for a
    generic curve, so comparison-driven refinement terminates.
    """
    entries = []
    for i, n in enumerate(nodes):
        if not n.is_crossing():
            continue
        for v in n.chart_preimages():
            entries.append((v, i))
    out = []
    for e in entries:
        j = 0
        while j < len(out) and out[j][0].less_than(e[0]):
            j += 1
        out.insert(j, e)
    return out


def classification_from_nodes(nodes) -> Classification:
    """Classification of an already-computed find_nodes result."""
    entries = _circular_entries(nodes)
    labels = {}
    raw = []
    for _, i in entries:
        if i not in labels:
            labels[i] = len(labels) + 1
        raw.append(labels[i])
    solitary = sum(1 for n in nodes if n.is_solitary())
    diagram = canonicalize(ChordDiagram(raw, solitary))
    return Classification(diagram, ClassId.of(diagram), nodes,
                          [v for v, _ in entries])


def classify(c: Curve) -> Classification:
    """Classification of a valid curve; class_id is one of the nine."""
    return classification_from_nodes(find_nodes(c))


def _rational_positions(nodes):
    cols = []
    for n in nodes:
        col = []
        for v in n.position:
            if isinstance(v, AlgebraicReal):
                q = v.try_rational()
                if q is None:
                    raise IrrationalNodes(
                        "node position has an irrational coordinate")
                v = q
            col.append(Fraction(v))
        cols.append(col)
    return cols


def _transform_to_coordinates(cols):
    """Invertible rational matrix sending the three columns to z0, z1, z2."""
    m = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    if det3(m) == 0:
        raise DegenerateNodes("node positions are collinear")
    return invert3(m)


def normalize(c: Curve):
    """(transform, transformed curve) with nodes at the coordinate points.

    The transform is exact and rational; it exists whenever all three
    node positions are rational (IrrationalNodes otherwise).  Node order
    follows find_nodes, so a curve realized from a seed normalizes by the
    identity.
    """
    nodes = find_nodes(c)
    t = _transform_to_coordinates(_rational_positions(nodes))
    return t, apply_transform(c, t)
