"""Certified sampled rigid-isotopy paths between curves of one class.

A path is a finite list of exactly represented rational curves; every sample
carries a genericity certificate and classifies into the shared class.  The
route is uniform: each endpoint is normalized, peeled down to its node seed,
and the seed data is morphed onto the canonical representative of the class
one piece at a time (per-coordinate scalings first, then conjugate pairs
inside the upper half-plane, then real preimages moving monotonically into
disjoint target slots, wrapping through [1:0] when the circular word needs
rotating).  The two half-routes are glued at the representative.  The
normalizing plane transforms themselves are returned as sampled matrix paths
through invertible matrices, factored into shears and a positive diagonal so
every sample has nonzero determinant by construction.

Degenerations are dodged exactly.  A seeded curve stops being birational
precisely when the three node quadratics become linearly dependent (a real
Mobius involution then pairs all three preimage pairs and the map runs twice
over a conic).  Along any single leg that determinant is a polynomial of
degree at most two in the leg parameter, so each leg is checked for interior
zeros in exact arithmetic.  The determinant's sign in the monic gauge flips
once per passage through [1:0] and once per odd relabeling of the slots, so
the planner enumerates word alignments and wrap directions until the flip
count matches the endpoint signs, falling back to a reversed-parameter start
(the same plane curve read backwards) when the word admits no odd alignment.
Matching signs does not by itself make every leg safe, so within a candidate
the order of the individual motions is searched as well: straightening moves
may pause at a waypoint short of the determinant's zero set while other moves
carry it away, and conjugate pairs are routed with backtracking over which
pair moves first.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from itertools import permutations

from .classify import classification_from_nodes, normalize
from .curves import (Curve, NodeSeed, apply_transform, det3, invert3,
                     mat_mul3, realize_from_seed, seed_for_word)
from .errors import (DifferentClass, ImaginaryNodePresent, NotGeneric,
                     PathObstruction)
from .forms import BinaryForm, ProjPoint1, form_gcd
from .gaussian import GaussianRational, rational_to_str
from .nodefind import ConjugateQuadratic, find_nodes
from .roots import AlgebraicReal

_F0 = Fraction(0)
_F1 = Fraction(1)
_IDENT = ((_F1, _F0, _F0), (_F0, _F1, _F0), (_F0, _F0, _F1))
_INF = object()   # sentinel chart value for [1:0] in bead bookkeeping


# -- genericity certificates --------------------------------------------------


class GenericityCertificate:
    """Witnesses that a curve has exactly three simple real nodes.

    real_witness lists, per crossing preimage in chart order, a rational
    isolating interval (pairwise disjoint) or an infinity marker; the
    disjointness of the intervals is the distinctness witness for the real
    preimage values.  solitary_witness lists trace and norm of each
    conjugate pair; real and imaginary preimages are distinct outright, and
    two conjugate pairs coincide only if trace and norm both agree.
    triple_gcd_degree is the degree of gcd(p0, p1, p2), always zero.  All
    fields can be recomputed from the curve alone.
    """

    __slots__ = ("node_kinds", "real_witness", "solitary_witness",
                 "triple_gcd_degree")

    def __init__(self, node_kinds, real_witness, solitary_witness,
                 triple_gcd_degree):
        self.node_kinds = tuple(node_kinds)
        self.real_witness = tuple(real_witness)
        self.solitary_witness = tuple(solitary_witness)
        self.triple_gcd_degree = triple_gcd_degree

    def __repr__(self):
        return (f"GenericityCertificate(kinds={self.node_kinds}, "
                f"reals={len(self.real_witness)})")

    def to_json(self):
        def iv(entry):
            if entry is None:
                return {"infinity": True}
            lo, hi = entry
            return {"lo": rational_to_str(lo), "hi": rational_to_str(hi)}

        def key(entry):
            t, n = entry
            return {"trace": _alg_json(t), "norm": _alg_json(n)}

        return {"node_kinds": list(self.node_kinds),
                "real_preimages": [iv(e) for e in self.real_witness],
                "solitary_pairs": [key(e) for e in self.solitary_witness],
                "triple_gcd_degree": self.triple_gcd_degree}


def _alg_json(v):
    if isinstance(v, AlgebraicReal):
        return v.to_json()
    return rational_to_str(v)


def _interval(v):
    if v.exact is not None:
        return (v.exact, v.exact)
    return (v.lo, v.hi)


def _separated_intervals(vals):
    """Disjoint rational intervals for distinct finite algebraic values."""
    vals = list(vals)
    for _ in range(4000):
        ivs = [_interval(v) for v in vals]
        clash = None
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if ivs[i][0] <= ivs[j][1] and ivs[j][0] <= ivs[i][1]:
                    clash = (i, j)
                    break
            if clash:
                break
        if clash is None:
            return ivs
        i, j = clash
        vals[i] = vals[i].refine()
        vals[j] = vals[j].refine()
    raise NotGeneric("preimage values could not be separated")


def _certificate_from_nodes(c, nodes):
    g = form_gcd(form_gcd(c.p0, c.p1), c.p2)
    if g.degree != 0:
        raise NotGeneric("coordinate forms share a root")
    if len(nodes) != 3:
        raise NotGeneric(f"expected three nodes, found {len(nodes)}")
    kinds = [n.kind for n in nodes]
    finite = []
    inf_count = 0
    order = []          # slots of the witness list, finite vs infinite
    for n in nodes:
        if not n.is_crossing():
            continue
        for v in n.chart_preimages():
            if v.infinite:
                inf_count += 1
                order.append(None)
            else:
                order.append(len(finite))
                finite.append(v)
    if inf_count > 1:
        raise NotGeneric("the preimage at [1:0] is repeated")
    ivs = _separated_intervals(finite)
    witness = [None if slot is None else ivs[slot] for slot in order]
    sol = []
    for n in nodes:
        if not n.is_solitary():
            continue
        if isinstance(n.preimages, ConjugateQuadratic):
            sol.append((n.preimages.trace, n.preimages.norm))
        else:
            z = n.preimages[0].chart_value()
            sol.append((2 * z.re, z.re * z.re + z.im * z.im))
    for i in range(len(sol)):
        for j in range(i + 1, len(sol)):
            ti, ni = sol[i]
            tj, nj = sol[j]
            if (isinstance(ti, Fraction) and isinstance(tj, Fraction)
                    and isinstance(ni, Fraction) and isinstance(nj, Fraction)
                    and ti == tj and ni == nj):
                raise NotGeneric("two conjugate preimage pairs coincide")
    return GenericityCertificate(kinds, witness, sol, g.degree)


def verify_generic(c: Curve) -> GenericityCertificate:
    """Certificate that c has three simple nodes with distinct preimages.

    Raises NotGeneric naming the violated condition: non-birational
    parametrization, wrong node count, coincident preimages, or imaginary
    non-conjugate self-intersections.
    """
    try:
        nodes = find_nodes(c)
    except ImaginaryNodePresent as e:
        raise NotGeneric(str(e)) from e
    return _certificate_from_nodes(c, nodes)


# -- transform paths ----------------------------------------------------------


def _mat(rows):
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise ValueError("need a 3x3 matrix")
    return m


def _mat_neg(m):
    return tuple(tuple(-x for x in row) for row in m)


def _shear(i, j, f):
    rows = [list(r) for r in _IDENT]
    rows[i][j] = f
    return tuple(tuple(r) for r in rows)


def _row_add(a, i, j, f):
    for col in range(3):
        a[i][col] += f * a[j][col]


def _positive_factors(t):
    """Factors multiplying (left to right) to t, each on an invertible
    segment from the identity: shears, then a positive diagonal.

    Requires det(t) > 0.  Gaussian elimination with shear-only pivoting
    reduces t to a diagonal; a negative pair on the diagonal is flipped by
    a quarter turn squared in its plane, itself six shears.
    """
    a = [list(row) for row in t]
    ops = []
    for j in range(3):
        if a[j][j] == 0:
            i = next(r for r in range(j + 1, 3) if a[r][j] != 0)
            _row_add(a, j, i, _F1)
            ops.append((j, i, _F1))
        for i in range(3):
            if i != j and a[i][j] != 0:
                f = -a[i][j] / a[j][j]
                _row_add(a, i, j, f)
                ops.append((i, j, f))
    neg = [i for i in range(3) if a[i][i] < 0]
    if neg:
        i, j = neg
        quarter = [(i, j, -_F1), (j, i, _F1), (i, j, -_F1)]
        for si, sj, f in quarter + quarter:
            _row_add(a, si, sj, f)
            ops.append((si, sj, f))
    factors = [_shear(i, j, -f) for i, j, f in ops]
    factors.append(tuple(tuple(row) for row in a))
    return factors


def _transform_segments(t):
    """(segments, endpoint): each segment is (prefix, factor); the sampled
    matrix at local position u is prefix * ((1-u) I + u factor).  The
    endpoint is t when det(t) > 0 and -t otherwise."""
    t = _mat(t)
    d = det3(t)
    if d == 0:
        raise ValueError("transform must be invertible")
    if d < 0:
        t = _mat_neg(t)
    segs = []
    prefix = _IDENT
    for f in _positive_factors(t):
        if f == _IDENT:
            continue
        segs.append((prefix, f))
        prefix = mat_mul3(prefix, f)
    assert prefix == t
    return segs, t


def _segment_matrix(seg, u):
    prefix, f = seg
    mid = tuple(tuple((1 - u) * _IDENT[i][j] + u * f[i][j] for j in range(3))
                for i in range(3))
    return mat_mul3(prefix, mid)


def _locate(t, m):
    """Segment index and local coordinate for global position t in [0,1]."""
    pos = t * m
    k = int(pos)
    if k >= m:
        k = m - 1
    return k, pos - k


def transform_path(t, steps):
    """Sampled path of invertible matrices from the identity to t.

    When det(t) < 0 the path ends at -t, the same projective transform.
    The path is piecewise linear through a shear factorization, so every
    sample is invertible; steps is the total sample count (at least 2).
    """
    if steps < 2:
        raise ValueError("need at least two samples")
    segs, _ = _transform_segments(t)
    if not segs:
        return [_IDENT] * steps
    out = []
    for i in range(steps):
        k, u = _locate(Fraction(i, steps - 1), len(segs))
        out.append(_segment_matrix(segs[k], u))
    return out


# -- seed data extraction -----------------------------------------------------


def _seed_pairs(nodes):
    """Slot-ordered preimage pairs as ProjPoint1, exactly.

    Raises PathObstruction when any preimage is irrational: the planner
    needs exact seed data to move.
    """
    pairs = []
    for n in nodes:
        if n.is_crossing():
            pts = []
            for p in n.preimages:
                if isinstance(p, AlgebraicReal):
                    if p.infinite:
                        pts.append(ProjPoint1.infinity())
                        continue
                    q = p.try_rational()
                    if q is None:
                        raise PathObstruction(
                            "crossing preimage value is irrational")
                    pts.append(ProjPoint1.from_chart(q))
                else:
                    pts.append(p)
            pairs.append(tuple(pts))
        else:
            if isinstance(n.preimages, ConjugateQuadratic):
                raise PathObstruction("solitary preimage pair is irrational")
            pairs.append(tuple(n.preimages))
    return pairs


def _sort_key(v):
    return (v is _INF, 0 if v is _INF else v)


def _slot_data(pairs):
    """Internal slot records: ("x", [v, v]) chart values (or _INF sentinel)
    sorted with infinity last, or ("s", (re, im)) with im > 0."""
    slots = []
    for a, b in pairs:
        if a.is_real():
            vals = []
            for p in (a, b):
                vals.append(p.chart_value().re if p.is_finite() else _INF)
            vals.sort(key=_sort_key)
            slots.append(("x", vals))
        else:
            z = a.chart_value()
            x, y = z.re, z.im
            if y < 0:
                x, y = b.chart_value().re, b.chart_value().im
            slots.append(("s", (x, y)))
    return slots


def _point(v):
    if v is _INF:
        return ProjPoint1.infinity()
    return ProjPoint1.from_chart(v)


def _curve_from_slots(slots, scalings=None):
    pairs = []
    for kind, d in slots:
        if kind == "x":
            pairs.append((_point(d[0]), _point(d[1])))
        else:
            x, y = d
            p = ProjPoint1(GaussianRational(x, y), GaussianRational(1))
            pairs.append((p, p.conjugate()))
    c = realize_from_seed(NodeSeed(pairs))
    if scalings is not None:
        c = apply_transform(c, _diag(scalings))
    return c


def _diag(v):
    return ((Fraction(v[0]), _F0, _F0),
            (_F0, Fraction(v[1]), _F0),
            (_F0, _F0, Fraction(v[2])))


def _seed_scalings(c, base):
    """Per-coordinate constants with c = diag(scalings) applied to base."""
    out = []
    for f, g in zip(c.forms, base.forms):
        k = next(i for i, x in enumerate(g.coeffs) if not x.is_zero())
        r = f.coeffs[k] / g.coeffs[k]
        if r.im != 0 or any(x != y * r for x, y in zip(f.coeffs, g.coeffs)):
            raise PathObstruction("curve is not a scaled seed realization")
        out.append(r.re)
    return out


# -- morph legs ---------------------------------------------------------------


def _freeze(slots):
    return tuple((k, tuple(d)) for k, d in slots)


def _thaw(frozen):
    return [(k, list(d) if k == "x" else tuple(d)) for k, d in frozen]


def _scaling_leg(slots, c_from, c_to):
    frozen = _freeze(slots)
    a, b = tuple(c_from), tuple(c_to)

    def fn(u):
        d = [(1 - u) * x + u * y for x, y in zip(a, b)]
        return _curve_from_slots(_thaw(frozen), d)

    return fn


def _solitary_leg(slots, scalings, slot, z_to):
    frozen = _freeze(slots)
    sc = tuple(scalings)
    x0, y0 = frozen[slot][1]
    x1, y1 = z_to

    def fn(u):
        cur = _thaw(frozen)
        cur[slot] = ("s", ((1 - u) * x0 + u * x1, (1 - u) * y0 + u * y1))
        return _curve_from_slots(cur, sc)

    return fn


def _bead_leg(slots, scalings, slot, member, value_fn):
    frozen = _freeze(slots)
    sc = tuple(scalings)

    def fn(u):
        cur = _thaw(frozen)
        cur[slot][1][member] = value_fn(u)
        return _curve_from_slots(cur, sc)

    return fn


def _line_value(v_from, v_to):
    def value(u):
        return (1 - u) * v_from + u * v_to
    return value


def _to_inf_value(v_from, direction):
    """Monotone chart motion from v_from to [1:0]; direction +1 increases
    through +infinity, -1 decreases through -infinity."""
    lam = abs(v_from) + 1

    def value(u):
        if u == 1:
            return _INF
        return (v_from + direction * lam * u) / (1 - u)

    return value


def _from_inf_value(v_to, direction):
    """Monotone chart motion from [1:0] to v_to; direction +1 means the
    value rises from -infinity, -1 means it falls from +infinity."""

    def value(u):
        if u == 0:
            return _INF
        return v_to - direction * (1 - u) / u

    return value


def _ambient_leg(curve, seg):
    def fn(u):
        return apply_transform(curve, _segment_matrix(seg, u))

    return fn


# -- degeneration guard -------------------------------------------------------


class _Blocked(Exception):
    """Internal: this schedule variant runs through a degeneration."""


def _pair_row(p1, p2):
    (a1, b1), (a2, b2) = p1, p2
    return (b1 * b2, -(a1 * b2 + a2 * b1), a1 * a2)


def _hom(v):
    return (_F1, _F0) if v is _INF else (v, _F1)


def _slot_row(kind, d):
    if kind == "s":
        x, y = d
        return (_F1, -2 * x, x * x + y * y)
    return _pair_row(_hom(d[0]), _hom(d[1]))


def _rows(slots):
    return [_slot_row(kind, d) for kind, d in slots]


def _det_slots(slots):
    return det3(_rows(slots))


def _quad_through(f0, fh, f1):
    """Coefficients of the degree <= 2 polynomial with values f0, fh, f1
    at 0, 1/2, 1."""
    c2 = 2 * (f0 + f1 - 2 * fh)
    c1 = f1 - f0 - c2
    return f0, c1, c2


def _keeps_sign(c0, c1, c2):
    """True when c0 + c1 u + c2 u^2 has no zero for u in [0, 1]."""
    d0, d1 = c0, c0 + c1 + c2
    if d0 == 0 or d1 == 0:
        return False
    if (d0 > 0) != (d1 > 0):
        return False
    if c2 == 0:
        return True
    v = -c1 / (2 * c2)
    if not (0 < v < 1):
        return True
    dv = c0 + c1 * v + c2 * v * v
    return dv != 0 and (dv > 0) == (d0 > 0)


def _motion_ok(slots, slot, row_fn):
    rows = _rows(slots)

    def at(u):
        r = list(rows)
        r[slot] = row_fn(u)
        return det3(r)

    return _keeps_sign(*_quad_through(at(_F0), at(Fraction(1, 2)), at(_F1)))


def _line_arc(v0, v1):
    def arc(u):
        return ((1 - u) * v0 + u * v1, _F1)

    return arc


def _out_arc(v0, direction):
    lam = abs(v0) + 1

    def arc(u):
        return (v0 + direction * lam * u, 1 - u)

    return arc


def _in_arc(v_to, direction):
    def arc(u):
        return (v_to * u - direction * (1 - u), u)

    return arc


# -- schedule construction ----------------------------------------------------


class _Plan:
    __slots__ = ("slots", "sg", "legs")

    def __init__(self, slots, sg):
        self.slots = slots
        self.sg = sg
        self.legs = []


def _beads_of(slots, k):
    beads = []
    for s in range(k):
        for v in slots[s][1]:
            beads.append([v, s])
    beads.sort(key=lambda e: _sort_key(e[0]))
    return beads


def _resort_slot(slots, s):
    slots[s][1].sort(key=_sort_key)


def _bead_rowfn(slots, slot, member, arc):
    other = _hom(slots[slot][1][1 - member])

    def row(u):
        return _pair_row(arc(u), other)

    return row


def _emit_bead(plan, slot, v_from, value_fn, v_to, arc):
    member = plan.slots[slot][1].index(v_from)
    if not _motion_ok(plan.slots, slot, _bead_rowfn(plan.slots, slot, member,
                                                    arc)):
        raise _Blocked
    plan.legs.append(_bead_leg(plan.slots, plan.sg, slot, member, value_fn))
    plan.slots[slot][1][member] = v_to
    _resort_slot(plan.slots, slot)


def _emit_land(plan, slot, base, land_dir, arc_dir):
    """Bring the bead at [1:0] down to a finite landing spot beyond base.

    The guard determinant is linear in the landing value, so pushing the
    spot further out in the landing direction eventually keeps its sign."""
    member = plan.slots[slot][1].index(_INF)
    for j in range(44):
        g = base + land_dir * ((1 << j) - 1)
        arc = _in_arc(g, arc_dir)
        if _motion_ok(plan.slots, slot, _bead_rowfn(plan.slots, slot, member,
                                                    arc)):
            _emit_bead(plan, slot, _INF, _from_inf_value(g, arc_dir), g, arc)
            return
    raise _Blocked


def _sol_hits(slots, slot, z0, z1):
    """Does the straight solitary motion z0 -> z1 pass exactly through
    another conjugate pair's point?"""
    x0, y0 = z0
    x1, y1 = z1
    dx, dy = x1 - x0, y1 - y0
    for s, (kind, d) in enumerate(slots):
        if s == slot or kind != "s":
            continue
        xs, ys = d
        if dx != 0:
            u = (xs - x0) / dx
            if 0 <= u <= 1 and y0 + u * dy == ys:
                return True
        elif x0 == xs and dy != 0:
            u = (ys - y0) / dy
            if 0 <= u <= 1:
                return True
    return False


def _emit_sol(plan, slot, z_to):
    x0, y0 = plan.slots[slot][1]
    x1, y1 = z_to
    if (x0, y0) == (x1, y1):
        return
    if _sol_hits(plan.slots, slot, (x0, y0), (x1, y1)):
        raise _Blocked

    def row(u):
        x = (1 - u) * x0 + u * x1
        y = (1 - u) * y0 + u * y1
        return (_F1, -2 * x, x * x + y * y)

    if not _motion_ok(plan.slots, slot, row):
        raise _Blocked
    plan.legs.append(_solitary_leg(plan.slots, plan.sg, slot, (x1, y1)))
    plan.slots[slot] = ("s", (x1, y1))


def _route_solitary(plan, slot, z_to):
    """Axis-aligned waypoint routes for one conjugate pair, first that
    keeps the guard determinant sign and avoids the other pairs."""
    x0, y0 = plan.slots[slot][1]
    xt, yt = z_to
    if (x0, y0) == (xt, yt):
        return
    routes = [((x0, yt), (xt, yt)), ((xt, y0), (xt, yt))]
    for h in (1, 3, 9):
        top = max(y0, yt) + h
        routes.append(((x0, top), (xt, top), (xt, yt)))
    for route in routes:
        saved_slots = _freeze(plan.slots)
        saved_len = len(plan.legs)
        try:
            for z in route:
                _emit_sol(plan, slot, z)
            return
        except _Blocked:
            plan.slots[:] = _thaw(saved_slots)
            del plan.legs[saved_len:]
    raise _Blocked


def _alignments(labels_seq, word):
    """All (rotation, slot bijection) pairs that lay the labeled circular
    sequence onto the canonical word."""
    out = []
    for r in range(len(labels_seq)):
        rot = labels_seq[r:] + labels_seq[:r]
        sigma = {}
        used = set()
        ok = True
        for p, s in enumerate(rot):
            t = word[p]
            if s in sigma:
                if sigma[s] != t:
                    ok = False
                    break
            elif t in used:
                ok = False
                break
            else:
                sigma[s] = t
                used.add(t)
        if ok:
            out.append((r, dict(sigma)))
    return out


def _perm_parity(sigma):
    sign = 1
    seen = set()
    for s in sigma:
        if s in seen:
            continue
        cur, length = s, 0
        while cur not in seen:
            seen.add(cur)
            cur = sigma[cur]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _reflect_slots(slots):
    """The slot data of the reversed parametrization (chart value x -> -x);
    it realizes the same plane curve with the parameter circle read the
    other way around."""
    out = []
    for kind, d in slots:
        if kind == "s":
            x, y = d
            out.append(("s", (-x, y)))
        else:
            out.append(("x", sorted((v if v is _INF else -v for v in d),
                                    key=_sort_key)))
    return out


def _reflect_curve(c):
    """The same plane curve traced with the parameter circle reversed."""
    return Curve(*(BinaryForm([x if i % 2 == 0 else -x
                               for i, x in enumerate(f.coeffs)])
                   for f in c.forms))


def _settle_inf(slots, k):
    """Slot data with an infinite bead provisionally parked below the
    minimum, for alignment and sign inspection only."""
    if not k:
        return slots, False
    beads = _beads_of(slots, k)
    if beads[-1][0] is not _INF:
        return slots, False
    parked = _thaw(_freeze(slots))
    s = beads[-1][1]
    member = parked[s][1].index(_INF)
    parked[s][1][member] = beads[0][0] - 1
    _resort_slot(parked, s)
    return parked, True


def _wall_pos(slots, s, member, v_from, v_to):
    """Where the guard determinant vanishes along a straight bead move
    (it is linear in the bead position), or None when it keeps its sign."""
    rows = _rows(slots)
    other = _hom(slots[s][1][1 - member])

    def at(x):
        r = list(rows)
        r[s] = _pair_row((x, _F1), other)
        return det3(r)

    d0, d1 = at(v_from), at(v_to)
    if d0 == d1:
        return None
    u = d0 / (d0 - d1)
    if not (0 < u <= 1):
        return None
    return v_from + (v_to - v_from) * u


def _order_moves(slots, k):
    """Search an order for the straightening moves under which every rest
    configuration keeps the guard determinant sign.

    Moves stay collision free because a bead only travels through a gap
    empty of other beads.  When a move would cross the sign wall the bead
    may pause at a waypoint short of it; moving the other beads first
    drags the wall past the paused bead.  Returns the move list or None.
    """
    d = _det_slots(slots)
    if d == 0:
        return None
    pos = d > 0
    seen = set()
    budget = [4000]

    def rec(cur, hops):
        beads = _beads_of(cur, k)
        vals = [v for v, _ in beads]
        moves = [(p, v, s) for p, (v, s) in enumerate(beads)
                 if v != Fraction(p)]
        if not moves:
            return []
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        key = (_freeze(cur), hops)
        if key in seen:
            return None
        seen.add(key)
        ordered = ([m for m in sorted(moves, key=lambda e: -e[0])
                    if m[1] < m[0]] + [m for m in moves if m[1] > m[0]])
        for p, v, s in ordered:
            g = Fraction(p)
            lo, hi = (v, g) if v < g else (g, v)
            if any(lo < w < hi for w in vals if w != v) or g in vals:
                continue
            member = cur[s][1].index(v)
            nxt = _thaw(_freeze(cur))
            nxt[s][1][member] = g
            _resort_slot(nxt, s)
            dn = _det_slots(nxt)
            if dn != 0 and (dn > 0) == pos:
                rest = rec(nxt, hops)
                if rest is not None:
                    return [(s, v, g)] + rest
            elif hops > 0:
                x = _wall_pos(cur, s, member, v, g)
                if x is not None:
                    w = (v + x) / 2
                    if w != v:
                        mid = _thaw(_freeze(cur))
                        mid[s][1][member] = w
                        _resort_slot(mid, s)
                        rest = rec(mid, hops - 1)
                        if rest is not None:
                            return [(s, v, w)] + rest
        return None

    return rec(_thaw(_freeze(slots)), 6)


def _attempt(cfg, ca, sg, word, k, rep_slots, sigma, wcount, wdir,
             beads_first):
    """One concrete schedule: scaling, conjugate pairs, wraps, line moves,
    then the fixing transform.  Raises _Blocked when any leg would cross a
    degeneration."""
    plan = _Plan(_thaw(_freeze(cfg)), list(sg))
    if ca != sg:
        plan.legs.append(_scaling_leg(plan.slots, ca, sg))

    def do_solitary(pending=None):
        # which pair moves first matters: a target can sit on the wrong
        # side of the wall spanned by the pairs still waiting to move
        if pending is None:
            pending = list(range(k, 3))
        if not pending:
            return
        for i, s in enumerate(pending):
            saved = _freeze(plan.slots)
            kept = len(plan.legs)
            try:
                _route_solitary(plan, s, rep_slots[sigma[s]][1])
                do_solitary(pending[:i] + pending[i + 1:])
                return
            except _Blocked:
                plan.slots[:] = _thaw(saved)
                del plan.legs[kept:]
        raise _Blocked

    def do_beads():
        if not k:
            return
        beads = _beads_of(plan.slots, k)
        if beads[-1][0] is _INF:
            _emit_land(plan, beads[-1][1], beads[0][0] - 1, -1, +1)
        for _ in range(wcount):
            beads = _beads_of(plan.slots, k)
            if wdir > 0:
                # smallest bead leaves through -infinity, lands on top
                v, s = beads[0]
                _emit_bead(plan, s, v, _to_inf_value(v, -1), _INF,
                           _out_arc(v, -1))
                top = _beads_of(plan.slots, k)[-2][0]
                _emit_land(plan, s, top + 1, +1, -1)
            else:
                # largest bead leaves through +infinity, lands below
                v, s = beads[-1]
                _emit_bead(plan, s, v, _to_inf_value(v, +1), _INF,
                           _out_arc(v, +1))
                low = _beads_of(plan.slots, k)[0][0]
                _emit_land(plan, s, low - 1, -1, +1)
        order = _order_moves(plan.slots, k)
        if order is None:
            raise _Blocked
        for s, v, g in order:
            _emit_bead(plan, s, v, _line_value(v, g), g, _line_arc(v, g))

    if beads_first:
        do_beads()
        do_solitary()
    else:
        do_solitary()
        do_beads()

    for s in range(k):
        expect = [Fraction(p) for p in range(2 * k) if word[p] == sigma[s]]
        if expect != plan.slots[s][1]:
            raise _Blocked
    for s in range(k, 3):
        if plan.slots[s][1] != rep_slots[sigma[s]][1]:
            raise _Blocked

    sign = 1
    if any(sigma[s] != s for s in range(3)) or any(x != 1 for x in plan.sg):
        perm = [[_F0] * 3 for _ in range(3)]
        for s in range(3):
            perm[s][sigma[s]] = _F1
        m0 = mat_mul3(_diag(plan.sg), tuple(tuple(r) for r in perm))
        fix = invert3(m0)
        segs, end = _transform_segments(fix)
        snapshot = _curve_from_slots(plan.slots, plan.sg)
        for seg in segs:
            plan.legs.append(_ambient_leg(snapshot, seg))
        if end != fix:
            sign = -sign
    return plan.legs, sign


def _side_route(c1, nodes, class_id):
    """Legs morphing the normalized curve c1 onto the class representative.

    Returns (legs, sign): sign -1 means the final leg lands on the
    representative with all coefficients negated (the same plane curve;
    an overall sign is projectively invisible but cannot always be
    removed along a real path of transforms).
    """
    word = tuple(int(ch) - 1 for ch in class_id.word)
    k = len(word) // 2
    n = 2 * k
    rep_slots = _slot_data(seed_for_word(class_id.word,
                                         class_id.solitary).pairs)
    rep_sign = 1 if _det_slots(rep_slots) > 0 else -1

    slots0 = _slot_data(_seed_pairs(nodes))

    candidates = []
    for refl in (0, 1):
        if refl:
            cfg = _reflect_slots(slots0)
            ca = _seed_scalings(_reflect_curve(c1), _curve_from_slots(cfg))
        else:
            cfg = slots0
            ca = _seed_scalings(c1, _curve_from_slots(cfg))
        sg = [_F1 if x > 0 else -_F1 for x in ca]
        parked, _ = _settle_inf(cfg, k)
        d0 = _det_slots(parked)
        if d0 == 0:
            raise PathObstruction("endpoint configuration is degenerate")
        start_sign = 1 if d0 > 0 else -1
        if k:
            aligns = _alignments([s for _, s in _beads_of(parked, k)], word)
        else:
            aligns = [(0, {})]
        for r, sig in aligns:
            for sol in permutations(range(k, 3)):
                sigma = dict(sig)
                for i, s in enumerate(range(k, 3)):
                    sigma[s] = sol[i]
                par = _perm_parity(sigma)
                if r:
                    options = [(r, +1), (n - r, -1)]
                elif n:
                    # full wraps keep the alignment but reroute through
                    # [1:0], dodging walls the direct straightening hits
                    options = [(0, +1), (n, +1), (n, -1)]
                else:
                    options = [(0, +1)]
                for wcount, wdir in options:
                    flip = -1 if wcount % 2 else 1
                    if start_sign * flip != par * rep_sign:
                        continue
                    for beads_first in (0, 1):
                        candidates.append((refl, wcount, r, beads_first,
                                           wdir, sigma, cfg, ca, sg))
    candidates.sort(key=lambda e: e[:4])

    for refl, wcount, r, beads_first, wdir, sigma, cfg, ca, sg in candidates:
        try:
            legs, sign = _attempt(cfg, ca, sg, word, k, rep_slots, sigma,
                                  wcount, wdir, beads_first)
        except _Blocked:
            continue
        if refl:
            legs = [lambda u, _c=c1: _c] + legs
        return legs, sign
    raise PathObstruction(
        "no admissible schedule onto the class representative")


# -- path assembly ------------------------------------------------------------


class IsotopyPath:
    """An immutable certified sample sequence between normalized curves.

    steps: tuple of (t, Curve, GenericityCertificate) with t rational in
    [0,1]; ambient: the two sampled transform paths whose endpoints carry
    the original inputs onto the normalized step-0 and step-1 curves.
    """

    __slots__ = ("class_id", "steps", "ambient")

    def __init__(self, class_id, steps, ambient=None):
        object.__setattr__(self, "class_id", class_id)
        object.__setattr__(self, "steps", tuple(steps))
        object.__setattr__(self, "ambient", ambient)

    def __setattr__(self, *a):
        raise AttributeError("IsotopyPath is immutable")

    def __len__(self):
        return len(self.steps)

    def save_to_dir(self, dirpath):
        """Write step_NNNN.json files plus a manifest.json."""
        os.makedirs(dirpath, exist_ok=True)
        for i, (t, curve, _) in enumerate(self.steps):
            body = dict(curve.to_json())
            body["t"] = rational_to_str(t)
            _write_json(os.path.join(dirpath, f"step_{i:04d}.json"), body)
        manifest = {"class": str(self.class_id),
                    "steps": len(self.steps),
                    "certificates": [c.to_json() for _, _, c in self.steps]}
        if self.ambient is not None:
            manifest["ambient"] = {
                key: [[[rational_to_str(x) for x in row] for row in m]
                      for m in mats]
                for key, mats in self.ambient.items()}
        _write_json(os.path.join(dirpath, "manifest.json"), manifest)


def _write_json(path, obj):
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            json.dump(obj, f, indent=1, sort_keys=True)
            f.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _certified_sample(curve, class_id, t):
    try:
        nodes = find_nodes(curve)
        cert = _certificate_from_nodes(curve, nodes)
    except (NotGeneric, ImaginaryNodePresent) as e:
        raise PathObstruction(f"sample at t={t} is not generic: {e}") from e
    cls = classification_from_nodes(nodes)
    if cls.class_id != class_id:
        raise PathObstruction(
            f"sample at t={t} classifies as {cls.class_id}, not {class_id}")
    return (t, curve, cert)


def build_path(a: Curve, b: Curve, steps: int) -> IsotopyPath:
    """Certified path of sampled curves between the normalized endpoints.

    Both endpoints are normalized, reduced to exact seed data, and routed
    through the canonical representative of their shared class; the paper's
    connectivity argument guarantees such routes exist, and the canonical
    waypoint makes the schedule deterministic.  steps is the total sample
    count (at least 2); step 0 is the normalized a, the last step the
    normalized b, and every sample carries a GenericityCertificate and the
    shared class.  The normalizing transforms are reported in ambient as
    sampled invertible-matrix paths.
    """
    if steps < 2:
        raise ValueError("need at least two samples")
    na, nb = find_nodes(a), find_nodes(b)
    cls_a = classification_from_nodes(na)
    cls_b = classification_from_nodes(nb)
    if cls_a.class_id != cls_b.class_id:
        raise DifferentClass(
            f"cannot connect {cls_a.class_id} to {cls_b.class_id}")
    cid = cls_a.class_id

    ta, a1 = normalize(a)
    tb, b1 = normalize(b)
    ambient = {"pre": transform_path(ta, steps),
               "post": transform_path(tb, steps)}

    grid = [Fraction(i, steps - 1) for i in range(steps)]
    if a1 == b1:
        samples = [_certified_sample(a1, cid, t) for t in grid]
        return IsotopyPath(cid, samples, ambient)

    na1 = find_nodes(a1)
    nb1 = find_nodes(b1)
    legs_a, sign_a = _side_route(a1, na1, cid)
    legs_b, sign_b = _side_route(b1, nb1, cid)
    if sign_a != sign_b:
        # the two half-routes land on opposite coefficient signs of the
        # representative (the same plane curve); keep that junction away
        # from the endpoints with a constant leg when a side is empty
        if not legs_a:
            legs_a = [lambda u, _c=a1: _c]
        if not legs_b:
            legs_b = [lambda u, _c=b1: _c]
    legs = list(legs_a)
    for leg in reversed(legs_b):
        legs.append(lambda u, _f=leg: _f(1 - u))
    if not legs:
        samples = [_certified_sample(a1, cid, t) for t in grid]
        return IsotopyPath(cid, samples, ambient)

    samples = []
    m = len(legs)
    for t in grid:
        k, u = _locate(t, m)
        samples.append(_certified_sample(legs[k](u), cid, t))
    return IsotopyPath(cid, samples, ambient)
