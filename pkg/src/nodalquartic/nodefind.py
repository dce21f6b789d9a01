"""Locating the three self-intersections of a degree-4 rational plane map.

The pencil minor of a coordinate pair (i, j) is

    G_ij(s,t; u,v) = (p_i(s,t) p_j(u,v) - p_j(s,t) p_i(u,v)) / (s v - t u),

a symmetric form of bidegree (3, 3) that vanishes at a pair of parameters
exactly when the map sends both to the same plane point (the denominator
removes the diagonal).  Eliminating the second parameter from two minors
gives a degree-18 form whose roots are the six node preimages plus the
roots of the shared p_i; intersecting two such eliminants and correcting
for a possible smooth pass through [0:0:1] leaves the degree-6 preimage
form.

Preimages are then paired off.  Rational roots pair by direct minor
evaluation.  Everything else is reached through monic quadratics
u^2 - x u + y: since a minor is symmetric in its two arguments, its chart
values rewrite in the trace x and norm y of the pair, and the three
rewritten minors vanish simultaneously at (x, y) exactly when the two
roots of the quadratic are identified by the map.  Candidate traces are
roots of the gcd of the pairwise y-resultants of that system, the norm
comes from a gcd at the trace, and every candidate is certified by exact
vanishing of all three rewritten minors.  The trace may be rational, or a
real algebraic number handled in a quotient-ring context.  Certificates
never depend on interval width; intervals only steer the search.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import _polytools as pt
from .algext import ModCtx, RationalCtx
from .curves import Curve, reparametrize
from .errors import DivisionFailure, ImaginaryNodePresent, NotGeneric
from .forms import (BinaryForm, ProjPoint1, form_div_exact, form_gcd,
                    is_squarefree, resultant_coeff_forms, squarefree_part)
from .gaussian import GR_ZERO, rational_from_str, rational_to_str
from .roots import AlgebraicReal, conjugate_root_pair, isolate_real_roots

_F0 = Fraction(0)
_F1 = Fraction(1)

CROSSING = "crossing"
SOLITARY = "solitary"


class MinorForm:
    """One pencil minor, stored as its 4x4 rational coefficient matrix.

    matrix[k][l] is the coefficient of s^(3-k) t^k u^(3-l) v^l.  The matrix
    is symmetric because swapping the two parameter pairs fixes the minor.
    """

    __slots__ = ("matrix",)

    def __init__(self, pi: BinaryForm, pj: BinaryForm):
        ci = pi.real_fractions()
        cj = pj.real_fractions()
        if ci is None or cj is None or len(ci) != 5 or len(cj) != 5:
            raise ValueError("pencil minors need real quartic forms")
        n = [[ci[k] * cj[l] - cj[k] * ci[l] for l in range(5)] for k in range(5)]
        q = [[_F0] * 4 for _ in range(4)]
        for k in range(4):
            for l in range(3, -1, -1):
                up = q[k - 1][l + 1] if (k >= 1 and l + 1 <= 3) else _F0
                q[k][l] = n[k][l + 1] + up
        # remaining identities of N = Q * (sv - tu) must close exactly
        ok = n[0][0] == 0 and n[4][4] == 0
        ok = ok and all(n[k][0] == -q[k - 1][0] for k in range(1, 5))
        ok = ok and all(n[4][l] == -q[3][l] for l in range(1, 4))
        if not ok:
            raise DivisionFailure("minor numerator not divisible by sv - tu")
        self.matrix = tuple(tuple(row) for row in q)

    def coeff_forms(self):
        """(u,v)-coefficients, u^3 first, each a degree-3 form in (s,t)."""
        m = self.matrix
        return [BinaryForm.from_real([m[k][l] for k in range(4)])
                for l in range(4)]

    def eval_chart(self, x1, x2):
        """Value at two finite real chart parameters."""
        m = self.matrix
        acc = _F0
        for k in range(4):
            inner = _F0
            for l in range(4):
                inner = inner * x2 + m[k][l]
            acc = acc * x1 + inner
        return acc

    def evaluate(self, p1: ProjPoint1, p2: ProjPoint1):
        """Value at two projective parameters, Gaussian coordinates allowed."""
        m = self.matrix
        pow1 = _proj_powers(p1)
        pow2 = _proj_powers(p2)
        acc = None
        for k in range(4):
            for l in range(4):
                if m[k][l] == 0:
                    continue
                term = (pow1[k] * pow2[l]) * m[k][l]
                acc = term if acc is None else acc + term
        return GR_ZERO if acc is None else acc

    def sym_chart(self):
        """The chart values G([a:1]; [b:1]) rewritten in x = a+b, y = a*b.

        Returns {(i, j): coeff} for the polynomial sum coeff * x^i y^j.
        Valid because the minor is symmetric in its two arguments.
        """
        psums = (
            {(0, 0): Fraction(2)},
            {(1, 0): _F1},
            {(2, 0): _F1, (0, 1): Fraction(-2)},
            {(3, 0): _F1, (1, 1): Fraction(-3)},
        )
        out = {}
        m = self.matrix
        for k in range(4):
            for l in range(k, 4):
                c = m[k][l]
                if c == 0:
                    continue
                if k == l:
                    key = (0, 3 - k)
                    out[key] = out.get(key, _F0) + c
                else:
                    for (i, j), pc in psums[l - k].items():
                        key = (i, j + 3 - l)
                        out[key] = out.get(key, _F0) + c * pc
        return {k: v for k, v in out.items() if v != 0}


def _proj_powers(p: ProjPoint1):
    """[a^(3-k) b^k for k in 0..3] for the point [a : b]."""
    pa = [None] * 4
    pb = [None] * 4
    pa[0] = pb[0] = p.a / p.a if not p.a.is_zero() else p.b / p.b
    for i in range(1, 4):
        pa[i] = pa[i - 1] * p.a
        pb[i] = pb[i - 1] * p.b
    return [pa[3 - k] * pb[k] for k in range(4)]


def minor_forms(c: Curve):
    """The three pencil minors (G_01, G_02, G_12)."""
    return (MinorForm(c.p0, c.p1), MinorForm(c.p0, c.p2),
            MinorForm(c.p1, c.p2))


class ConjugateQuadratic:
    """A conjugate imaginary preimage pair that does not live in Q(i).

    The pair are the two roots of u^2 - trace*u + norm (negative
    discriminant); trace and norm are Fraction or AlgebraicReal.
    """

    __slots__ = ("trace", "norm")

    def __init__(self, trace, norm):
        self.trace = trace
        self.norm = norm

    def __repr__(self):
        return f"ConjugateQuadratic(trace={self.trace}, norm={self.norm})"

    def to_json(self):
        return {"conjugate_quadratic": {"trace": _coord_json(self.trace),
                                        "norm": _coord_json(self.norm)}}

    @staticmethod
    def from_json(obj):
        inner = obj["conjugate_quadratic"]
        return ConjugateQuadratic(_coord_from_json(inner["trace"]),
                                  _coord_from_json(inner["norm"]))


def _coord_json(v):
    if isinstance(v, AlgebraicReal):
        return v.to_json()
    return rational_to_str(v)


def _coord_from_json(obj):
    if isinstance(obj, str):
        return rational_from_str(obj)
    return AlgebraicReal.from_json(obj)


class Node:
    """One self-intersection of the image curve.

    position: three coordinates (Fraction or AlgebraicReal), scaled so the
    largest-magnitude coordinate equals 1.
    preimages: a pair of ProjPoint1 / AlgebraicReal chart values for the
    two parameters, or a ConjugateQuadratic for a non-Gaussian conjugate
    pair.  kind: "crossing" (two real preimages) or "solitary" (conjugate
    imaginary preimages).
    """

    __slots__ = ("position", "preimages", "kind")

    def __init__(self, position, preimages, kind):
        self.position = tuple(position)
        self.preimages = preimages
        self.kind = kind

    def is_crossing(self):
        return self.kind == CROSSING

    def is_solitary(self):
        return self.kind == SOLITARY

    def chart_preimages(self):
        """The two preimages as AlgebraicReal chart values (crossing only)."""
        if self.kind != CROSSING:
            raise ValueError("chart_preimages needs a crossing node")
        out = []
        for p in self.preimages:
            if isinstance(p, AlgebraicReal):
                out.append(p)
            elif p.is_finite():
                out.append(AlgebraicReal.from_rational(p.chart_value().re))
            else:
                out.append(AlgebraicReal.infinity())
        return tuple(out)

    def __repr__(self):
        return f"Node({self.kind}, pos={self.position}, pre={self.preimages})"

    def to_json(self):
        if isinstance(self.preimages, ConjugateQuadratic):
            pre = self.preimages.to_json()
        else:
            pre = [p.to_json() for p in self.preimages]
        return {"position": [_coord_json(v) for v in self.position],
                "preimages": pre,
                "kind": self.kind}

    @staticmethod
    def from_json(obj):
        pos = tuple(_coord_from_json(v) for v in obj["position"])
        raw = obj["preimages"]
        if isinstance(raw, dict):
            pre = ConjugateQuadratic.from_json(raw)
        else:
            pre = tuple(
                AlgebraicReal.from_json(p) if isinstance(p, dict)
                else ProjPoint1.from_json(p) for p in raw)
        return Node(pos, pre, obj["kind"])


# -- the preimage form ---------------------------------------------------------


def _preimage_form(c: Curve, minors):
    """Monic degree-6 real form vanishing exactly at the node preimages."""
    g01, g02, g12 = minors
    f01 = g01.coeff_forms()
    ra = resultant_coeff_forms(f01, g02.coeff_forms())
    if ra.is_zero():
        raise NotGeneric("parametrization is not birational onto its image")
    rb = resultant_coeff_forms(f01, g12.coeff_forms())
    if rb.is_zero():
        raise NotGeneric("parametrization is not birational onto its image")
    cand = form_gcd(squarefree_part(ra), squarefree_part(rb))
    shared = form_gcd(c.p0, c.p1)
    if shared.degree == 1:
        # image passes smoothly through [0:0:1]; the lone preimage
        # contaminates both eliminants without being a node preimage
        cand = form_div_exact(cand, shared).monic()
    elif shared.degree == 2:
        if not is_squarefree(shared):
            raise NotGeneric("non-transverse self-contact at [0:0:1]")
    elif shared.degree >= 3:
        raise NotGeneric("[0:0:1] has three or more preimages")
    if cand.degree != 6:
        raise NotGeneric(
            f"six preimage values expected, eliminant has degree {cand.degree}")
    return cand.monic()


def _chart_shift_avoiding(r6: BinaryForm):
    """A small rational c with r6(c, 1) != 0."""
    k = 0
    while True:
        for cand in ({Fraction(k), Fraction(-k)} if k else {_F0}):
            if not r6.evaluate(cand, 1).is_zero():
                return cand
        k += 1


# -- pairing -------------------------------------------------------------------


def find_nodes(c: Curve):
    """The three nodes of a generic curve, deterministically ordered.

    Crossing nodes come first (sorted by smaller chart preimage, the pair
    itself in ascending chart order with [1:0] last), then solitary nodes
    (sorted by preimage trace, then norm).  Raises NotGeneric when the map
    is not birational or the self-intersections do not form three simple
    nodes, and ImaginaryNodePresent when a self-intersection pair is
    imaginary without being conjugate.
    """
    minors = minor_forms(c)
    r6 = _preimage_form(c, minors)
    if r6.coeffs[0].is_zero():
        # a preimage sits at [1:0]: move it into the chart first
        shift = _chart_shift_avoiding(r6)
        m = ((shift, _F1), (_F1, _F0))
        c2 = reparametrize(c, m)
        minors2 = minor_forms(c2)
        r62 = _preimage_form(c2, minors2)
        if r62.coeffs[0].is_zero():
            raise NotGeneric("preimage form keeps a root at [1:0]")
        nodes = _pair_nodes(c2, minors2, r62, shift)
    else:
        nodes = _pair_nodes(c, minors, r6, None)
    _check_distinct_positions(nodes)
    return _sort_nodes(nodes)


def _pair_nodes(c: Curve, minors, r6: BinaryForm, shift):
    """Pair the six preimage values of r6 into three certified nodes.

    c and minors belong to the (possibly reparametrized) chart in which all
    preimages are finite; shift, when not None, says how to map parameter
    data back to the original chart (original = shift + 1/current).
    """
    syms = tuple(g.sym_chart() for g in minors)
    chart = pt.ptrim([Fraction(v) for v in r6.chart_poly()])
    if chart and chart[-1] != 1:
        chart = [v / chart[-1] for v in chart]
    roots = isolate_real_roots(r6)
    rational = []
    leftover = []
    for r in roots:
        q = r.try_rational()
        if q is not None:
            rational.append(q)
        else:
            leftover.append(r)

    nodes = []
    rem = chart

    # stage 1: rational roots pair by direct minor evaluation
    n = len(rational)
    degree = [0] * n
    partner = [None] * n
    for i in range(n):
        for j in range(i + 1, n):
            if all(g.eval_chart(rational[i], rational[j]) == 0 for g in minors):
                degree[i] += 1
                degree[j] += 1
                partner[i] = j
    if any(d > 1 for d in degree):
        raise NotGeneric("a point of the image has three or more preimages")
    if any(d == 0 for d in degree):
        raise NotGeneric("unpaired rational preimage value")
    for i in range(n):
        j = partner[i]
        if j is None or j < i:
            continue
        nodes.append(_rational_crossing_node(c, rational[i], rational[j], shift))
    for q in rational:
        rem = pt.pdiv_exact(rem, [-q, _F1])

    # stages 2 and 3 share one trace eliminant built from the sym system
    trace = None
    if pt.pdeg(rem) == 2:
        stage2 = [(-rem[1], rem[0])]
    elif pt.pdeg(rem) >= 4:
        trace = _TraceData(syms)
        stage2 = trace.rational_candidates()
    else:
        stage2 = []

    # stage 2: monic quadratic divisors with rational trace and norm
    for x0, y0 in stage2:
        if pt.pdeg(rem) < 2:
            break
        quad = [y0, -x0, _F1]
        quo, rest = pt.pdivmod(rem, quad)
        if rest:
            continue
        if not _certify(syms, RationalCtx(), x0, y0):
            continue
        rem = quo
        nodes.append(_quadratic_node(c, x0, y0, leftover, shift))

    # stage 3: algebraic trace data for whatever is left
    pre3_real = len(leftover)
    pre3_deg = pt.pdeg(rem)
    solitary_alg = 0
    if pre3_deg > 0:
        if trace is None:
            trace = _TraceData(syms)
        found, solitary_alg = _algebraic_pairs(c, syms, trace, leftover, shift)
        nodes.extend(found)

    if leftover:
        raise NotGeneric(
            "real preimage values without partners; the self-intersections "
            "are not three simple nodes")
    leftover_complex = (pre3_deg - pre3_real) - 2 * solitary_alg
    if leftover_complex >= 4:
        raise ImaginaryNodePresent(
            "imaginary self-intersection pairs are not conjugate")
    if leftover_complex != 0:
        raise NotGeneric("imaginary preimage content does not pair into nodes")
    if len(nodes) != 3:
        raise NotGeneric(f"expected three nodes, certified {len(nodes)}")
    return nodes


def _rational_crossing_node(c, x1, x2, shift):
    pos = _rational_position(c, x1)
    p1, p2 = ProjPoint1.from_chart(x1), ProjPoint1.from_chart(x2)
    if shift is not None:
        p1, p2 = _mobius_point(p1, shift), _mobius_point(p2, shift)
    return Node(pos, (p1, p2), CROSSING)


def _quadratic_node(c, x0, y0, leftover, shift):
    """Node for a certified rational quadratic u^2 - x0 u + y0."""
    disc = x0 * x0 - 4 * y0
    pos = _position(c, RationalCtx(), x0, y0)
    if disc > 0:
        pair = _take_pair_rational_trace(leftover, x0, y0)
        if pair is None:
            raise NotGeneric("trace data does not match the preimage values")
        r, w = pair
        if shift is not None:
            r, w = _mobius_alg(r, shift), _mobius_alg(w, shift)
        return Node(pos, (r, w), CROSSING)
    if disc == 0:
        raise NotGeneric("coincident preimage values")
    quadform = BinaryForm.from_real([_F1, -x0, y0])
    try:
        p, pbar = conjugate_root_pair(quadform)
        if shift is not None:
            p, pbar = _mobius_point(p, shift), _mobius_point(pbar, shift)
            if p.is_finite() and p.chart_value().im < 0:
                p, pbar = pbar, p
        return Node(pos, (p, pbar), SOLITARY)
    except ValueError:
        trace, norm = x0, y0
        if shift is not None:
            trace = 2 * shift + x0 / y0
            norm = shift * shift + shift * x0 / y0 + 1 / y0
        return Node(pos, ConjugateQuadratic(trace, norm), SOLITARY)


class _TraceData:
    """Trace eliminant of the sym system, built once per curve.

    The three symmetrized minors vanish simultaneously at (x, y) exactly
    when the roots of u^2 - x u + y form an identified pair, so the gcd of
    their pairwise y-resultants is a small polynomial whose real roots
    carry every node trace.  entries holds, per real eliminant root xi:
    (xi, x0, norm_roots) with x0 the rational value of xi or None;
    norm_roots (rational xi only) lists (eta, y0, gi) for the real roots
    of the specialized norm gcd gi, y0 its rational value or None.
    """

    __slots__ = ("syms", "eli", "entries")

    def __init__(self, syms):
        self.syms = syms
        r12 = _res_y_dicts(syms[0], syms[1])
        r13 = _res_y_dicts(syms[0], syms[2])
        r23 = _res_y_dicts(syms[1], syms[2])
        if r12 is None or r13 is None or r23 is None:
            self.eli = None
            self.entries = []
            return
        g = pt.gcd_q(pt.gcd_q(r12, r13), r23)
        self.eli = pt.to_int_primitive(pt.squarefree_q(g))
        self.entries = []
        for xi in _real_roots_int(self.eli):
            x0 = xi.try_rational(64)
            norm_roots = None
            if x0 is not None:
                gy = pt.gcd_q(pt.gcd_q(_eval_dict_x(syms[0], x0),
                                       _eval_dict_x(syms[1], x0)),
                              _eval_dict_x(syms[2], x0))
                norm_roots = []
                if pt.pdeg(gy) >= 1:
                    gi = pt.to_int_primitive(pt.squarefree_q(gy))
                    for eta in _real_roots_int(gi):
                        norm_roots.append((eta, eta.try_rational(64), gi))
            self.entries.append((xi, x0, norm_roots))

    def rational_candidates(self):
        out = []
        for _, x0, norm_roots in self.entries:
            if x0 is None:
                continue
            for _, y0, _ in norm_roots:
                if y0 is not None:
                    out.append((x0, y0))
        return out


def _algebraic_pairs(c, syms, trace, leftover, shift):
    """Stage 3: certify node pairs whose trace or norm is irrational."""
    if trace.eli is None:
        raise NotGeneric("unsupported preimage pairing (degenerate eliminant)")
    found = []
    solitary = 0
    for xi, x0, norm_roots in trace.entries:
        if x0 is not None:
            # rational trace: only irrational norms are left for this stage
            for eta, y0, gi in norm_roots:
                if y0 is not None:
                    continue
                ctx = ModCtx(gi, eta)
                got = _try_algebraic_candidate(
                    c, syms, ctx, ctx.from_rational(x0), ctx.chi(),
                    leftover, shift)
                if got is not None:
                    found.append(got)
                    if got.kind == SOLITARY:
                        solitary += 1
        else:
            ctx = ModCtx(trace.eli, xi)
            g = ctx.kpoly_gcd(
                ctx.kpoly_gcd(_dict_to_kpoly_x(ctx, syms[0]),
                              _dict_to_kpoly_x(ctx, syms[1])),
                _dict_to_kpoly_x(ctx, syms[2]))
            if len(g) - 1 < 1:
                continue
            if len(g) - 1 > 1:
                raise NotGeneric(
                    "unsupported preimage pairing (coincident traces over an "
                    "irrational value)")
            yhat = ctx.scale(g[0], -1)
            got = _try_algebraic_candidate(
                c, syms, ctx, ctx.chi(), yhat, leftover, shift)
            if got is not None:
                found.append(got)
                if got.kind == SOLITARY:
                    solitary += 1
    return found, solitary


def _try_algebraic_candidate(c, syms, ctx, xhat, yhat, leftover, shift):
    """Certify and build one node from context-level trace and norm."""
    if not _certify(syms, ctx, xhat, yhat):
        return None
    disc = ctx.sub(ctx.mul(xhat, xhat), ctx.scale(yhat, 4))
    sgn = ctx.sign(disc)
    if sgn == 0:
        raise NotGeneric("coincident preimage values")
    pos = _position(c, ctx, xhat, yhat)
    if sgn > 0:
        pair = _take_pair_algebraic_trace(leftover, ctx, xhat, yhat)
        if pair is None:
            raise NotGeneric("trace data does not match the preimage values")
        r, w = pair
        if shift is not None:
            r, w = _mobius_alg(r, shift), _mobius_alg(w, shift)
        return Node(pos, (r, w), CROSSING)
    inv_y = ctx.invert(yhat)
    if shift is not None:
        xy = ctx.mul(xhat, inv_y)
        trace_e = ctx.add(ctx.from_rational(2 * shift), xy)
        norm_e = ctx.add(ctx.from_rational(shift * shift),
                         ctx.add(ctx.scale(xy, shift), inv_y))
    else:
        trace_e, norm_e = xhat, yhat
    return Node(pos, ConjugateQuadratic(ctx.value(trace_e), ctx.value(norm_e)),
                SOLITARY)


# -- trace eliminant machinery -------------------------------------------------


def _res_y_dicts(a, b):
    """Resultant in y of two {(i, j): c} dicts, ascending x-poly, or None.

    Formal y-degrees taken from the dicts; computed by interpolating the
    fixed-shape Sylvester determinant at integer x.
    """
    if not a or not b:
        return None
    da = max(j for _, j in a)
    db = max(j for _, j in b)
    ma = max(i for i, _ in a)
    mb = max(i for i, _ in b)
    bound = db * ma + da * mb
    xs = list(range(bound + 1))
    ys = []
    for x in xs:
        x = Fraction(x)
        ay = _eval_dict_x(a, x)
        by = _eval_dict_x(b, x)
        ys.append(pt.res_uni(ay, by, dp=da, dq=db))
    eli = pt.interpolate(xs, ys)
    if pt.pis_zero(eli):
        return None
    return eli


def _eval_dict_x(d, x0):
    """Specialize {(i, j): c} at x = x0; ascending Fraction poly in y."""
    dy = max(j for _, j in d) if d else -1
    out = [_F0] * (dy + 1)
    for (i, j), c in d.items():
        out[j] += c * x0 ** i
    return pt.ptrim(out)


def _dict_to_kpoly_x(ctx, d):
    """Lift {(i, j): c} to a polynomial in y over the context (chi = x)."""
    dy = max(j for _, j in d) if d else -1
    out = [[] for _ in range(dy + 1)]
    for (i, j), c in d.items():
        coeffs = [_F0] * (i + 1)
        coeffs[i] = c
        out[j] = pt.padd(out[j], coeffs)
    return [ctx.reduce(p) for p in out]


def _real_roots_int(p):
    """AlgebraicReals for the real roots of a squarefree integer poly."""
    if pt.pdeg(p) < 1:
        return []
    if pt.pdeg(p) == 1:
        return [AlgebraicReal.from_rational(Fraction(-p[0], p[1]))]
    return [AlgebraicReal(p, lo, hi, exact=exact)
            for lo, hi, exact in pt.isolate_real_roots_sqfree(list(p))]


# -- certification and positions -----------------------------------------------


def _certify(syms, ctx, xhat, yhat):
    """True when all three symmetrized minors vanish at (xhat, yhat)."""
    return all(ctx.is_zero(_eval_sym(sym, ctx, xhat, yhat)) for sym in syms)


def _eval_sym(sym, ctx, xhat, yhat):
    mi = max(i for i, _ in sym)
    mj = max(j for _, j in sym)
    xp = [ctx.one()]
    for _ in range(mi):
        xp.append(ctx.mul(xp[-1], xhat))
    yp = [ctx.one()]
    for _ in range(mj):
        yp.append(ctx.mul(yp[-1], yhat))
    acc = ctx.from_rational(0)
    for (i, j), cval in sym.items():
        acc = ctx.add(acc, ctx.scale(ctx.mul(xp[i], yp[j]), cval))
    return acc


def _chart_coeff_lists(c: Curve):
    """Per-coordinate lists P with P[p] the coefficient of a^p in p_i(a, 1)."""
    out = []
    for f in c.forms:
        rf = f.real_fractions()
        out.append([rf[4 - p] for p in range(5)])
    return out


def _rational_position(c: Curve, x):
    vals = [v.re for v in c.evaluate(x, 1)]
    return _normalize_rational(vals)


def _normalize_rational(vals):
    best = 0
    for i in (1, 2):
        if abs(vals[i]) > abs(vals[best]):
            best = i
    inv = 1 / vals[best]
    return tuple(v * inv for v in vals)


def _position(c: Curve, ctx, xhat, yhat):
    """Node position from symmetric functions of the preimage pair.

    For a pair {a, b} with trace xhat and norm yhat, the symmetric products
    S_ij = p_i(a) p_j(b) + p_i(b) p_j(a) satisfy S_ij / S_jj = z_i / z_j at
    the node position z whenever z_j != 0; S_jj = 2 p_j(a) p_j(b) is
    nonzero for at least one j.  Everything is a polynomial in (x, y), so
    the computation stays inside the context.
    """
    charts = _chart_coeff_lists(c)
    # m[p][q] = a^p b^q + a^q b^p as a context element
    pw = [ctx.from_rational(2), xhat]
    for _ in range(3):
        pw.append(ctx.sub(ctx.mul(xhat, pw[-1]), ctx.mul(yhat, pw[-2])))
    ypow = [ctx.one()]
    for _ in range(4):
        ypow.append(ctx.mul(ypow[-1], yhat))
    mm = [[None] * 5 for _ in range(5)]
    for p in range(5):
        for q in range(5):
            mm[p][q] = ctx.mul(ypow[min(p, q)], pw[abs(p - q)])

    def sym_product(pi, pj):
        acc = ctx.from_rational(0)
        for p in range(5):
            if pi[p] == 0:
                continue
            for q in range(5):
                if pj[q] == 0:
                    continue
                acc = ctx.add(acc, ctx.scale(mm[p][q], pi[p] * pj[q]))
        return acc

    s = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            s[i][j] = s[j][i] = sym_product(charts[i], charts[j])
    base = None
    for j in range(3):
        if not ctx.is_zero(s[j][j]):
            base = j
            break
    if base is None:
        raise NotGeneric("node position could not be scaled")
    inv = ctx.invert(s[base][base])
    coords = [ctx.mul(s[i][base], inv) for i in range(3)]
    best = 0
    best_sq = ctx.mul(coords[0], coords[0])
    for i in (1, 2):
        sq = ctx.mul(coords[i], coords[i])
        if ctx.sign(ctx.sub(sq, best_sq)) > 0:
            best = i
            best_sq = sq
    if best != base:
        inv2 = ctx.invert(coords[best])
        coords = [ctx.mul(v, inv2) for v in coords]
    return tuple(ctx.value(v) for v in coords)


# -- consuming leftover real roots --------------------------------------------


def _take_pair_rational_trace(leftover, x0, y0):
    """Pop the two leftover roots of u^2 - x0 u + y0 (exact membership)."""
    quad = [y0, -x0, _F1]
    hits = [i for i, r in enumerate(leftover) if r.sign_of(quad) == 0]
    if len(hits) != 2:
        return None
    w = leftover.pop(hits[1])
    r = leftover.pop(hits[0])
    return r, w


def _sqrt_bounds(lo, hi):
    """Rational s_lo <= sqrt(lo) and s_hi >= sqrt(hi) for 0 <= lo <= hi."""
    nl, dl = lo.numerator, lo.denominator
    nh, dh = hi.numerator, hi.denominator
    s_lo = Fraction(math.isqrt(nl * dl), dl)
    s_hi = Fraction(math.isqrt(nh * dh) + 1, dh)
    return s_lo, s_hi


def _take_pair_algebraic_trace(leftover, ctx, xhat, yhat):
    """Pop the two leftover roots of u^2 - xhat u + yhat (ctx coefficients).

    The quadratic's roots are roots of the full preimage polynomial and the
    leftover intervals isolate such roots, so an enclosure of a quadratic
    root shrinks to a point strictly inside exactly one leftover interval
    (or outside all of them).  The leftover intervals are held fixed while
    only ctx.root refines, so containment of the enclosure certifies the
    match and disjointness refutes it after finitely many steps.
    """
    disc = ctx.sub(ctx.mul(xhat, xhat), ctx.scale(yhat, 4))
    cand_a = list(range(len(leftover)))
    cand_b = list(range(len(leftover)))
    ia = ib = None
    for _ in range(4000):
        xl, xh = pt.interval_eval(xhat, ctx.root.lo, ctx.root.hi)
        dl, dh = pt.interval_eval(disc, ctx.root.lo, ctx.root.hi)
        if dl > 0:
            sl, sh = _sqrt_bounds(dl, dh)
            bounds = {"a": ((xl + sl) / 2, (xh + sh) / 2),
                      "b": ((xl - sh) / 2, (xh - sl) / 2)}
            for tag, cand in (("a", cand_a), ("b", cand_b)):
                blo, bhi = bounds[tag]
                for i in list(cand):
                    r = leftover[i]
                    if bhi <= r.lo or blo > r.hi:
                        cand.remove(i)
                    elif r.lo < blo and bhi <= r.hi:
                        if tag == "a":
                            ia = i
                        else:
                            ib = i
            if ia is not None and ib is not None:
                if ia == ib:
                    return None
                w = leftover.pop(max(ia, ib))
                r = leftover.pop(min(ia, ib))
                return r, w
            if not cand_a or not cand_b:
                return None
        ctx.root = ctx.root.refine()
    raise ArithmeticError("preimage matching did not converge")


# -- Moebius transport back to the original chart ------------------------------


def _mobius_point(p: ProjPoint1, shift):
    """[a : b] -> [shift*a + b : a] (chart map x -> shift + 1/x)."""
    return ProjPoint1(p.a * shift + p.b, p.a)


def _mobius_alg(r: AlgebraicReal, shift):
    """shift + 1/r for a finite nonzero algebraic chart value."""
    if r.exact is not None:
        return AlgebraicReal.from_rational(shift + 1 / r.exact)
    while r.lo <= 0 <= r.hi:
        r = r.refine()
        if r.exact is not None:
            return AlgebraicReal.from_rational(shift + 1 / r.exact)
    rev = list(reversed([Fraction(cv) for cv in r.poly]))
    target = pt.pshift(pt.ptrim(rev), -shift)
    lo, hi = shift + 1 / r.hi, shift + 1 / r.lo
    return AlgebraicReal(pt.to_int_primitive(target), lo, hi)


# -- final checks and ordering -------------------------------------------------


def _coord_eq(u, v):
    if isinstance(u, Fraction) and isinstance(v, Fraction):
        return u == v
    if isinstance(u, Fraction):
        u = AlgebraicReal.from_rational(u)
    if isinstance(v, Fraction):
        v = AlgebraicReal.from_rational(v)
    return u.equals(v)


def _check_distinct_positions(nodes):
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if all(_coord_eq(u, v) for u, v in
                   zip(nodes[i].position, nodes[j].position)):
                raise NotGeneric("two nodes share a position")


def _as_alg(v):
    return v if isinstance(v, AlgebraicReal) else AlgebraicReal.from_rational(v)


def _crossing_key(node):
    a, b = node.chart_preimages()
    small = a if a.less_than(b) else b
    return (small, small)


def _solitary_key(node):
    """(trace, norm) of the preimage pair; distinct for distinct nodes."""
    pre = node.preimages
    if isinstance(pre, ConjugateQuadratic):
        return (_as_alg(pre.trace), _as_alg(pre.norm))
    cv = pre[0].chart_value()
    return (_as_alg(cv.re * 2),
            _as_alg(cv.re * cv.re + cv.im * cv.im))


def _key_less(u, v):
    if u[0].less_than(v[0]):
        return True
    if v[0].less_than(u[0]):
        return False
    return u[1].less_than(v[1])


def _sort_nodes(nodes):
    def ordered(group, keyfn):
        out = []
        for n in group:
            key = keyfn(n)
            i = 0
            while i < len(out) and _key_less(out[i][0], key):
                i += 1
            out.insert(i, (key, n))
        return [n for _, n in out]

    for n in nodes:
        if n.kind == CROSSING:
            a, b = n.chart_preimages()
            if b.less_than(a):
                n.preimages = (n.preimages[1], n.preimages[0])

    return (ordered([n for n in nodes if n.kind == CROSSING], _crossing_key)
            + ordered([n for n in nodes if n.kind == SOLITARY], _solitary_key))


# -- preimages of an arbitrary point ------------------------------------------


def preimages_of_point(c: Curve, z):
    """Monic real form whose roots are the parameters mapping to z.

    z is a plane point with exact rational coordinates (any iterable of
    three).  The constant form 1 means z is off the image.  Root
    multiplicities count preimage multiplicity.
    """
    z = [Fraction(v) for v in z]
    if all(v == 0 for v in z):
        raise ValueError("[0:0:0] is not a plane point")
    forms = c.forms
    g = None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        f = forms[i] * z[j] - forms[j] * z[i]
        if f.is_zero():
            continue
        g = f.monic() if g is None else form_gcd(g, f)
        if g.degree == 0:
            break
    if g is None:
        raise ValueError("degenerate curve: all cross forms vanish")
    return g.monic()
