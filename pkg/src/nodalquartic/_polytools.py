"""Dense univariate polynomial helpers over exact rationals.

Everything in here works on plain Python lists in ascending-power order
(``p[k]`` is the coefficient of ``x**k``); the empty list is the zero
polynomial.  Coefficients are ``fractions.Fraction`` unless a function says
"int".  These are the workhorses behind the binary-form layer: pseudo-remainder
gcds, Sturm chains, bisection isolation, Lagrange interpolation and
fraction-free determinants.  No floating point anywhere; interval endpoints
and evaluation results are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

Poly = list  # list of Fraction, ascending powers

ZERO = Fraction(0)
ONE = Fraction(1)


def ptrim(p):
    """Drop trailing zero coefficients (normal form; [] is zero)."""
    while p and p[-1] == 0:
        p.pop()
    return p


def pdeg(p):
    return len(p) - 1  # -1 for the zero polynomial


def pis_zero(p):
    return not p


def padd(p, q):
    n = max(len(p), len(q))
    out = [ZERO] * n
    for i, c in enumerate(p):
        out[i] = c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return ptrim(out)


def psub(p, q):
    n = max(len(p), len(q))
    out = [ZERO] * n
    for i, c in enumerate(p):
        out[i] = c
    for i, c in enumerate(q):
        out[i] = out[i] - c
    return ptrim(out)


def pneg(p):
    return [-c for c in p]


def pmul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return ptrim(out)


def pscale(p, c):
    if c == 0:
        return []
    return [a * c for a in p]


def peval(p, x):
    """Horner evaluation; x may be Fraction or int."""
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pderiv(p):
    return [c * k for k, c in enumerate(p)][1:]


def pdivmod(p, q):
    """Exact field division with remainder, q != 0."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    d = len(q) - 1
    lc = q[-1]
    quot = [ZERO] * max(0, len(r) - d)
    while len(r) - 1 >= d and r:
        k = len(r) - 1 - d
        c = r[-1] / lc
        quot[k] = c
        for i in range(d + 1):
            r[k + i] -= c * q[i]
        ptrim(r)
    return ptrim(quot), r


def pdiv_exact(p, q):
    quot, rem = pdivmod(p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quot


# -- integer primitive forms --------------------------------------------------


def to_int_primitive(p):
    """Clear denominators and content.  Returns (int list, positive leading)."""
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // _igcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = _igcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def int_content(p):
    g = 0
    for c in p:
        g = _igcd(g, abs(c))
    return g


def int_primitive(p):
    g = int_content(p)
    if g > 1:
        p = [c // g for c in p]
    if p and p[-1] < 0:
        p = [-c for c in p]
    return p


def int_prem(p, q):
    """Pseudo-remainder of integer polynomials: lc(q)^(dp-dq+1) * p mod q."""
    dp, dq = len(p) - 1, len(q) - 1
    if dp < dq:
        return list(p)
    lc = q[-1]
    r = list(p)
    for _ in range(dp - dq + 1):
        if len(r) - 1 < dq:
            r = [c * lc for c in r]
            continue
        k = len(r) - 1 - dq
        top = r[-1]
        r = [c * lc for c in r]
        for i in range(dq + 1):
            r[k + i] -= top * q[i]
        while r and r[-1] == 0:
            r.pop()
    return r


def int_gcd_poly(p, q):
    """Primitive-PRS gcd of integer polynomials, primitive positive output."""
    a = int_primitive([c for c in p])
    b = int_primitive([c for c in q])
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = int_prem(a, b)
        while r and r[-1] == 0:
            r.pop()
        a, b = b, int_primitive(r)
    return a


def gcd_q(p, q):
    """Monic gcd of two rational polynomials (monic; [] if both zero)."""
    g = int_gcd_poly(to_int_primitive(p), to_int_primitive(q))
    if not g:
        return []
    lc = Fraction(g[-1])
    return [Fraction(c) / lc for c in g]


def squarefree_q(p):
    """Monic squarefree part of a rational polynomial."""
    if not p or len(p) == 1:
        return [ONE] if p else []
    g = gcd_q(p, pderiv(p))
    sf = pdiv_exact(p, g)
    lc = sf[-1]
    return [c / lc for c in sf]


# -- Sturm chains and root isolation -----------------------------------------


def sturm_chain(p):
    """Sturm chain of a squarefree integer polynomial.

    Content is stripped from every element but signs are preserved (they are
    what the chain is about).  Pseudo-remainders scale by lc^k, so when that
    factor is negative the usual negation is skipped.
    """
    first = int_primitive(list(p))
    chain = [first]
    d = [c for c in pderiv(first)]
    g = int_content(d)
    if g > 1:
        d = [c // g for c in d]
    if d:
        chain.append(d)
    while len(chain) >= 2 and chain[-1]:
        a, b = chain[-2], chain[-1]
        k = len(a) - len(b) + 1
        r = int_prem(a, b)
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
        flipped = b[-1] < 0 and k % 2 == 1  # prem carried a negative factor
        s = r if flipped else [-c for c in r]
        g = int_content(s)
        if g > 1:
            s = [c // g for c in s]
        chain.append(s)
    return chain


def _sign(x):
    return (x > 0) - (x < 0)


def sign_variations(chain, x):
    prev = 0
    var = 0
    for p in chain:
        s = _sign(peval(p, x))
        if s != 0:
            if prev != 0 and s != prev:
                var += 1
            prev = s
    return var


def count_roots_between(chain, a, b):
    """Number of real roots in (a, b]; endpoints must not be roots of chain[0]."""
    return sign_variations(chain, a) - sign_variations(chain, b)


def cauchy_bound(p):
    """Rational bound B with all real roots of p in (-B, B)."""
    lc = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=ZERO)
    return ONE + Fraction(m) / lc


def isolate_real_roots_sqfree(p):
    """Isolating intervals for all real roots of a squarefree int polynomial.

    Returns an ascending list of (lo, hi, exact) with lo < hi rational
    non-roots bracketing exactly one root each; exact is the root itself as a
    Fraction when the bisection lands on it, else None.
    """
    ip = to_int_primitive([Fraction(c) for c in p])
    if len(ip) <= 1:
        return []
    p = [Fraction(c) for c in ip]
    chain = sturm_chain(ip)
    bound = cauchy_bound(p)
    lo, hi = -bound, bound
    while peval(p, lo) == 0:
        lo -= 1
    while peval(p, hi) == 0:
        hi += 1
    total = count_roots_between(chain, lo, hi)
    out = []

    def recurse(a, b, n):
        if n == 0:
            return
        if n == 1:
            out.append((a, b, None))
            return
        mid = (a + b) / 2
        if peval(p, mid) == 0:
            # exact rational root; shrink a clean bracket around it
            w = (b - a) / 4
            while True:
                la, lb = mid - w, mid + w
                if peval(p, la) != 0 and peval(p, lb) != 0 and \
                        count_roots_between(chain, la, lb) == 1:
                    break
                w /= 2
            left = count_roots_between(chain, a, la)
            recurse(a, la, left)
            out.append((la, lb, mid))
            recurse(lb, b, n - 1 - left)
            return
        left = count_roots_between(chain, a, mid)
        recurse(a, mid, left)
        recurse(mid, b, n - left)

    recurse(lo, hi, total)
    out.sort(key=lambda t: t[0])
    return out


def refine_interval(p, lo, hi, exact=None):
    """One bisection step for a bracketed single root of p (int or Fraction)."""
    if exact is not None:
        w = (hi - lo) / 4
        return max(lo, exact - w), min(hi, exact + w), exact
    mid = (lo + hi) / 2
    v = peval(p, mid)
    if v == 0:
        return lo, hi, mid
    if _sign(v) == _sign(peval(p, lo)):
        return mid, hi, None
    return lo, mid, None


# -- interpolation ------------------------------------------------------------


def interpolate(xs, ys):
    """Lagrange interpolation through exact points, ascending coefficients."""
    n = len(xs)
    out = []
    for i in range(n):
        num = [ONE]
        den = ONE
        for j in range(n):
            if j == i:
                continue
            num = pmul(num, [-Fraction(xs[j]), ONE])
            den *= Fraction(xs[i]) - Fraction(xs[j])
        out = padd(out, pscale(num, Fraction(ys[i]) / den))
    return out


# -- exact determinants -------------------------------------------------------


def det_int(rows):
    """Bareiss fraction-free determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row = m[i]
            prow = m[k]
            for j in range(k + 1, n):
                row[j] = (row[j] * piv - mik * prow[j]) // prev
            row[k] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def det_fractions(rows):
    """Exact determinant of a Fraction matrix (row denominators cleared)."""
    n = len(rows)
    if n == 0:
        return ONE
    scale = ONE
    int_rows = []
    for r in rows:
        den = 1
        for c in r:
            den = den * c.denominator // _igcd(den, c.denominator)
        scale /= den
        int_rows.append([int(c * den) for c in r])
    return Fraction(det_int(int_rows)) * scale


def charpoly_fractions(rows):
    """Characteristic polynomial det(z*I - M), ascending Fraction coeffs.

    Similarity reduction to upper Hessenberg form followed by the leading
    principal minor recurrence.
    """
    n = len(rows)
    h = [[Fraction(x) for x in row] for row in rows]
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = 1 / h[j + 1][j]
        for i in range(j + 2, n):
            if h[i][j]:
                f = h[i][j] * inv
                # row op keeps the determinant; matching column op keeps
                # similarity so eigenvalues are unchanged
                for k in range(j, n):
                    h[i][k] -= f * h[j + 1][k]
                for k in range(n):
                    h[k][j + 1] += f * h[k][i]
    ps = [[ONE]]
    for k in range(1, n + 1):
        term = pmul(ps[k - 1], [-h[k - 1][k - 1], ONE])
        prod = ONE
        for i in range(k - 1, 0, -1):
            prod = prod * h[i][i - 1]
            if h[i - 1][k - 1]:
                term = psub(term, pscale(ps[i - 1], prod * h[i - 1][k - 1]))
        ps.append(term)
    return ps[n]


def pxgcd(p, q):
    """Extended gcd over Q[x]: returns (g, u, v) with u*p + v*q = g, g monic."""
    r0, r1 = [Fraction(c) for c in p], [Fraction(c) for c in q]
    u0, u1 = [ONE], []
    v0, v1 = [], [ONE]
    while r1:
        quot, rem = pdivmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, psub(u0, pmul(quot, u1))
        v0, v1 = v1, psub(v0, pmul(quot, v1))
    if not r0:
        return [], u0, v0
    lc = r0[-1]
    return pscale(r0, ONE / lc), pscale(u0, ONE / lc), pscale(v0, ONE / lc)


def pshift(p, h):
    """Taylor shift: coefficients of p(x + h)."""
    out = []
    for c in reversed(p):
        out = padd(pmul(out, [Fraction(h), ONE]), [c])
    return out


def interval_eval(p, lo, hi):
    """Interval Horner: encloses {p(x) : lo <= x <= hi} in a rational box."""
    alo, ahi = ZERO, ZERO
    for c in reversed(p):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


def res_uni(p, q, dp=None, dq=None):
    """Resultant of two rational polynomials at formal degrees (dp, dq).

    Defaults to the actual degrees.  Formal degrees matter when the caller
    interpolates a resultant whose leading coefficients vanish at some
    specialization points; the Sylvester shape must stay fixed.
    """
    if dp is None:
        dp = pdeg(p)
    if dq is None:
        dq = pdeg(q)
    if dp < 0 or dq < 0:
        return ZERO
    n = dp + dq
    if n == 0:
        return ONE
    pc = [Fraction(p[i]) if i < len(p) else ZERO for i in range(dp + 1)]
    qc = [Fraction(q[i]) if i < len(q) else ZERO for i in range(dq + 1)]
    rows = []
    for i in range(dq):
        row = [ZERO] * n
        for k, c in enumerate(reversed(pc)):
            row[i + k] = c
        rows.append(row)
    for i in range(dp):
        row = [ZERO] * n
        for k, c in enumerate(reversed(qc)):
            row[i + k] = c
        rows.append(row)
    return det_fractions(rows)


def nullspace_fractions(rows):
    """Right nullspace basis of a Fraction matrix, as lists of Fractions."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
