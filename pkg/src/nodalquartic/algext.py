"""Exact arithmetic in Q[chi]/(d) localized at one real root of d.

Node pairing occasionally has to work with quantities that live in a real
algebraic extension: the trace of a preimage pair is a root of an eliminant
that we never factor into irreducibles.  ModCtx works modulo a squarefree
modulus d and keeps an isolating interval for the particular real root we
care about.  Whenever an inversion runs into a zero divisor, the modulus is
split by a gcd and we keep the factor whose root lies in our interval (the
usual dynamic-evaluation trick).  All zero and sign tests are delegated to
AlgebraicReal.sign_of, so they are exact.

Elements are plain ascending Fraction lists, always reduced mod the current
modulus.  Shrinking the modulus never invalidates an element: reduction
mod a divisor leaves the value at the root unchanged.
"""

from __future__ import annotations

from fractions import Fraction

from . import _polytools as pt
from .roots import AlgebraicReal


class RationalCtx:
    """The trivial context: plain Fraction arithmetic, same interface as ModCtx.

    Elements are Fractions rather than polynomial lists; value() is the
    identity.  Lets callers run one pairing engine over Q and over real
    algebraic extensions without branching.
    """

    def from_rational(self, c):
        return Fraction(c)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a * Fraction(c)

    def sign(self, a):
        return (a > 0) - (a < 0)

    def is_zero(self, a):
        return a == 0

    def invert(self, a):
        return 1 / a

    def div(self, a, b):
        return a / b

    def value(self, a):
        return a


class ModCtx:
    """Q[chi]/(d) with a distinguished real root of d."""

    def __init__(self, d, root: AlgebraicReal):
        d = [Fraction(c) for c in d]
        if pt.pdeg(d) < 1:
            raise ValueError("modulus must have positive degree")
        lc = d[-1]
        self.d = [c / lc for c in d]
        self.root = root

    # -- ring operations ------------------------------------------------------

    def reduce(self, p):
        p = [Fraction(c) for c in p]
        if pt.pdeg(p) < pt.pdeg(self.d):
            return pt.ptrim(p)
        return pt.pdivmod(p, self.d)[1]

    def one(self):
        return [Fraction(1)]

    def chi(self):
        return self.reduce([Fraction(0), Fraction(1)])

    def from_rational(self, c):
        c = Fraction(c)
        return [c] if c else []

    def add(self, a, b):
        return pt.padd(a, b)

    def sub(self, a, b):
        return pt.psub(a, b)

    def mul(self, a, b):
        return self.reduce(pt.pmul(a, b))

    def scale(self, a, c):
        return pt.pscale(a, Fraction(c))

    def sign(self, a):
        """Sign of the element's value at the distinguished root."""
        if pt.pis_zero(a):
            return 0
        return self.root.sign_of(a)

    def is_zero(self, a):
        return self.sign(a) == 0

    def _keep_factor_with_root(self, g, cofactor):
        # one of the two factors vanishes at the root; keep that one
        if self.root.sign_of(g) == 0:
            self.d = g
        else:
            self.d = cofactor
        self.root = AlgebraicReal(
            pt.to_int_primitive(self.d), self.root.lo, self.root.hi,
            exact=self.root.exact)

    def invert(self, a):
        """Inverse of a at the root; a must be nonzero there.

        May shrink the modulus (dynamic evaluation) when a is a zero
        divisor modulo the current d.
        """
        while True:
            a = self.reduce(a)
            if pt.pis_zero(a):
                raise ZeroDivisionError("inverting zero in ModCtx")
            g, u, _ = pt.pxgcd(a, self.d)
            if pt.pdeg(g) == 0:
                return self.reduce(u)
            # a shares a factor with d: split and retry in the kept factor
            cof = pt.pdiv_exact(self.d, g)
            if pt.pdeg(cof) == 0:
                raise ZeroDivisionError("element vanishes at the root")
            self._keep_factor_with_root(g, cof)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    # -- polynomials over the context (lists of elements, ascending) ----------

    def kpoly_trim(self, P):
        while P and self.is_zero(P[-1]):
            P.pop()
        return P

    def kpoly_eval(self, P, e):
        acc = []
        for c in reversed(P):
            acc = self.add(self.mul(acc, e), c)
        return acc

    def kpoly_divmod(self, P, Q):
        P = [self.reduce(c) for c in P]
        Q = self.kpoly_trim([self.reduce(c) for c in Q])
        if not Q:
            raise ZeroDivisionError("kpoly division by zero")
        inv_lc = self.invert(Q[-1])
        dq = len(Q) - 1
        rem = list(P)
        quot = [[] for _ in range(max(0, len(rem) - dq))]
        while len(rem) - 1 >= dq and rem:
            if self.is_zero(rem[-1]):
                rem.pop()
                continue
            k = len(rem) - 1 - dq
            c = self.mul(rem[-1], inv_lc)
            quot[k] = c
            for i in range(dq + 1):
                rem[k + i] = self.sub(rem[k + i], self.mul(c, Q[i]))
            rem.pop()
        return quot, self.kpoly_trim(rem)

    def kpoly_gcd(self, P, Q):
        """Monic gcd in K[y], K the localization at the root."""
        A = self.kpoly_trim([self.reduce(c) for c in P])
        B = self.kpoly_trim([self.reduce(c) for c in Q])
        while B:
            _, rem = self.kpoly_divmod(A, B)
            A, B = B, rem
        if not A:
            return []
        inv_lc = self.invert(A[-1])
        return [self.mul(c, inv_lc) for c in A]

    # -- back to plain algebraic numbers ---------------------------------------

    def charpoly(self, e):
        """Squarefree integer polynomial vanishing at the element's value.

        Characteristic polynomial of multiplication by e on Q[chi]/(d); its
        roots are the values of e at the roots of d.
        """
        e = self.reduce(e)
        m = pt.pdeg(self.d)
        cols = []
        col = list(e)
        for _ in range(m):
            cols.append(col)
            col = self.reduce([Fraction(0)] + col)
        mat = [[cols[j][i] if i < len(cols[j]) else Fraction(0)
                for j in range(m)] for i in range(m)]
        cp = pt.charpoly_fractions(mat)
        if pt.pis_zero(cp):
            raise ArithmeticError("vanishing characteristic polynomial")
        return pt.to_int_primitive(pt.squarefree_q(cp))

    def value(self, e):
        """The element's value at the root: Fraction if constant, else algebraic."""
        e = self.reduce(e)
        if pt.pdeg(e) <= 0:
            return e[0] if e else Fraction(0)
        return self.algebraic_value(e)

    def algebraic_value(self, e) -> AlgebraicReal:
        """The element's value at the root, as an AlgebraicReal."""
        e = self.reduce(e)
        if pt.pdeg(e) <= 0:
            c = e[0] if e else Fraction(0)
            return AlgebraicReal.from_rational(c)
        cp = self.charpoly(e)
        chain = pt.sturm_chain(list(cp))
        root = self.root
        for _ in range(10000):
            lo, hi = pt.interval_eval(e, root.lo, root.hi)
            if lo == hi:
                return AlgebraicReal.from_rational(lo)
            if pt.count_roots_between(chain, lo, hi) == 1 and \
                    pt.peval([Fraction(c) for c in cp], lo) != 0:
                return AlgebraicReal(cp, lo, hi)
            root = root.refine()
        raise ArithmeticError("could not isolate the element's value")
