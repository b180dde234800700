"""Real algebraic numbers and exact arithmetic in Q(xi) for one real root xi.

A ``RealRoot`` is a squarefree polynomial P over Q with an isolating
interval (lo, hi] containing exactly one root xi of P.  ``RootField``
computes in Q[t]/(P) by dynamic evaluation: P need not be irreducible,
and whenever a zero divisor shows up P is replaced by the factor that
still vanishes at xi.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra import upoly
from ..algebra.fields import QQ
from .sturm import as_dense, isolate_real_roots, primitive, refine, sign_at, squarefree, sturm_count


class RealRoot:
    def __init__(self, poly, lo, hi):
        self.poly = primitive(as_dense(poly))
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)

    def __repr__(self):
        return f"RealRoot({self.poly_str()}, ({self.lo}, {self.hi}])"

    def poly_str(self, var="x") -> str:
        terms = []
        for k in range(len(self.poly) - 1, -1, -1):
            c = self.poly[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("-" if c < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, b in terms[1:]:
            out += f" {s} {b}"
        return out

    def count_in(self, a, lo=None, hi=None) -> int:
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        a = upoly.trim(QQ, list(a))
        if len(a) <= 1:
            return 0
        return sturm_count(a, (lo, hi))

    def vanishes(self, a) -> bool:
        a = upoly.trim(QQ, list(a))
        if not a:
            return True
        g = upoly.gcd(QQ, self.poly, a)
        return len(g) > 1 and self.count_in(g) > 0

    def bisect(self):
        mid = (self.lo + self.hi) / 2
        if sturm_count(self.poly, (self.lo, mid)):
            self.hi = mid
        else:
            self.lo = mid

    def refine_to(self, width):
        self.lo, self.hi = refine(self.poly, self.lo, self.hi, width)

    def sign_of(self, a) -> int:
        """Sign of the rational polynomial a at xi."""
        a = upoly.trim(QQ, list(a))
        if not a:
            return 0
        if self.vanishes(a):
            return 0
        while self.count_in(a):
            self.bisect()
        return sign_at(a, self.hi)

    def compare(self, x) -> int:
        """Sign of xi - x for a rational x."""
        x = Fraction(x)
        while True:
            if x <= self.lo:
                return 1
            if x > self.hi:
                return -1
            if upoly.evaluate(QQ, self.poly, x) == 0:
                return 0  # the only root of P in (lo, hi]
            self.bisect()

    def as_rational(self):
        """The root itself if it is rational, else None."""
        L = abs(self.poly[-1])
        self.refine_to(Fraction(1, 2 * L * L + 1))
        mid = (self.lo + self.hi) / 2
        r = mid.limit_denominator(int(L))
        if self.lo < r <= self.hi and upoly.evaluate(QQ, self.poly, r) == 0:
            return r
        return None

    def approx(self) -> float:
        self.refine_to(Fraction(1, 10**12))
        return float((self.lo + self.hi) / 2)

    def shrink(self, factor):
        """Replace the defining polynomial by a factor that still vanishes at xi."""
        self.poly = primitive(as_dense(factor))


def real_roots(poly) -> list:
    """Real roots of a nonzero polynomial as Fractions or RealRoots, ascending."""
    a = squarefree(as_dense(poly))
    out = []
    for lo, hi in isolate_real_roots(a):
        r = RealRoot(a, lo, hi)
        q = r.as_rational()
        out.append(q if q is not None else r)
    return out


class RootField:
    """Q(xi) as a field context for :mod:`etaleopen.algebra.upoly`."""

    def __init__(self, root: RealRoot):
        self.root = root
        self.zero = ()
        self.one = (Fraction(1),)

    def _red(self, a):
        return tuple(upoly.rem(QQ, list(a), self.root.poly))

    def from_int(self, n):
        return self._red((Fraction(n),)) if n else ()

    def from_fraction(self, x):
        return self._red((Fraction(x),)) if x else ()

    def add(self, a, b):
        return self._red(upoly.add(QQ, list(a), list(b)))

    def sub(self, a, b):
        return self._red(upoly.sub(QQ, list(a), list(b)))

    def neg(self, a):
        return tuple(-c for c in a)

    def mul(self, a, b):
        return self._red(upoly.mul(QQ, list(a), list(b)))

    def pow(self, a, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_zero(self, a) -> bool:
        a = list(self._red(a))
        if not a:
            return True
        P = self.root.poly
        d = upoly.gcd(QQ, a, P)
        if len(d) <= 1:
            return False
        if self.root.count_in(d):
            self.root.shrink(d)
            return True
        self.root.shrink(upoly.exquo(QQ, P, d))
        return False

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("element vanishes at the root")
        # after is_zero, gcd(a, P) = 1
        _, s, _ = upoly.xgcd(QQ, list(self._red(a)), self.root.poly)
        return self._red(s)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sign(self, a) -> int:
        if self.is_zero(a):
            return 0
        return self.root.sign_of(list(self._red(a)))


def count_real_roots_over(K: RootField, h: list) -> int:
    """Distinct real roots of a squarefree h in Q(xi)[y] (Sturm over the real field)."""
    h = upoly.trim(K, h)
    if len(h) <= 1:
        return 0
    seq = [h, upoly.deriv(K, h)]
    while True:
        r = upoly.rem(K, seq[-2], seq[-1])
        if not r:
            break
        seq.append(upoly.neg(K, r))

    def variations(at_pos: bool) -> int:
        signs = []
        for s in seq:
            sg = K.sign(upoly.lc(s))
            if not at_pos and (len(s) - 1) % 2:
                sg = -sg
            if sg:
                signs.append(sg)
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    return variations(False) - variations(True)
