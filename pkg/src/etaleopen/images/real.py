"""Étale images over the reals for one base variable: finite unions of intervals.

Boundary candidates are the real roots of the principal subresultant
coefficients of (f, df/dy) and of (f, g rem f), plus those of the leading
y-coefficient of g rem f.  Off these points the number of real roots of
f(a, y) that avoid g(a, y) is locally constant, so each open cell is
decided at one rational sample and each boundary point is decided
exactly in Q(xi).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra import upoly
from ..algebra.fields import QQ
from ..poly.realalg import RealRoot, RootField, count_real_roots_over, real_roots
from ..poly.resultant import principal_subresultants
from ..poly.sturm import INF, as_dense, squarefree, sturm_count

# -- endpoints ------------------------------------------------------------------


def _cmp(a, b) -> int:
    """Compare two endpoints (Fraction, RealRoot or +-INF)."""
    if isinstance(a, float) or isinstance(b, float):
        if isinstance(a, float) and isinstance(b, float):
            return (a > b) - (a < b)
        if isinstance(a, float):
            return 1 if a > 0 else -1
        return -1 if b > 0 else 1
    if isinstance(a, RealRoot):
        if a is b:
            return 0
        if isinstance(b, RealRoot):
            raise TypeError("cannot compare two algebraic endpoints")
        return a.compare(b)
    if isinstance(b, RealRoot):
        return -b.compare(a)
    return (a > b) - (a < b)


def endpoint_dict(e) -> dict:
    if isinstance(e, float):
        return {"kind": "infinite", "value": "+inf" if e > 0 else "-inf"}
    if isinstance(e, RealRoot):
        return {
            "kind": "algebraic",
            "poly": e.poly_str(),
            "interval": [str(e.lo), str(e.hi)],
            "approx": e.approx(),
        }
    return {"kind": "rational", "value": str(e)}


def endpoint_str(e) -> str:
    if isinstance(e, float):
        return "+oo" if e > 0 else "-oo"
    if isinstance(e, RealRoot):
        return f"root({e.poly_str()} in ({e.lo}, {e.hi}])"
    return str(e)


@dataclass
class Interval:
    lo: object
    hi: object
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, x) -> bool:
        c = _cmp(x, self.lo)
        if c < 0 or (c == 0 and not self.lo_closed):
            return False
        c = _cmp(x, self.hi)
        return c < 0 or (c == 0 and self.hi_closed)

    def __str__(self):
        if self.lo is self.hi or (isinstance(self.lo, Fraction) and self.lo == self.hi):
            return "{" + endpoint_str(self.lo) + "}"
        return (
            ("[" if self.lo_closed else "(")
            + endpoint_str(self.lo)
            + ", "
            + endpoint_str(self.hi)
            + ("]" if self.hi_closed else ")")
        )

    def to_dict(self):
        return {
            "lo": endpoint_dict(self.lo),
            "hi": endpoint_dict(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }


@dataclass
class IntervalUnion:
    intervals: list

    def contains(self, x) -> bool:
        return any(iv.contains(Fraction(x)) for iv in self.intervals)

    __contains__ = contains

    def __str__(self):
        if not self.intervals:
            return "{}"
        return " U ".join(str(iv) for iv in self.intervals)

    def __len__(self):
        return len(self.intervals)

    def to_dict(self):
        return {"intervals": [iv.to_dict() for iv in self.intervals], "text": str(self)}

    def is_rational_form(self, spec) -> bool:
        """Compare with a list of (lo, hi, lo_closed, hi_closed) with rational/inf ends."""
        if len(spec) != len(self.intervals):
            return False
        for iv, (lo, hi, lc, hc) in zip(self.intervals, spec):
            for e, want in ((iv.lo, lo), (iv.hi, hi)):
                if isinstance(e, RealRoot):
                    return False
                if isinstance(want, float) != isinstance(e, float) or e != want:
                    return False
            if (iv.lo_closed, iv.hi_closed) != (lc, hc):
                return False
        return True


# -- cell decisions -----------------------------------------------------------


def _fiber(pair, x):
    sub = {"x1": x}
    return (
        pair.f.specialize(sub).to_univariate("y"),
        pair.g.specialize(sub).to_univariate("y"),
    )


def _admissible(K, f, g):
    """Squarefree part of f with the roots shared with g removed."""
    f = upoly.trim(K, f)
    sqf = upoly.exquo(K, f, upoly.gcd(K, f, upoly.deriv(K, f)))
    return upoly.strip_common(K, sqf, upoly.trim(K, g))


def member_real(pair, x) -> bool:
    """Is the rational x in the real image?  (Direct Sturm count on the fiber.)"""
    f, g = _fiber(pair, Fraction(x))
    h = _admissible(QQ, f, g)
    return len(h) > 1 and sturm_count(h) > 0


def member_real_point(pair, alpha) -> bool:
    """Real membership of a rational point in any base dimension."""
    sub = dict(zip(pair.ring.names[:-1], (Fraction(a) for a in alpha)))
    f = pair.f.specialize(sub).to_univariate("y")
    g = pair.g.specialize(sub).to_univariate("y")
    h = _admissible(QQ, f, g)
    return len(h) > 1 and sturm_count(h) > 0


def _member_at_root(pair, xi: RealRoot) -> bool:
    K = RootField(RealRoot(xi.poly, xi.lo, xi.hi))

    def lift(poly):
        out = []
        for k, c in sorted(poly.coeffs_in("y").items()):
            while len(out) < k:
                out.append(K.zero)
            out.append(tuple(as_dense(c.to_univariate("x1"))))
        return [K._red(c) for c in out]

    f, g = lift(pair.f), lift(pair.g)
    h = _admissible(K, f, g)
    return count_real_roots_over(K, h) > 0


def _member_at(pair, point) -> bool:
    if isinstance(point, RealRoot):
        return _member_at_root(pair, point)
    return member_real(pair, point)


def rem_monic(g, f, var="y"):
    """Remainder of g by f, f monic in var."""
    m = f.degree(var)
    y = f.ring.var(var)
    while not g.is_zero() and g.degree(var) >= m:
        k = g.degree(var)
        g = g - g.coeffs_in(var)[k] * y ** (k - m) * f
    return g


def boundary_polys(pair) -> list:
    f, fy = pair.f, pair.fy
    r = rem_monic(pair.g, f)
    polys = list(principal_subresultants(f, fy))
    if not r.is_zero():
        polys += principal_subresultants(f, r)
        polys.append(r.leading_coeff_in("y"))
    out = []
    for c in polys:
        if c.is_zero() or c.is_constant():
            continue
        out.append([Fraction(a) for a in c.to_univariate("x1")])
    return out


def _boundary_points(pair):
    cands = [squarefree(c) for c in boundary_polys(pair)]
    B = [Fraction(1)]
    for c in cands:
        B = upoly.exquo(QQ, upoly.mul(QQ, B, c), upoly.gcd(QQ, B, c))
    if len(B) <= 1:
        return []
    pts = real_roots(B)
    for r in pts:
        if isinstance(r, RealRoot):
            # present each irrational endpoint by a small defining factor
            for c in sorted(cands, key=len):
                d = upoly.gcd(QQ, r.poly, c)
                if 1 < len(d) < len(r.poly) and r.vanishes(d):
                    r.shrink(d)
    return pts


def _upper(e):
    return e.hi if isinstance(e, RealRoot) else e


def _lower(e):
    return e.lo if isinstance(e, RealRoot) else e


def _between(a, b) -> Fraction:
    """A rational strictly between consecutive boundary points a < b."""
    while not _upper(a) < _lower(b):
        if isinstance(a, RealRoot):
            a.bisect()
        if isinstance(b, RealRoot):
            b.bisect()
    return (_upper(a) + _lower(b)) / 2


def real_intervals(pair) -> IntervalUnion:
    """The real image {a : exists b, f(a, b) = 0 != g(a, b)} for n = 1 over Q."""
    if pair.n != 1:
        raise ValueError("real intervals need a one-dimensional base")
    if pair.field is not QQ:
        raise ValueError("real intervals need a pair over Q")
    pts = _boundary_points(pair)
    # cells: open gaps interleaved with boundary points
    if not pts:
        inside = member_real(pair, 0)
        return IntervalUnion([Interval(-INF, INF)] if inside else [])
    samples = [_lower(pts[0]) - 1]
    for a, b in zip(pts, pts[1:]):
        samples.append(_between(a, b))
    samples.append(_upper(pts[-1]) + 1)
    gaps = [member_real(pair, s) for s in samples]
    at = [_member_at(pair, p) for p in pts]

    pieces = []
    cur = None  # [lo, lo_closed]

    def close(hi, hi_closed):
        pieces.append(Interval(cur[0], hi, cur[1], hi_closed))

    ends = [-INF] + pts + [INF]
    for i, inside in enumerate(gaps):
        lo, hi = ends[i], ends[i + 1]
        if inside:
            if cur is None:
                cur = [lo, False]
        elif cur is not None:
            close(lo, at[i - 1])
            cur = None
        if i < len(pts):
            if at[i] and cur is None:
                cur = [hi, True]
            elif not at[i] and cur is not None:
                close(hi, False)
                cur = None
    if cur is not None:
        close(INF, False)
    return IntervalUnion(pieces)
