"""Sturm sequences and real root isolation over Q.

Univariate polynomials here are dense ``Fraction`` lists (lowest degree
first), as produced by :mod:`etaleopen.algebra.upoly`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ..algebra import upoly
from ..algebra.fields import QQ
from ..errors import ZeroPolynomial

INF = float("inf")


def as_dense(f) -> list:
    if isinstance(f, (list, tuple)):
        return upoly.trim(QQ, [Fraction(c) for c in f])
    from .multipoly import MultiPoly

    if isinstance(f, MultiPoly):
        names = f.variables()
        if len(names) > 1:
            raise ValueError("expected a univariate polynomial")
        if not names:
            return upoly.const(QQ, Fraction(f.constant_coeff()))
        return [Fraction(c) for c in f.to_univariate(names[0])]
    raise TypeError(f"cannot interpret {f!r} as a univariate polynomial")


def primitive(a: list) -> list:
    """Scale by a positive rational to a primitive integer polynomial."""
    if not a:
        return []
    den = lcm(*(c.denominator for c in a))
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [Fraction(c // g) for c in ints]


def squarefree(a: list) -> list:
    a = upoly.trim(QQ, a)
    if len(a) <= 1:
        return a
    g = upoly.gcd(QQ, a, upoly.deriv(QQ, a))
    return primitive(upoly.exquo(QQ, a, g))


def sturm_sequence(f) -> list[list]:
    f = as_dense(f)
    if not f:
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [primitive(f)]
    d = primitive(upoly.deriv(QQ, f))
    if not d:
        return seq
    seq.append(d)
    while True:
        r = upoly.rem(QQ, seq[-2], seq[-1])
        if not r:
            break
        seq.append(primitive(upoly.neg(QQ, r)))
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_at(a: list, x) -> int:
    if not a:
        return 0
    if x == INF:
        return _sign(a[-1])
    if x == -INF:
        return _sign(a[-1]) * (-1) ** (len(a) - 1)
    return _sign(upoly.evaluate(QQ, a, Fraction(x)))


def variations(seq, x) -> int:
    signs = [s for s in (sign_at(p, x) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(f, interval=(-INF, INF), seq=None) -> int:
    """Number of distinct real roots of f in the half-open interval (a, b]."""
    a, b = interval
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    if seq is None:
        seq = sturm_sequence(f)
    return variations(seq, a) - variations(seq, b)


def root_bound(f: list) -> Fraction:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lead = abs(f[-1])
    return 1 + max((abs(c) / lead for c in f[:-1]), default=Fraction(0))


def isolate_real_roots(f) -> list[tuple[Fraction, Fraction]]:
    """Disjoint sorted intervals (lo, hi], each holding exactly one real root."""
    f = as_dense(f)
    if not f:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if len(f) == 1:
        return []
    seq = sturm_sequence(f)
    B = root_bound(f)
    out = []
    stack = [(-B, B, sturm_count(f, (-B, B), seq))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = sturm_count(f, (lo, mid), seq)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort()
    return out


def refine(f, lo: Fraction, hi: Fraction, width: Fraction, seq=None):
    """Shrink an isolating interval (lo, hi] of f below ``width``."""
    if seq is None:
        seq = sturm_sequence(f)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if sturm_count(f, (lo, mid), seq):
            hi = mid
        else:
            lo = mid
    return lo, hi
