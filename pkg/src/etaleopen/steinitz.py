"""Steinitz numbers and the square calculus of algebraic extensions of F_p.

A Steinitz number is a formal product of prime powers with exponents in
N or infinity.  Only finitely supported numbers are representable.  The
subfield F_{p^s} of the algebraic closure contains F_{p^n} iff n | s.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

from .algebra.fields import TABLE_LIMIT, FqElement, embed, make_ext_field, prime_field
from .algebra.numtheory import factorize, is_prime
from .errors import ElementNotInField, ParseError, QuadraticallyClosed

INF = math.inf


def _exp_str(e):
    return "inf" if e == INF else str(e)


class SteinitzNumber:
    """prod q^e(q) over finitely many primes q, e(q) in {1, 2, ..., inf}."""

    __slots__ = ("exponents",)

    def __init__(self, exponents=None):
        exps = {}
        for q, e in dict(exponents or {}).items():
            if not is_prime(q):
                raise ValueError(f"{q} is not prime")
            if e == INF or e == "inf":
                exps[q] = INF
            elif e < 0:
                raise ValueError("negative exponent")
            elif e:
                exps[q] = int(e)
        self.exponents = dict(sorted(exps.items()))

    @classmethod
    def of(cls, n) -> "SteinitzNumber":
        if isinstance(n, SteinitzNumber):
            return n
        if isinstance(n, str):
            return parse_steinitz(n)
        if n < 1:
            raise ValueError("natural numbers only")
        return cls(dict(factorize(n)))

    def val(self, q: int):
        return self.exponents.get(q, 0)

    def is_natural(self) -> bool:
        return all(e != INF for e in self.exponents.values())

    def __int__(self):
        if not self.is_natural():
            raise ValueError(f"{self} is not a natural number")
        return math.prod(q**e for q, e in self.exponents.items())

    def _merge(self, other, op):
        other = SteinitzNumber.of(other)
        primes = self.exponents.keys() | other.exponents.keys()
        return SteinitzNumber({q: op(self.val(q), other.val(q)) for q in primes})

    def __mul__(self, other):
        return self._merge(other, lambda a, b: a + b)

    __rmul__ = __mul__

    def lcm(self, other):
        return self._merge(other, max)

    def gcd(self, other):
        return self._merge(other, min)

    def divides(self, other) -> bool:
        other = SteinitzNumber.of(other)
        return all(e <= other.val(q) for q, e in self.exponents.items())

    def __eq__(self, other):
        try:
            other = SteinitzNumber.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.exponents == other.exponents

    def __le__(self, other):
        return self.divides(other)

    def __hash__(self):
        return hash(tuple(self.exponents.items()))

    def __str__(self):
        if not self.exponents:
            return "1"
        return "*".join(q_str(q, e) for q, e in self.exponents.items())

    def __repr__(self):
        return f"SteinitzNumber({self})"


def q_str(q, e):
    return str(q) if e == 1 else f"{q}^{_exp_str(e)}"


_FACTOR = re.compile(r"^(\d+)(?:\^(\d+|inf))?$")


def parse_steinitz(text: str) -> SteinitzNumber:
    """Parse literals such as ``2^3*5^inf*7`` (``1`` is the empty product)."""
    text = text.replace(" ", "")
    if text in ("", "1"):
        return SteinitzNumber()
    out = SteinitzNumber()
    for part in text.split("*"):
        m = _FACTOR.match(part)
        if not m:
            raise ParseError(f"bad Steinitz factor {part!r}")
        base = int(m.group(1))
        e = m.group(2) or "1"
        if e == "inf":
            if not is_prime(base):
                raise ParseError(f"infinite exponent on the composite {base}")
            out = out.lcm(SteinitzNumber({base: INF}))
        else:
            if base < 1:
                raise ParseError("factors must be positive")
            out = out * SteinitzNumber.of(base ** int(e))
    return out


def divides(a, b) -> bool:
    return SteinitzNumber.of(a).divides(b)


def val(q: int, s):
    return SteinitzNumber.of(s).val(q)


@dataclass(frozen=True)
class SteinitzField:
    """The subfield F_{p^s} of the algebraic closure of F_p."""

    p: int
    s: SteinitzNumber

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError("p must be an odd prime")
        object.__setattr__(self, "s", SteinitzNumber.of(self.s))

    @property
    def spec(self):
        return f"Fs:{self.p}^{{{self.s}}}"

    def is_finite(self) -> bool:
        return self.s.is_natural()

    def __str__(self):
        return self.spec


_FSPEC = re.compile(r"^Fs:(\d+)\^\{(.*)\}$")


def parse_steinitz_field(spec: str) -> SteinitzField:
    """Parse ``Fs:3^{2*5^inf}``."""
    m = _FSPEC.match(spec.strip())
    if not m:
        raise ParseError(f"bad Steinitz field spec {spec!r}")
    return SteinitzField(int(m.group(1)), parse_steinitz(m.group(2)))


def contains_subfield(K: SteinitzField, n: int) -> bool:
    return SteinitzNumber.of(n).divides(K.s)


def k0_of(K: SteinitzField) -> int:
    """Degree of the largest 2-power subfield: 2^val_2(s)."""
    v = K.s.val(2)
    if v == INF:
        raise QuadraticallyClosed(f"{K} is quadratically closed (val_2 = inf)")
    return 2**v


def square_level(K: SteinitzField, n: int) -> int:
    """The finite level lcm(n, k0) where the square question is decided."""
    return math.lcm(n, k0_of(K))


def is_square_in(K: SteinitzField, a) -> bool:
    """Is a (an element of some finite F_{p^n} inside K) a square in K?

    a is a square in K iff it is a square in F_{p^l}, l = lcm(n, k0):
    every intermediate level shares the 2-part of its degree with l.
    """
    if isinstance(a, int):
        a = FqElement(prime_field(K.p), a % K.p)
    F = a.ctx
    if F.p != K.p or not contains_subfield(K, F.m):
        raise ElementNotInField(f"{F.spec} is not a subfield of {K}")
    if a.value == 0:
        return True
    ell = square_level(K, F.m)
    e = (K.p**ell - 1) // 2
    if K.p**ell <= TABLE_LIMIT:
        L = make_ext_field(K.p, ell)
        b = embed(a, L)
        return L.pow(b.value, e) == 1
    # the Euler power of an element of F_{p^n} already lies in F_{p^n}
    return F.pow(a.value, e) == 1


def euler_square(a: FqElement, level: int) -> bool:
    """Direct Euler test for a in F_{p^level} (a's field must divide it)."""
    L = make_ext_field(a.ctx.p, level)
    b = embed(a, L).value
    return b == 0 or L.pow(b, (L.q - 1) // 2) == 1


def lcm_all(nums):
    return reduce(lambda x, y: SteinitzNumber.of(x).lcm(y), nums, SteinitzNumber())
