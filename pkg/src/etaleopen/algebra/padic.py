"""Fixed-precision p-adic numbers.

A nonzero ``PadicNumber`` is ``p**valuation * unit`` with ``unit`` known
modulo ``p**precision`` (relative precision).  Zero is represented with
``valuation=None``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import _check_char
from .numtheory import valuation as int_valuation


@dataclass(frozen=True)
class PadicField:
    p: int
    precision: int

    def __post_init__(self):
        _check_char(self.p)
        if self.precision < 1:
            raise ValueError("precision must be at least 1")

    kind = "Padic"
    is_finite = False

    @property
    def characteristic(self):
        return 0

    @property
    def spec(self):
        return f"Qp:{self.p}@{self.precision}"

    def __call__(self, x) -> "PadicNumber":
        return PadicNumber.from_rational(x, self.p, self.precision)


@dataclass(frozen=True)
class PadicNumber:
    p: int
    valuation: int | None
    unit: int
    precision: int

    def __post_init__(self):
        if self.valuation is not None:
            mod = self.p**self.precision
            if not (1 <= self.unit < mod) or self.unit % self.p == 0:
                raise ValueError("unit must be a residue coprime to p")

    @classmethod
    def zero(cls, p, precision):
        return cls(p, None, 0, precision)

    @classmethod
    def from_rational(cls, x, p: int, precision: int) -> "PadicNumber":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, precision)
        num, den = x.numerator, x.denominator
        v = 0
        if num % p == 0:
            v = int_valuation(num, p)
            num //= p**v
        elif den % p == 0:
            w = int_valuation(den, p)
            den //= p**w
            v = -w
        mod = p**precision
        return cls(p, v, num * pow(den, -1, mod) % mod, precision)

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def absolute_precision(self) -> float:
        if self.valuation is None:
            return float("inf")
        return self.valuation + self.precision

    def to_rational(self) -> Fraction:
        """The canonical rational representative ``p**v * unit``."""
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.p) ** self.valuation * self.unit

    def _check(self, other):
        if not isinstance(other, PadicNumber):
            other = PadicNumber.from_rational(other, self.p, self.precision)
        if other.p != self.p:
            raise ValueError("p-adic numbers over different primes")
        return other

    def __mul__(self, other):
        other = self._check(other)
        n = min(self.precision, other.precision)
        if self.is_zero or other.is_zero:
            return PadicNumber.zero(self.p, n)
        mod = self.p**n
        return PadicNumber(self.p, self.valuation + other.valuation, self.unit * other.unit % mod, n)

    __rmul__ = __mul__

    def __neg__(self):
        if self.is_zero:
            return self
        mod = self.p**self.precision
        return PadicNumber(self.p, self.valuation, -self.unit % mod, self.precision)

    def __add__(self, other):
        other = self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p = self.p
        v = min(self.valuation, other.valuation)
        absprec = min(self.absolute_precision, other.absolute_precision)
        mod = p ** (absprec - v)
        s = (self.unit * p ** (self.valuation - v) + other.unit * p ** (other.valuation - v)) % mod
        if s == 0:
            return PadicNumber.zero(p, min(self.precision, other.precision))
        w = int_valuation(s, p)
        return PadicNumber(p, v + w, s // p**w, absprec - v - w)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def inverse(self) -> "PadicNumber":
        if self.is_zero:
            raise ZeroDivisionError("inverse of p-adic zero")
        mod = self.p**self.precision
        return PadicNumber(self.p, -self.valuation, pow(self.unit, -1, mod), self.precision)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __eq__(self, other):
        if not isinstance(other, PadicNumber):
            return NotImplemented
        if self.p != other.p or self.valuation != other.valuation:
            return False
        if self.is_zero:
            return True
        n = min(self.precision, other.precision)
        return (self.unit - other.unit) % self.p**n == 0

    def __hash__(self):
        return hash((self.p, self.valuation))

    def __repr__(self):
        if self.is_zero:
            return f"O({self.p}^{self.precision})"
        return f"{self.p}^{self.valuation} * {self.unit} + O({self.p}^{self.absolute_precision})"
