"""Field contexts: the rationals, prime fields and explicit extensions F_{p^m}.

Finite-field elements are stored as plain integers in ``range(q)``: the
base-``p`` digits of the integer are the coordinates in the power basis
of the modulus root (digit ``i`` is the coefficient of ``z**i``).  The
``FqElement`` wrapper adds operator overloading for interactive use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import gcd as igcd

import numpy as np

from ..errors import (
    BadDenominator,
    CompositeModulus,
    DegreeTooLarge,
    NotASubfield,
    UnsupportedCharacteristic,
)
from . import upoly
from .numtheory import factorize, is_prime, prime_divisors

ENUMERATION_BUDGET = 2**40
TABLE_LIMIT = 2**21


class Rationals:
    """The field Q with ``fractions.Fraction`` elements."""

    kind = "Q"
    characteristic = 0
    is_finite = False
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def pow(self, a, k):
        return Fraction(a) ** k

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, x):
        return Fraction(x)

    def to_fraction(self, a):
        return a

    def fmt(self, a):
        return str(a)

    @property
    def spec(self):
        return "Q"

    def __repr__(self):
        return "Rationals()"

    def __reduce__(self):
        return (_rationals, ())


def _rationals():
    return QQ


QQ = Rationals()


class FiniteField:
    """The finite field F_q, q = p**m, presented as F_p[z]/(modulus)."""

    is_finite = True

    def __init__(self, p: int, m: int, modulus):
        self.p = p
        self.m = m
        self.q = p**m
        self.characteristic = p
        self.modulus = tuple(modulus)
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        self.zero = 0
        self.one = 1
        self._powers = tuple(p**i for i in range(m))
        self._tab = None
        self._sqmask = None
        self._invtab = None
        self._sqrttab = None

    # -- identity -----------------------------------------------------
    @property
    def kind(self):
        return "PrimeField" if self.m == 1 else "ExtField"

    @property
    def spec(self):
        return f"Fp:{self.p}" if self.m == 1 else f"Fq:{self.p}^{self.m}"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"PrimeField({self.p})"
        return f"ExtField({self.p}, {self.m}, modulus={_fmt_modulus(self.modulus)})"

    def __reduce__(self):
        return (make_ext_field, (self.p, self.m))

    def __call__(self, value) -> "FqElement":
        if isinstance(value, (list, tuple)):
            return FqElement(self, self.from_coords(value))
        if isinstance(value, Fraction):
            return FqElement(self, self.from_fraction(value))
        return FqElement(self, self.from_int(value))

    # -- conversions --------------------------------------------------
    def coords(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            a, d = divmod(a, self.p)
            out.append(d)
        return tuple(out)

    def from_coords(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.m:
            raise ValueError("too many coordinates")
        return sum((c % self.p) * w for c, w in zip(cs, self._powers))

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, x) -> int:
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise BadDenominator(f"denominator of {x} is divisible by {self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def elements(self):
        return range(self.q)

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    def fmt(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        cs = self.coords(a)
        terms = []
        for i in range(self.m - 1, -1, -1):
            c = cs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    # -- scalar arithmetic ---------------------------------------------
    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        out, w = 0, 1
        for _ in range(self.m):
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * w
            w *= p
        return out

    def neg(self, a):
        if self.m == 1:
            return -a % self.p
        p = self.p
        out, w = 0, 1
        for _ in range(self.m):
            a, d = divmod(a, p)
            out += (-d % p) * w
            w *= p
        return out

    def sub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        tab = self._tab
        if tab is not None:
            exp, log = tab
            return int(exp[log[a] + log[b]])
        return self._mul_generic(a, b)

    def _mul_generic(self, a, b):
        p, m, mod = self.p, self.m, self.modulus
        da, db = self.coords(a), self.coords(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * mod[j]
        return self.from_coords(prod[:m])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        tab = self._tab
        if tab is not None:
            exp, log = tab
            return int(exp[(self.q - 1 - log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        if self.m == 1:
            return pow(a, k, self.p)
        if k == 0:
            return 1
        if a == 0:
            return 0
        tab = self._tab
        if tab is not None:
            exp, log = tab
            return int(exp[(int(log[a]) * k) % (self.q - 1)])
        result = 1
        while k:
            if k & 1:
                result = self._mul_generic(result, a)
            k >>= 1
            if k:
                a = self._mul_generic(a, a)
        return result

    def is_zero(self, a):
        return a == 0

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        n = self.q - 1
        for r in prime_divisors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    # -- tables and vectorized arithmetic --------------------------------
    def ensure_tables(self):
        """Build discrete exp/log tables (needed for vectorized ext-field ops)."""
        if self._tab is not None or self.m == 1:
            return
        if self.q > TABLE_LIMIT:
            raise DegreeTooLarge(f"F_{self.q} is too large for lookup tables")
        g = self.primitive_element()
        n = self.q - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.full(self.q, -(10**12), dtype=np.int64)
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._mul_generic(x, g)
        exp[n:] = exp[:n]
        self._tab = (exp, log)

    @property
    def tables(self):
        self.ensure_tables()
        return self._tab

    def primitive_element(self) -> int:
        return _primitive_element(self)

    def square_mask(self) -> np.ndarray:
        """Boolean array indexed by element: True on squares (0 included)."""
        if self._sqmask is None:
            mask = np.zeros(self.q, dtype=bool)
            if self.m == 1:
                x = np.arange(self.q, dtype=np.int64)
                mask[(x * x) % self.p] = True
            else:
                exp, _ = self.tables
                mask[exp[0 : self.q - 1 : 2]] = True
                mask[0] = True
            self._sqmask = mask
        return self._sqmask

    def inverse_table(self) -> np.ndarray:
        """inv[a] = 1/a for a != 0 (inv[0] = 0)."""
        if self._invtab is None:
            x = np.arange(self.q, dtype=np.int64)
            self._invtab = self.vpow(x, self.q - 2)
        return self._invtab

    def sqrt_table(self) -> np.ndarray:
        """root[s] with root[s]^2 = s on squares, -1 elsewhere."""
        if self._sqrttab is None:
            x = np.arange(self.q, dtype=np.int64)
            root = np.full(self.q, -1, dtype=np.int64)
            root[self.vmul(x, x)] = x
            self._sqrttab = root
        return self._sqrttab

    def varray(self, values) -> np.ndarray:
        return np.asarray(values, dtype=np.int64)

    def vadd(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._powers:
            out += ((a // w + b // w) % p) * w
        return out

    def vneg(self, a):
        if self.m == 1:
            return (-a) % self.p
        p = self.p
        out = np.zeros(np.shape(a), dtype=np.int64)
        for w in self._powers:
            out += ((-(a // w)) % p) * w
        return out

    def vsub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        exp, log = self.tables
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        idx = log[a] + log[b]
        zero = (a == 0) | (b == 0)
        idx = np.where(zero, 0, idx)
        return np.where(zero, 0, exp[idx])

    def vpow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        if self.m == 1:
            result = np.ones_like(a)
            base = a % self.p
            while k:
                if k & 1:
                    result = (result * base) % self.p
                k >>= 1
                if k:
                    base = (base * base) % self.p
            return result
        exp, log = self.tables
        zero = a == 0
        idx = np.where(zero, 0, (log[a] * k) % (self.q - 1))
        return np.where(zero, 0, exp[idx])


def _fmt_modulus(mod) -> str:
    terms = []
    for i in range(len(mod) - 1, -1, -1):
        c = mod[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms)


@cache
def _primitive_element(F: FiniteField) -> int:
    n = F.q - 1
    rs = prime_divisors(n) if n > 1 else []
    for g in range(1, F.q):
        if all(F.pow(g, n // r) != 1 for r in rs):
            return g
    raise ArithmeticError("no primitive element found")


@cache
def prime_field(p: int) -> FiniteField:
    _check_char(p)
    return FiniteField(p, 1, (0, 1))


def _check_char(p: int):
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    if p == 2:
        raise UnsupportedCharacteristic("characteristic 2 is not supported")
    if p >= 2**63:
        raise CompositeModulus(f"{p} exceeds the machine-word bound")


def is_irreducible_mod_p(poly, p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    K = prime_field(p)
    f = upoly.trim(K, [c % p for c in poly])
    m = upoly.deg(f)
    if m <= 0:
        return False
    if m == 1:
        return True
    x = [0, 1]

    def frob_iter(k):
        r = x
        for _ in range(k):
            r = upoly.powmod(K, r, p, f)
        return r

    if upoly.sub(K, frob_iter(m), x):
        return False
    for r in prime_divisors(m):
        h = upoly.sub(K, frob_iter(m // r), x)
        if len(upoly.gcd(K, h, f)) > 1:
            return False
    return True


def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """The first monic irreducible of degree m in the canonical enumeration.

    Candidates ``x**m + a_{m-1} x**(m-1) + ... + a_0`` are visited in
    increasing order of the integer ``a_0 + a_1 p + ... + a_{m-1} p**(m-1)``.
    """
    for code in range(p**m):
        lower = []
        c = code
        for _ in range(m):
            c, d = divmod(c, p)
            lower.append(d)
        if m > 1 and lower[0] == 0:
            continue
        if is_irreducible_mod_p(lower + [1], p):
            return tuple(lower) + (1,)
    raise ArithmeticError("no irreducible polynomial found")


@cache
def make_ext_field(p: int, m: int, budget: int = ENUMERATION_BUDGET) -> FiniteField:
    """Return the canonical presentation of F_{p^m}."""
    _check_char(p)
    if m < 1:
        raise ValueError("extension degree must be positive")
    if p**m > budget:
        raise DegreeTooLarge(f"{p}^{m} exceeds the enumeration budget {budget}")
    if m == 1:
        return prime_field(p)
    return FiniteField(p, m, canonical_modulus(p, m))


@dataclass(frozen=True)
class FqElement:
    """An element of a finite field with operator overloading."""

    ctx: FiniteField
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coords(self.value)

    def _lift(self, other):
        if isinstance(other, FqElement):
            if other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, Fraction):
            return self.ctx.from_fraction(other)
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._lift(other)
        return NotImplemented if b is NotImplemented else FqElement(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._lift(other)
        return NotImplemented if b is NotImplemented else FqElement(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._lift(other)
        return NotImplemented if b is NotImplemented else FqElement(self.ctx, self.ctx.sub(b, self.value))

    def __mul__(self, other):
        b = self._lift(other)
        return NotImplemented if b is NotImplemented else FqElement(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._lift(other)
        return NotImplemented if b is NotImplemented else FqElement(self.ctx, self.ctx.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._lift(other)
        return NotImplemented if b is NotImplemented else FqElement(self.ctx, self.ctx.div(b, self.value))

    def __neg__(self):
        return FqElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, k: int):
        return FqElement(self.ctx, self.ctx.pow(self.value, k))

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FqElement({self.ctx.spec}, {self.ctx.fmt(self.value)})"


def frobenius(a: FqElement) -> FqElement:
    return FqElement(a.ctx, a.ctx.pow(a.value, a.ctx.p))


def norm_to_prime(a: FqElement) -> int:
    F = a.ctx
    n = F.pow(a.value, (F.q - 1) // (F.p - 1))
    return F.coords(n)[0]


def is_square(a: FqElement) -> bool:
    return a.ctx.is_square(a.value)


def minimal_polynomial(F: FiniteField, a: int) -> list[int]:
    """Minimal polynomial over F_p of ``a`` (coefficients in F_p, low first)."""
    conj = [a]
    x = F.pow(a, F.p)
    while x != a:
        conj.append(x)
        x = F.pow(x, F.p)
    poly = [1]
    for c in conj:
        poly = upoly.mul(F, poly, [F.neg(c), 1])
    return [F.coords(c)[0] for c in poly]


@cache
def compatible_generator(F: FiniteField) -> int:
    """Primitive element whose norms match the generators of every subfield.

    For every proper divisor r of m, raising the result to the power
    (q - 1)/(p^r - 1) lands on a conjugate of ``compatible_generator``
    of F_{p^r}; embeddings built from these elements commute along towers.
    """
    if F.m == 1:
        return F.primitive_element()
    conds = []
    for ell in prime_divisors(F.m):
        r = F.m // ell
        Fr = make_ext_field(F.p, r)
        mp = minimal_polynomial(Fr, compatible_generator(Fr))
        conds.append(((F.q - 1) // (F.p**r - 1), mp))
    F.ensure_tables()
    exp, log = F.tables
    n = F.q - 1
    for cand in range(1, F.q):
        if igcd(int(log[cand]), n) != 1:
            continue
        if all(upoly.evaluate(F, mp, F.pow(cand, e)) == 0 for e, mp in conds):
            return cand
    raise ArithmeticError("no compatible generator found")


@cache
def _root_image(Fr: FiniteField, Fm: FiniteField) -> int:
    """Image in Fm of the modulus root z of Fr under the canonical embedding."""
    if Fr.m == 1:
        return 0
    Fr.ensure_tables()
    g_r = compatible_generator(Fr)
    _, log = Fr.tables
    n_r = Fr.q - 1
    z = Fr.p  # encoding of the modulus root
    k = int(log[z]) * pow(int(log[g_r]), -1, n_r) % n_r
    g_m = compatible_generator(Fm)
    return Fm.pow(g_m, k * ((Fm.q - 1) // n_r))


def embed(a: FqElement, target: FiniteField) -> FqElement:
    """Embed ``a`` from F_{p^r} into F_{p^m}; requires r | m."""
    Fr = a.ctx
    if Fr.p != target.p or target.m % Fr.m:
        raise NotASubfield(f"{Fr.spec} is not a subfield of {target.spec}")
    if Fr == target:
        return a
    if Fr.m == 1:
        return FqElement(target, a.value)
    rho = _root_image(Fr, target)
    acc = 0
    for c in reversed(Fr.coords(a.value)):
        acc = target.add(target.mul(acc, rho), c)
    return FqElement(target, acc)


def parse_field(spec: str):
    """Parse ``Q``, ``Fp:<p>``, ``Fq:<p>^<m>`` or ``Qp:<p>@<N>``."""
    from .padic import PadicField

    s = spec.strip()
    try:
        if s == "Q":
            return QQ
        if s.startswith("Fp:"):
            return prime_field(int(s[3:]))
        if s.startswith("Fq:"):
            p, m = s[3:].split("^")
            return make_ext_field(int(p), int(m))
        if s.startswith("Qp:"):
            p, n = s[3:].split("@")
            return PadicField(int(p), int(n))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, (CompositeModulus, UnsupportedCharacteristic, DegreeTooLarge)):
            raise
        raise ValueError(f"malformed field spec {spec!r}") from exc
    raise ValueError(f"unknown field spec {spec!r}")


def field_size_factor(q: int) -> tuple[int, int]:
    """Split a prime power into (p, m)."""
    f = factorize(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    return f[0]
