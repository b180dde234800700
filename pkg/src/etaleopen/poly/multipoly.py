"""Sparse multivariate polynomials over a field context.

Monomials are exponent tuples indexed by the ring's variables.  The term
order is graded lexicographic with the *last* variable greatest, so in
the ring ``x1, ..., xn, y`` the fiber variable ``y`` dominates ties.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache

from ..algebra.fields import QQ


def grlex_key(e):
    return (sum(e), e[::-1])


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """K[names]; instances are interned, so rings compare by identity."""

    def __new__(cls, field, names):
        return _ring(field, tuple(names))

    @classmethod
    def _create(cls, field, names):
        self = object.__new__(cls)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        return self

    def __reduce__(self):
        return (PolyRing, (self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field.spec}, {list(self.names)})"

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self._index[var]
        except KeyError:
            raise KeyError(f"variable {var!r} not in ring {self.names}") from None

    def zero_mono(self):
        return (0,) * self.nvars

    def coerce_coeff(self, c):
        K = self.field
        if isinstance(c, bool):
            c = int(c)
        if isinstance(c, int):
            return K.from_int(c)
        if isinstance(c, Fraction):
            return K.from_fraction(c)
        return c

    def const(self, c) -> "MultiPoly":
        c = self.coerce_coeff(c)
        if self.field.is_zero(c):
            return MultiPoly(self, {})
        return MultiPoly(self, {self.zero_mono(): c})

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(1)

    def var(self, name) -> "MultiPoly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return MultiPoly(self, {tuple(e): self.field.one})

    def gens(self):
        return tuple(self.var(n) for n in self.names)

    def extend(self, *names) -> "PolyRing":
        return PolyRing(self.field, self.names + tuple(names))

    def with_field(self, field) -> "PolyRing":
        return PolyRing(field, self.names)

    def parse(self, text: str) -> "MultiPoly":
        from .parse import parse_poly

        return parse_poly(text, self)


@cache
def _ring(field, names):
    return PolyRing._create(field, names)


class MultiPoly:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    @classmethod
    def from_terms(cls, ring, items) -> "MultiPoly":
        K = ring.field
        out = {}
        for e, c in items:
            c = ring.coerce_coeff(c)
            if e in out:
                c = K.add(out[e], c)
            if K.is_zero(c):
                out.pop(e, None)
            else:
                out[e] = c
        return cls(ring, out)

    # -- basic queries ---------------------------------------------------
    @property
    def field(self):
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_mono() in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_mono(), self.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var=None) -> int:
        if var is None:
            return self.total_degree()
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> list[str]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.ring.names[i] for i in sorted(used)]

    def leading_monomial(self):
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=grlex_key)
        return self._lm

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = K.add(out[e], c)
                if K.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return MultiPoly(self.ring, {e: K.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                c = K.mul(c1, c2)
                if e in out:
                    c = K.add(out[e], c)
                    if K.is_zero(c):
                        del out[e]
                        continue
                out[e] = c
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        K = self.field
        c = self.ring.coerce_coeff(c)
        if K.is_zero(c):
            return self.ring.zero()
        return MultiPoly(self.ring, {e: K.mul(v, c) for e, v in self.terms.items()})

    def mul_term(self, mono, c) -> "MultiPoly":
        K = self.field
        return MultiPoly(self.ring, {mono_mul(e, mono): K.mul(v, c) for e, v in self.terms.items()})

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading_coeff()))

    def exquo(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient; raises ArithmeticError if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        K = self.field
        lm = other.leading_monomial()
        inv_lc = K.inv(other.leading_coeff())
        rem = self
        quot = {}
        while not rem.is_zero():
            m = rem.leading_monomial()
            if not mono_divides(lm, m):
                raise ArithmeticError("inexact multivariate division")
            mono = mono_div(m, lm)
            c = K.mul(rem.terms[m], inv_lc)
            quot[mono] = c
            rem = rem - other.mul_term(mono, c)
        return MultiPoly(self.ring, quot)

    # -- equality ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.terms.items())))

    # -- calculus and substitution -------------------------------------------
    def partial_derivative(self, var) -> "MultiPoly":
        i = self.ring.index(var)
        K = self.field
        items = []
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            e2 = e[:i] + (k - 1,) + e[i + 1 :]
            items.append((e2, K.mul(K.from_int(k), c)))
        return MultiPoly.from_terms(self.ring, items)

    def coeffs_in(self, var) -> dict[int, "MultiPoly"]:
        """Coefficients as a polynomial in ``var`` (``var`` removed from terms)."""
        i = self.ring.index(var)
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1 :]] = c
        return {k: MultiPoly(self.ring, d) for k, d in parts.items()}

    def leading_coeff_in(self, var) -> "MultiPoly":
        cs = self.coeffs_in(var)
        return cs[max(cs)] if cs else self.ring.zero()

    def is_monic_in(self, var) -> bool:
        if self.is_zero():
            return False
        lcf = self.leading_coeff_in(var)
        return lcf.is_constant() and lcf.constant_coeff() == self.field.one

    def substitute(self, var, replacement) -> "MultiPoly":
        if not isinstance(replacement, MultiPoly):
            replacement = self.ring.const(replacement)
        cs = self.coeffs_in(var)
        if not cs:
            return self
        acc = self.ring.zero()
        for k in range(max(cs), -1, -1):
            acc = acc * replacement
            if k in cs:
                acc = acc + cs[k]
        return acc

    def specialize(self, assignment: dict) -> "MultiPoly":
        """Substitute field constants for some variables (names -> raw elements)."""
        K = self.field
        idx = {self.ring.index(v): self.ring.coerce_coeff(a) for v, a in assignment.items()}
        items = []
        for e, c in self.terms.items():
            e2 = list(e)
            for i, a in idx.items():
                if e[i]:
                    c = K.mul(c, K.pow(a, e[i]))
                    e2[i] = 0
            items.append((tuple(e2), c))
        return MultiPoly.from_terms(self.ring, items)

    def evaluate(self, point):
        """Evaluate at a full point: a sequence in ring order or a name dict."""
        if isinstance(point, dict):
            vals = [self.ring.coerce_coeff(point[n]) for n in self.ring.names]
        else:
            vals = [self.ring.coerce_coeff(a) for a in point]
            if len(vals) != self.ring.nvars:
                raise ValueError("point has wrong arity")
        K = self.field
        acc = K.zero
        for e, c in self.terms.items():
            t = c
            for a, k in zip(vals, e):
                if k:
                    t = K.mul(t, K.pow(a, k))
            acc = K.add(acc, t)
        return acc

    def to_univariate(self, var) -> list:
        """Dense coefficient list in ``var``; other variables must be absent."""
        i = self.ring.index(var)
        K = self.field
        out = [K.zero] * (self.degree(i) + 1) if self.terms else []
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, ring, var, coeffs) -> "MultiPoly":
        i = ring.index(var)
        z = ring.zero_mono()
        items = []
        for k, c in enumerate(coeffs):
            e = z[:i] + (k,) + z[i + 1 :]
            items.append((e, c))
        return cls.from_terms(ring, items)

    def map_coeffs(self, fn, ring=None) -> "MultiPoly":
        ring = ring or self.ring
        return MultiPoly.from_terms(ring, [(e, fn(c)) for e, c in self.terms.items()])

    def to_ring(self, ring: PolyRing, coeff_map=None) -> "MultiPoly":
        """Move into another ring, matching variables by name."""
        pos = []
        for i, n in enumerate(self.ring.names):
            pos.append(ring.index(n))
        fn = coeff_map or (lambda c: c)
        items = []
        for e, c in self.terms.items():
            e2 = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    e2[pos[i]] = k
            items.append((tuple(e2), fn(c)))
        return MultiPoly.from_terms(ring, items)

    def reduce_mod(self, field) -> "MultiPoly":
        """Reduce rational coefficients into a finite field."""
        ring = self.ring.with_field(field)
        return self.map_coeffs(lambda c: field.from_fraction(self.field.to_fraction(c)), ring)

    # -- printing ------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        K = self.field
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.ring.names, e) if k
            )
            cs = _coeff_str(K, c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                body = mono if cs == "1" else f"{_paren(cs)}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, body in parts[1:]:
            out += f" {sgn} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def _coeff_str(K, c) -> str:
    if K is QQ:
        return str(c)
    if getattr(K, "is_finite", False) and K.m == 1:
        return str(c)
    return K.fmt(c)


def _paren(s: str) -> str:
    return f"({s})" if any(ch in s for ch in " +") else s
