"""Explicit Weil restriction along a basis e_1 = 1, e_2, ..., e_m of L/K.

L is described by structure constants over K and doubles as a field
context whose elements are coordinate tuples, so polynomials over L are
ordinary ``MultiPoly`` objects with tuple coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .algebra.fields import QQ, FiniteField, parse_field
from .errors import BasisMismatch
from .poly.multipoly import MultiPoly, PolyRing


def _solve(K, M, rhs):
    """Solve M x = rhs over K (M square, invertible)."""
    n = len(M)
    A = [list(row) + [r] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not K.is_zero(A[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        A[col], A[piv] = A[piv], A[col]
        inv = K.inv(A[col][col])
        A[col] = [K.mul(inv, v) for v in A[col]]
        for r in range(n):
            if r != col and not K.is_zero(A[r][col]):
                c = A[r][col]
                A[r] = [K.sub(v, K.mul(c, w)) for v, w in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def _rref(K, rows):
    """Row-reduced echelon form; returns (nonzero rows, pivot columns)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if not K.is_zero(A[i][col])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][col])
        A[r] = [K.mul(inv, v) for v in A[r]]
        for i in range(len(A)):
            if i != r and not K.is_zero(A[i][col]):
                c = A[i][col]
                A[i] = [K.sub(v, K.mul(c, w)) for v, w in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    return A[:r], pivots


class ExtensionBasis:
    """L = K e_1 + ... + K e_m with e_i e_j = sum_k c[i][j][k] e_k and e_1 = 1."""

    def __init__(self, base, consts, labels=None, name=None, check=True):
        self.base = base
        self.m = len(consts)
        K = base
        self.c = [[tuple(K.from_fraction(Fraction(v)) for v in vec) for vec in row] for row in consts]
        self.labels = list(labels) if labels else ["1"] + [f"e{k}" for k in range(2, self.m + 1)]
        self.name = name or "basis"
        self.zero = (K.zero,) * self.m
        self.one = (K.one,) + (K.zero,) * (self.m - 1)
        self.characteristic = getattr(base, "characteristic", 0)
        if check:
            self.check()

    def __repr__(self):
        return f"ExtensionBasis({self.name}, base={self.base.spec}, m={self.m})"

    @property
    def spec(self):
        return f"L:{self.name}"

    # -- validation ---------------------------------------------------------
    def check(self, samples: int = 60, seed: int = 0):
        K, m = self.base, self.m
        if any(len(row) != m or any(len(v) != m for v in row) for row in self.c):
            raise BasisMismatch("structure constants must be an m x m array of m-vectors")
        e = [self.basis(k) for k in range(1, m + 1)]
        for j in range(m):
            if self.c[0][j] != e[j] or self.c[j][0] != e[j]:
                raise BasisMismatch("e_1 must act as the identity")
        for i in range(m):
            for j in range(m):
                if self.c[i][j] != self.c[j][i]:
                    raise BasisMismatch("structure constants are not commutative")
                for k in range(m):
                    if self.mul(self.mul(e[i], e[j]), e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                        raise BasisMismatch("structure constants are not associative")
        for k in range(2, m + 1):
            if self._split_minpoly(e[k - 1]):
                raise BasisMismatch(f"e_{k} has a reducible minimal polynomial: zero divisors")
        rng = random.Random(seed)
        for _ in range(samples):
            a, b = self.random(rng), self.random(rng)
            if a != self.zero and b != self.zero and self.is_zero(self.mul(a, b)):
                raise BasisMismatch("the algebra has zero divisors")

    def minimal_polynomial(self, a) -> list:
        """Monic minimal polynomial of a over K, lowest degree first."""
        K = self.base
        powers = [self.one]
        while True:
            nxt = self.mul(powers[-1], a)
            rows, _ = _rref(K, [list(v) for v in powers + [nxt]])
            if len(rows) == len(powers):
                # nxt = sum c_j a^j: solve the m x d system column by column
                M = [[powers[j][i] for j in range(len(powers))] + [nxt[i]] for i in range(self.m)]
                rows, piv = _rref(K, M)
                c = [K.zero] * len(powers)
                for r, col in zip(rows, piv):
                    c[col] = r[-1]
                return [K.neg(x) for x in c] + [K.one]
            powers.append(nxt)

    def _split_minpoly(self, a) -> bool:
        """Does the minimal polynomial of a (degree > 1) have a root in K?"""
        from .algebra import upoly

        K = self.base
        mp = self.minimal_polynomial(a)
        if len(mp) <= 2:
            return False
        if K is QQ:
            from .etale import _rational_roots

            return bool(_rational_roots(mp))
        return any(K.is_zero(upoly.evaluate(K, mp, r)) for r in range(K.q))

    def random(self, rng):
        K = self.base
        if K is QQ:
            return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(self.m))
        return tuple(rng.randrange(K.q) for _ in range(self.m))

    # -- field context --------------------------------------------------------
    def basis(self, k: int):
        """The basis element e_k (1-based)."""
        K = self.base
        return tuple(K.one if i == k - 1 else K.zero for i in range(self.m))

    def element(self, coords):
        K = self.base
        if len(coords) != self.m:
            raise BasisMismatch(f"expected {self.m} coordinates")
        return tuple(K.from_fraction(Fraction(c)) if K is QQ else c % K.p for c in coords)

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.m - 1)

    def from_fraction(self, x):
        return (self.base.from_fraction(x),) + (self.base.zero,) * (self.m - 1)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        K = self.base
        out = [K.zero] * self.m
        for i, ai in enumerate(a):
            if K.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                if K.is_zero(bj):
                    continue
                t = K.mul(ai, bj)
                for k, ck in enumerate(self.c[i][j]):
                    if not K.is_zero(ck):
                        out[k] = K.add(out[k], K.mul(t, ck))
        return tuple(out)

    def pow(self, a, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        # columns of the multiplication-by-a matrix are a * e_j
        cols = [self.mul(a, self.basis(j + 1)) for j in range(self.m)]
        M = [[cols[j][i] for j in range(self.m)] for i in range(self.m)]
        return tuple(_solve(self.base, M, list(self.one)))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a) -> str:
        K = self.base
        parts = []
        for x, lab in zip(a, self.labels):
            if K.is_zero(x):
                continue
            s = K.fmt(x)
            parts.append(s if lab == "1" else (lab if s == "1" else f"{s}*{lab}"))
        return "(" + " + ".join(parts) + ")" if len(parts) > 1 else (parts[0] if parts else "0")

    # -- relation to explicit finite fields ------------------------------------
    @classmethod
    def power_basis(cls, F: FiniteField, name=None) -> "ExtensionBasis":
        """Basis 1, z, ..., z^(m-1) of F_{p^m} over F_p."""
        Fp = parse_field(f"Fp:{F.p}")
        m = F.m
        consts = [[F.coords(F.mul(F.p**i, F.p**j)) for j in range(m)] for i in range(m)]
        return cls(Fp, consts, ["1"] + [f"z^{k}" if k > 1 else "z" for k in range(1, m)], name or f"F{F.q}overF{F.p}")

    def matches_field(self, F) -> bool:
        if not isinstance(F, FiniteField) or not isinstance(self.base, FiniteField):
            return False
        if F.p != self.base.p or F.m != self.m:
            return False
        return ExtensionBasis.power_basis(F).c == self.c

    def from_field_element(self, F: FiniteField, a: int):
        return F.coords(a)

    def to_field_element(self, F: FiniteField, coords) -> int:
        return F.from_coords(coords)


# -- basis files ----------------------------------------------------------------


def parse_basis(text: str, name="basis") -> ExtensionBasis:
    base = QQ
    labels = None
    rows = []
    m = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("base "):
            base = parse_field(line[5:].strip())
            continue
        if line.startswith("labels "):
            labels = line[7:].split()
            continue
        toks = line.split()
        if m is None:
            if len(toks) != 1:
                raise BasisMismatch("basis file must start with the degree m")
            m = int(toks[0])
            continue
        rows.append([Fraction(t) for t in toks])
    if m is None or len(rows) != m * m or any(len(r) != m for r in rows):
        raise BasisMismatch("basis file needs m*m rows of m structure constants")
    consts = [[rows[i * m + j] for j in range(m)] for i in range(m)]
    return ExtensionBasis(base, consts, labels, name)


PRESETS = ("Qi", "F9overF3")


def load_basis(ref: str) -> ExtensionBasis:
    """A preset name (``Qi``, ``F9overF3``) or a path to a basis file."""
    if ref in PRESETS:
        text = (resources.files("etaleopen") / "data" / "bases" / f"{ref}.txt").read_text()
        return parse_basis(text, ref)
    path = Path(ref)
    return parse_basis(path.read_text(), path.stem)


# -- expansion ------------------------------------------------------------------


def default_names(var: str, m: int) -> list[str]:
    return [f"{var}_{j}" for j in range(1, m + 1)]


def restriction_ring(ring: PolyRing, B: ExtensionBasis, names=default_names) -> PolyRing:
    flat = []
    for v in ring.names:
        flat += names(v, B.m)
    return PolyRing(B.base, tuple(flat))


def _to_basis_coeff(c, B: ExtensionBasis, field):
    if field is B:
        return c
    if isinstance(field, FiniteField):
        if B.matches_field(field):
            return field.coords(c)
        if field.m == 1 and isinstance(B.base, FiniteField) and field.p == B.base.p:
            return B.from_int(c)
    if field is QQ and B.base is QQ:
        return B.from_fraction(c)
    if field is QQ and isinstance(B.base, FiniteField):
        return B.from_fraction(c)
    raise BasisMismatch(f"coefficients over {field.spec} are not expressed in {B!r}")


def expand_polynomial(f: MultiPoly, B: ExtensionBasis, names=default_names) -> list[MultiPoly]:
    """Components g_1..g_m over K with f(sum_j x_j e_j, ...) = sum_r g_r e_r."""
    R = restriction_ring(f.ring, B, names)
    K, m = B.base, B.m
    zero = R.zero()

    def cmul(a, b):
        out = [zero] * m
        for i in range(m):
            if a[i].is_zero():
                continue
            for j in range(m):
                if b[j].is_zero():
                    continue
                t = a[i] * b[j]
                for k, ck in enumerate(B.c[i][j]):
                    if not K.is_zero(ck):
                        out[k] = out[k] + t.scale(ck)
        return out

    gens = [[R.var(nm) for nm in names(v, m)] for v in f.ring.names]
    memo = {}

    def power(i, k):
        if k == 1:
            return gens[i]
        if (i, k) not in memo:
            memo[(i, k)] = cmul(power(i, k - 1), gens[i])
        return memo[(i, k)]

    total = [zero] * m
    for e, c in f.terms.items():
        coeff = _to_basis_coeff(c, B, f.field)
        term = [R.const(0) if K.is_zero(x) else MultiPoly(R, {R.zero_mono(): x}) for x in coeff]
        for i, k in enumerate(e):
            if k:
                term = cmul(term, power(i, k))
        total = [a + b for a, b in zip(total, term)]
    return total


def point_down(alpha, B: ExtensionBasis, field=None) -> tuple:
    """L-point (coordinate tuples or field ints) to the flat K-point."""
    out = []
    for a in alpha:
        if field is not None and field is not B:
            a = _to_basis_coeff(a, B, field)
        if len(a) != B.m:
            raise BasisMismatch("coordinate vector has the wrong length")
        out.extend(a)
    return tuple(out)


def point_up(beta, B: ExtensionBasis, field=None) -> tuple:
    if len(beta) % B.m:
        raise BasisMismatch("flat point length is not a multiple of m")
    m = B.m
    pts = [tuple(beta[i : i + m]) for i in range(0, len(beta), m)]
    if isinstance(field, FiniteField):
        return tuple(field.from_coords(c) for c in pts)
    return tuple(pts)


def canonical_inclusion(point, B: ExtensionBasis) -> tuple:
    """K-point x to the restricted point y_{i1} = x_i, y_{ij} = 0 (j >= 2)."""
    K = B.base
    out = []
    for x in point:
        out.append(x)
        out.extend([K.zero] * (B.m - 1))
    return tuple(out)


# -- restriction of pairs ---------------------------------------------------------


@dataclass
class RestrictedSystem:
    basis: ExtensionBasis
    n: int
    ring: PolyRing
    equations: list
    inequation_components: list
    variables: dict  # (L-variable name, j) -> flat index

    def base_names(self):
        return self.ring.names[: self.n * self.basis.m]

    def fiber_names(self):
        return self.ring.names[self.n * self.basis.m :]

    def holds_at(self, point) -> bool:
        """Full K-point (base and fiber coordinates): equations vanish, g-components not all zero."""
        if any(not self.ring.field.is_zero(e.evaluate(point)) for e in self.equations):
            return False
        return any(not self.ring.field.is_zero(h.evaluate(point)) for h in self.inequation_components)

    def solvable_at(self, base_point) -> bool:
        """Is there a fiber point over the flat K-point (finite K only)?"""
        K = self.ring.field
        if not isinstance(K, FiniteField):
            raise TypeError("solvability by enumeration needs a finite base field")
        return bool(self.image_mask(points=[tuple(base_point)])[0])

    def image_mask(self, points=None) -> np.ndarray:
        """Vectorized solvability over all flat base points (lexicographic) or given ones."""
        from .vec import VecPoly, base_columns

        K = self.ring.field
        q, m, n = K.q, self.basis.m, self.n
        nb = n * m
        if points is None:
            cols = base_columns(0, q**nb, q, nb)
        else:
            arr = np.asarray(points, dtype=np.int64).reshape(len(points), nb)
            cols = [arr[:, i : i + 1] for i in range(nb)]
        fib = base_columns(0, q**m, q, m)
        fib = [c.reshape(1, -1) for c in fib]
        allc = cols + fib
        ok = np.ones(np.broadcast(*allc).shape, dtype=bool)
        for e in self.equations:
            ok &= VecPoly(e, K)(allc) == 0
        nz = np.zeros_like(ok)
        for h in self.inequation_components:
            nz |= VecPoly(h, K)(allc) != 0
        return (ok & nz).any(axis=1)


def restrict_pair(pair, B: ExtensionBasis, names=default_names) -> RestrictedSystem:
    f, g = pair.f, pair.g
    eqs = expand_polynomial(f, B, names)
    ineq = expand_polynomial(g, B, names)
    R = eqs[0].ring
    variables = {}
    for v in pair.ring.names:
        for j, nm in enumerate(names(v, B.m), 1):
            variables[(v, j)] = R.index(nm)
    return RestrictedSystem(B, pair.n, R, eqs, ineq, variables)


# -- Zariski descent ------------------------------------------------------------


def zariski_descend(f: MultiPoly, B: ExtensionBasis) -> list[MultiPoly]:
    """Polynomials over K cutting out {a in K^n : f(a) = 0}.

    With the coefficient vectors of f spanning a d-dimensional K-space with
    basis b_1..b_d, f = sum_i b_i g_i and the g_i are returned.
    """
    K = B.base
    Rk = PolyRing(K, f.ring.names)
    items = [(e, _to_basis_coeff(c, B, f.field)) for e, c in f.terms.items()]
    if not items:
        return [Rk.zero()]
    rows, pivots = _rref(K, [c for _, c in items])
    out = []
    for col in pivots:
        out.append(MultiPoly.from_terms(Rk, [(e, c[col]) for e, c in items]))
    return out


def lift_to_extension(poly: MultiPoly, B: ExtensionBasis, gens=None) -> MultiPoly:
    """Read variables e1..em of a K-polynomial as the basis elements of L."""
    gens = gens or [f"e{k}" for k in range(1, B.m + 1)]
    keep = [v for v in poly.ring.names if v not in gens]
    RL = PolyRing(B, tuple(keep))
    gi = {poly.ring.index(v): k for k, v in enumerate(gens) if v in poly.ring.names}
    items = []
    for e, c in poly.terms.items():
        coeff = _to_basis_coeff(c, B, poly.field)
        mono = []
        for i, k in enumerate(e):
            if i in gi:
                coeff = B.mul(coeff, B.pow(B.basis(gi[i] + 1), k))
            else:
                mono.append(k)
        items.append((tuple(mono), coeff))
    return MultiPoly.from_terms(RL, items)
