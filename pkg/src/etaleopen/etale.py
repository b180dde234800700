"""Standard étale pairs (f, g): validation, constructions and covers.

A pair over base variables x1..xn and fiber variable y has image
{a in K^n : f(a, b) = 0 != g(a, b) for some b in K}.  It is valid when
every common zero of f and df/dy over the algebraic closure kills g.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from pathlib import Path

import numpy as np

from .algebra import upoly
from .algebra.fields import QQ, FiniteField, make_ext_field, parse_field
from .algebra.padic import PadicField
from .errors import (
    BudgetExceeded,
    NotMonic,
    ParseError,
    RingMismatch,
    UnsupportedCoefficientField,
    ZeroScale,
)
from .poly.groebner import radical_member
from .poly.multipoly import MultiPoly, PolyRing
from .vec import VecPoly, base_columns, chunks

FIBER = "y"
WITNESS_DEGREE = 4
WITNESS_BUDGET = 4 * 10**6


def base_ring(K, n: int) -> PolyRing:
    if n < 0 or n > 9:
        raise ValueError("base dimension must be between 0 and 9")
    return PolyRing(K, tuple(f"x{i}" for i in range(1, n + 1)) + (FIBER,))


class Verdict(str, enum.Enum):
    Valid = "Valid"
    Invalid = "Invalid"


@dataclass(frozen=True)
class ValidationResult:
    verdict: Verdict
    witness: tuple | None = None  # (alpha, beta), encoded in witness_field
    witness_field: object = None
    searched: int = 0  # largest extension degree fully searched for witnesses

    @property
    def valid(self) -> bool:
        return self.verdict is Verdict.Valid

    def to_dict(self):
        out = {"verdict": self.verdict.value}
        if self.witness is not None:
            K = self.witness_field
            alpha, beta = self.witness
            fmt = K.fmt
            out["witness"] = {
                "field": K.spec,
                "alpha": [fmt(a) for a in alpha],
                "beta": fmt(beta),
            }
        return out


class EtalePair:
    """A standard étale basic open (f monic in y, g)."""

    def __init__(self, f: MultiPoly, g, label: str | None = None):
        ring = f.ring
        if not ring.names or ring.names[-1] != FIBER:
            raise ValueError("pair ring must end with the fiber variable y")
        if isinstance(ring.field, PadicField):
            raise UnsupportedCoefficientField("pairs need exact coefficients; use Q")
        if not isinstance(g, MultiPoly):
            g = ring.const(g)
        elif g.ring is not ring:
            g = g.to_ring(ring)
        if f.degree(FIBER) < 1 or not f.is_monic_in(FIBER):
            raise NotMonic(f"f = {f} is not monic of positive degree in y")
        self.f = f
        self.g = g
        self.label = label
        self._result = None
        self._fy = None

    @property
    def ring(self):
        return self.f.ring

    @property
    def field(self):
        return self.f.ring.field

    @property
    def n(self) -> int:
        return self.ring.nvars - 1

    @property
    def fy(self) -> MultiPoly:
        if self._fy is None:
            self._fy = self.f.partial_derivative(FIBER)
        return self._fy

    def fiber_degree(self) -> int:
        return self.f.degree(FIBER)

    def __eq__(self, other):
        return isinstance(other, EtalePair) and (self.f, self.g) == (other.f, other.g)

    def __hash__(self):
        return hash((self.f, self.g))

    def __repr__(self):
        return f"EtalePair(f={self.f}, g={self.g}, field={self.field.spec})"

    def to_text(self) -> str:
        s = f"pair{{n={self.n}; f={self.f}; g={self.g}"
        if self.field is not QQ:
            s += f"; field={self.field.spec}"
        return s + "}"

    def over(self, K) -> "EtalePair":
        """The same pair with coefficients pushed into K (Q -> F_p, F_p -> F_q)."""
        if K == self.field:
            return self
        from .vec import coeff_map

        ring = self.ring.with_field(K)
        cmap = coeff_map(self.field, K)
        return EtalePair(
            self.f.map_coeffs(cmap, ring), self.g.map_coeffs(cmap, ring), self.label
        )

    def validate(self, budget: int = WITNESS_BUDGET) -> ValidationResult:
        return validate(self, budget)


def validate(pair: EtalePair, budget: int = WITNESS_BUDGET) -> ValidationResult:
    """Decide g in sqrt(f, df/dy); Invalid verdicts come with a witness if one is found."""
    if isinstance(pair.field, PadicField):
        raise UnsupportedCoefficientField("validate over Q instead of a p-adic context")
    if pair._result is not None:
        return pair._result
    if radical_member(pair.g, [pair.f, pair.fy]):
        res = ValidationResult(Verdict.Valid)
    elif isinstance(pair.field, FiniteField):
        res = _finite_witness(pair, budget)
    else:
        res = _rational_witness(pair)
    pair._result = res
    return res


def _finite_witness(pair, budget):
    F0 = pair.field
    searched = 0
    for j in range(1, WITNESS_DEGREE + 1):
        F = make_ext_field(F0.p, F0.m * j)
        try:
            pt = find_bad_point(pair, F, budget)
        except BudgetExceeded:
            break
        searched = j
        if pt is not None:
            return ValidationResult(Verdict.Invalid, pt, F, searched)
    return ValidationResult(Verdict.Invalid, None, None, searched)


def find_bad_point(pair: EtalePair, F: FiniteField, budget: int = WITNESS_BUDGET):
    """First point (lexicographic) over F with f = df/dy = 0 != g, or None."""
    n, q = pair.n, F.q
    if q ** (n + 1) > budget:
        raise BudgetExceeded(f"{q}^{n + 1} points exceed the budget {budget}")
    vf, vfy, vg = (VecPoly(h, F) for h in (pair.f, pair.fy, pair.g))
    if not vg.terms:
        return None
    beta = np.arange(q, dtype=np.int64)[None, :]
    for s, e in chunks(q**n, q):
        cols = base_columns(s, e, q, n)
        ii, jj = np.nonzero(vf(cols + [beta]) == 0)
        if ii.size == 0:
            continue
        pts = [c[ii, 0] for c in cols] + [jj]
        bad = (vfy(pts) == 0) & (vg(pts) != 0)
        if bad.any():
            k = int(np.argmax(bad))
            return tuple(int(c[k]) for c in pts[:-1]), int(jj[k])
    return None


def _rational_roots(a: list) -> list[Fraction]:
    """Rational roots of a univariate polynomial over Q (small coefficients only)."""
    from .algebra.numtheory import divisors
    from .poly.sturm import primitive

    a = upoly.trim(QQ, a)
    roots = []
    while a and a[0] == 0:
        roots.append(Fraction(0))
        a = a[1:]
    if len(a) <= 1:
        return sorted(set(roots))
    a = primitive(a)
    c0, cn = abs(int(a[0])), abs(int(a[-1]))
    if max(c0, cn) > 10**8:
        return sorted(set(roots))
    for num in divisors(c0):
        for den in divisors(cn):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if upoly.evaluate(QQ, a, r) == 0:
                    roots.append(r)
    return sorted(set(roots))


def _rational_witness(pair, radius: int = 4):
    n = pair.n
    ring = pair.ring
    xs = ring.names[:-1]
    grid = sorted(product(range(-radius, radius + 1), repeat=n), key=lambda t: (max(map(abs, t), default=0), t))
    for alpha in grid:
        sub = dict(zip(xs, alpha))
        f, fy, g = (h.specialize(sub).to_univariate(FIBER) for h in (pair.f, pair.fy, pair.g))
        common = upoly.gcd(QQ, f, fy)
        if len(common) <= 1:
            continue
        for b in _rational_roots(common):
            if upoly.evaluate(QQ, g, b) != 0:
                w = (tuple(Fraction(a) for a in alpha), b)
                return ValidationResult(Verdict.Invalid, w, QQ, 0)
    return ValidationResult(Verdict.Invalid)


# -- named constructions ------------------------------------------------------


def generic_pair(f: MultiPoly) -> EtalePair:
    if not f.ring.names or f.ring.names[-1] != FIBER or not f.is_monic_in(FIBER) or f.degree(FIBER) < 1:
        raise NotMonic(f"f = {f} is not monic of positive degree in y")
    return EtalePair(f, f.partial_derivative(FIBER), "generic")


def power_pair(k: int, K=QQ) -> EtalePair:
    if k < 1:
        raise ValueError("k must be positive")
    R = base_ring(K, 1)
    y, x1 = R.var("y"), R.var("x1")
    return EtalePair(y**k - x1, y, f"power({k})")


def artin_schreier_pair(p: int, K=None) -> EtalePair:
    K = K if K is not None else make_ext_field(p, 1)
    R = base_ring(K, 1)
    y, x1 = R.var("y"), R.var("x1")
    return EtalePair(y**p - y - x1, R.one(), f"artin_schreier({p})")


def hensel_family_pair(n: int, K=QQ) -> EtalePair:
    """f = y^(n+2) + y^(n+1) + x1 + x2*y + ... + x(n+1)*y^n, g = df/dy.

    The base coordinates x1..x(n+1) play the role of the coefficients
    a_0..a_n; at the origin f has the simple root y = -1.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    R = base_ring(K, n + 1)
    y = R.var("y")
    f = y ** (n + 2) + y ** (n + 1)
    for i in range(n + 1):
        f = f + R.var(f"x{i + 1}") * y**i
    return EtalePair(f, f.partial_derivative(FIBER), f"hensel({n})")


def hensel_tangent_value(n: int):
    """df/dy of the Hensel family at the origin and fiber point -1."""
    pair = hensel_family_pair(n)
    return pair.fy.evaluate((0,) * (n + 1) + (-1,))


def affine_image(pair: EtalePair, a, b) -> EtalePair:
    """A pair whose image is a*image(pair) + b (n = 1)."""
    if pair.n != 1:
        raise ValueError("affine_image needs a one-dimensional base")
    R = pair.ring
    K = R.field
    a_, b_ = R.coerce_coeff(a), R.coerce_coeff(b)
    if K.is_zero(a_):
        raise ZeroScale("scale factor must be nonzero")
    x1 = R.var("x1")
    inv = K.inv(a_)
    repl = (x1 - R.const(b_)).scale(inv)
    f = pair.f.substitute("x1", repl)
    g = pair.g.substitute("x1", repl)
    label = f"affine({pair.label},{K.fmt(a_)},{K.fmt(b_)})" if pair.label else None
    return EtalePair(f, g, label)


# -- covers -----------------------------------------------------------------


@dataclass
class EtaleCover:
    """Finite union of pair images over one base ring.

    An empty cover (image always empty) is allowed when ``ring`` is given.
    """

    pairs: list = field(default_factory=list)
    ring: object = None

    def __post_init__(self):
        self.pairs = list(self.pairs)
        if self.pairs:
            r = self.pairs[0].ring
            for p in self.pairs[1:]:
                if p.ring is not r:
                    raise RingMismatch("all pairs of a cover must share one ring")
            if self.ring is not None and self.ring is not r:
                raise RingMismatch("cover ring disagrees with its pairs")
            self.ring = r
        elif self.ring is None:
            raise ValueError("an empty cover needs an explicit ring")

    @classmethod
    def of(cls, *pairs) -> "EtaleCover":
        return cls(list(pairs))

    @property
    def n(self):
        return self.ring.nvars - 1

    @property
    def field(self):
        return self.ring.field

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def fiber_degree(self) -> int:
        return max((p.fiber_degree() for p in self.pairs), default=0)

    def over(self, K) -> "EtaleCover":
        return EtaleCover([p.over(K) for p in self.pairs], self.ring.with_field(K))


def as_cover(obj) -> EtaleCover:
    if isinstance(obj, EtaleCover):
        return obj
    if isinstance(obj, EtalePair):
        return EtaleCover([obj])
    return EtaleCover(list(obj))


def union(covers) -> EtaleCover:
    covers = [as_cover(c) for c in covers]
    if not covers:
        raise ValueError("union of no covers")
    ring = covers[0].ring
    for c in covers[1:]:
        if c.ring is not ring:
            raise RingMismatch("covers live over different rings")
    return EtaleCover([p for c in covers for p in c.pairs], ring)


def intersect_images(c1, c2, ctx, budget=None):
    """Set-level intersection of two cover images over a finite field."""
    from .images.finite import enumerate_finite

    c1, c2 = as_cover(c1), as_cover(c2)
    if c1.n != c2.n or c1.field != c2.field:
        raise RingMismatch("covers live over different rings")
    kw = {} if budget is None else {"budget": budget}
    return enumerate_finite(c1, ctx, **kw) & enumerate_finite(c2, ctx, **kw)


# -- text format and corpus ---------------------------------------------------

_PAIR = re.compile(r"^\s*pair\s*\{(.*)\}\s*$")


def parse_pair(text: str, field=None, label=None) -> EtalePair:
    """Parse ``pair{n=<k>; f=<poly>; g=<poly>}`` (optional ``field=<spec>``)."""
    m = _PAIR.match(text)
    if not m:
        raise ParseError(f"not a pair literal: {text!r}")
    items = {}
    for part in m.group(1).split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise ParseError(f"expected key=value in {part!r}")
        k, v = part.split("=", 1)
        items[k.strip()] = v.strip()
    missing = {"n", "f", "g"} - items.keys()
    if missing:
        raise ParseError(f"pair literal lacks {sorted(missing)}")
    extra = items.keys() - {"n", "f", "g", "field"}
    if extra:
        raise ParseError(f"unknown pair keys {sorted(extra)}")
    K = field
    if "field" in items:
        K = parse_field(items["field"])
    if K is None:
        K = QQ
    try:
        n = int(items["n"])
    except ValueError:
        raise ParseError(f"bad base dimension {items['n']!r}") from None
    R = base_ring(K, n)
    f = R.parse(items["f"])
    g = R.parse(items["g"])
    return EtalePair(f, g, label)


def corpus_path() -> Path:
    return Path(str(resources.files("etaleopen") / "data" / "corpus.txt"))


def load_corpus(path=None) -> list[EtalePair]:
    path = Path(path) if path else corpus_path()
    pairs = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        text = line.split("#", 1)[0].strip()
        if text:
            pairs.append(parse_pair(text, label=f"{path.name}:{lineno}"))
    return pairs


def resolve_pair(ref: str, field=None) -> EtalePair:
    """Inline literal, ``file:line`` or ``corpus:k`` (k-th pair, 1-based)."""
    ref = ref.strip()
    if ref.startswith("pair"):
        return parse_pair(ref, field)
    head, _, tail = ref.rpartition(":")
    if not head or not tail.isdigit():
        raise ParseError(f"cannot resolve pair reference {ref!r}")
    k = int(tail)
    if head == "corpus":
        pairs = load_corpus()
        if not 1 <= k <= len(pairs):
            raise ParseError(f"corpus has {len(pairs)} pairs")
        return pairs[k - 1]
    lines = Path(head).read_text().splitlines()
    if not 1 <= k <= len(lines):
        raise ParseError(f"{head} has no line {k}")
    return parse_pair(lines[k - 1].split("#", 1)[0], field, f"{head}:{k}")
