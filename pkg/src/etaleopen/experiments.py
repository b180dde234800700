"""Desk-scale experiments: residue censuses, image densities, witnesses and audits.

Every routine here is deterministic for fixed arguments; random draws use
string seeds so results do not depend on hash randomization.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .algebra.fields import QQ, FiniteField, field_size_factor, make_ext_field, prime_field
from .algebra.numtheory import is_prime, valuation
from .algebra.padic import PadicField
from .errors import (
    BudgetExceeded,
    DegenerateBetas,
    PreconditionFailed,
    SearchExhausted,
    TowerValuationMismatch,
)
from .etale import (
    EtaleCover,
    affine_image,
    as_cover,
    hensel_family_pair,
    hensel_tangent_value,
    power_pair,
)
from .images.finite import DEFAULT_BUDGET, image_mask
from .images.padic import least_ball_exponent, member_padic
from .images.real import member_real_point

DEFAULT_SEED = "etaleopen"


def dec6(x: Fraction) -> str:
    return f"{float(x):.6f}"


def field_of_size(q: int) -> FiniteField:
    p, m = field_size_factor(q)
    return make_ext_field(p, m)


# -- quadratic residue census ---------------------------------------------------


@dataclass(frozen=True)
class CensusRow:
    q: int
    k: int
    betas: tuple
    count: int
    ratio: Fraction
    bound: Fraction
    trial: int = 0

    @property
    def passed(self) -> bool:
        return self.count < self.bound

    @property
    def ratio_decimal(self) -> str:
        return dec6(self.ratio)

    def to_dict(self):
        return {
            "q": self.q,
            "k": self.k,
            "trial": self.trial,
            "betas": list(self.betas),
            "count": self.count,
            "ratio": str(self.ratio),
            "ratio_decimal": self.ratio_decimal,
            "bound": str(self.bound),
            "pass": self.passed,
        }


def nonzero_squares(F: FiniteField) -> np.ndarray:
    sq = F.square_mask().copy()
    sq[0] = False
    return sq


def residue_set_size(F: FiniteField, betas) -> int:
    """|{a in F : a - b is a nonzero square for every b in betas}|."""
    sq = nonzero_squares(F)
    a = np.arange(F.q, dtype=np.int64)
    ok = np.ones(F.q, dtype=bool)
    for b in betas:
        ok &= sq[F.vsub(a, b)]
    return int(ok.sum())


def draw_betas(q: int, k: int, seed, trial: int) -> tuple:
    if k > q:
        raise DegenerateBetas(f"cannot draw {k} distinct elements from a field of size {q}")
    rng = random.Random(f"{seed}:{q}:{k}:{trial}")
    return tuple(sorted(rng.sample(range(q), k)))


def paley_census(qs, k: int, betas=None, trials: int = 1, seed=DEFAULT_SEED) -> list[CensusRow]:
    """Exact counts of a in F_q with every a - b_i a nonzero square.

    ``betas`` is an explicit list (used for every q) or None for ``trials``
    seeded random draws per q.
    """
    rows = []
    for q in sorted(qs):
        F = field_of_size(q)
        if F.p == 2:
            raise ValueError("the census needs odd q")
        if betas is not None:
            bs = tuple(int(b) for b in betas)
            if len(bs) != k or len(set(b % q for b in bs)) != k:
                raise DegenerateBetas(f"need {k} pairwise distinct betas, got {list(bs)}")
            draws = [(0, tuple(b % q for b in bs))]
        else:
            draws = [(t, draw_betas(q, k, seed, t)) for t in range(trials)]
        for t, bs in draws:
            c = residue_set_size(F, bs)
            rows.append(CensusRow(q, k, bs, c, Fraction(c, q), Fraction(2 * q, 2**k), t))
    return rows


# -- image densities ----------------------------------------------------------


@dataclass(frozen=True)
class DensityRow:
    q: int
    image_size: int
    k: int  # fiber degree behind epsilon (0 when no pair qualifies)
    epsilon: Fraction | None

    @property
    def applicable(self) -> bool:
        return self.epsilon is not None

    @property
    def share(self) -> Fraction:
        return Fraction(self.image_size, self.q)

    @property
    def passed(self) -> bool:
        return self.applicable and self.image_size >= self.epsilon * self.q

    def to_dict(self):
        return {
            "q": self.q,
            "image_size": self.image_size,
            "k": self.k,
            "epsilon": None if self.epsilon is None else str(self.epsilon),
            "share": str(self.share),
            "share_decimal": dec6(self.share),
            "pass": self.passed,
        }


_VALID_MEMO: dict = {}


def valid_mod_p(pair, p: int) -> bool:
    """Is the reduction of pair to F_p a valid étale pair?"""
    key = (pair, p)
    if key not in _VALID_MEMO:
        red = pair if pair.field != QQ else pair.over(prime_field(p))
        _VALID_MEMO[key] = red.validate(budget=0).valid
    return _VALID_MEMO[key]


def reduce_cover(cover, p: int) -> EtaleCover:
    cover = as_cover(cover)
    K = cover.field
    if K is QQ:
        return cover.over(prime_field(p))
    if K.p != p:
        raise ValueError(f"cover lives in characteristic {K.p}, not {p}")
    return cover


def _pair_mask(pair, F, budget, memo):
    if memo is None:
        return image_mask(pair, F, budget)
    key = (pair, F)
    if key not in memo:
        memo[key] = image_mask(pair, F, budget)
    return memo[key]


def density_epsilon(cover, p: int, budget: int = DEFAULT_BUDGET, memo=None):
    """(k, 1/(2k)) from the smallest fiber degree among pairs that are valid
    mod p and have a point over the base field; (0, None) if none do."""
    red = reduce_cover(cover, p)
    base = red.field if isinstance(red.field, FiniteField) else prime_field(p)
    ks = []
    for orig, pair in zip(as_cover(cover).pairs, red.pairs):
        if not valid_mod_p(orig, p):
            continue
        if _pair_mask(pair, base, budget, memo).any():
            ks.append(pair.fiber_degree())
    if not ks:
        return 0, None
    k = min(ks)
    return k, Fraction(1, 2 * k)


def density_sweep(cover, qs, budget: int = DEFAULT_BUDGET, skip_over_budget: bool = False) -> list[DensityRow]:
    """Image size against epsilon*q for each q (rows sorted by q).

    With ``skip_over_budget`` the q whose enumeration would exceed the
    budget are left out instead of raising BudgetExceeded.
    """
    cover = as_cover(cover)
    rows = []
    per_p = {}
    for q in sorted(qs):
        F = field_of_size(q)
        if not cover.pairs:
            rows.append(DensityRow(q, 0, 0, None))
            continue
        memo = {}  # base-level masks are reused when q = p
        try:
            if F.p not in per_p:
                per_p[F.p] = (reduce_cover(cover, F.p), *density_epsilon(cover, F.p, budget, memo))
            red, k, eps = per_p[F.p]
            mask = np.zeros(q, dtype=bool)
            for pair in red.pairs:
                mask |= _pair_mask(pair, F, budget, memo)
            size = int(mask.sum())
        except BudgetExceeded:
            if skip_over_budget:
                continue
            raise
        rows.append(DensityRow(q, size, k, eps))
    return rows


# -- square-difference probe ------------------------------------------------------


@dataclass
class ProbeLevel:
    degree: int
    q: int
    u0: int
    u1: int
    contained: bool
    witness: tuple | None = None
    vacuous: bool = False

    def to_dict(self):
        return asdict(self)


@dataclass
class ProbeReport:
    p: int
    tower: tuple
    levels: list = field(default_factory=list)

    @property
    def first_failure(self):
        for lv in self.levels:
            if not lv.contained:
                return lv
        return None

    @property
    def vacuous(self) -> bool:
        return bool(self.levels) and self.levels[0].vacuous

    def to_dict(self):
        ff = self.first_failure
        return {
            "p": self.p,
            "tower": list(self.tower),
            "levels": [lv.to_dict() for lv in self.levels],
            "first_failure": None if ff is None else ff.degree,
            "vacuous": self.vacuous,
        }


def check_tower(tower):
    tower = tuple(int(t) for t in tower)
    if not tower or any(t < 1 for t in tower):
        raise TowerValuationMismatch("tower degrees must be positive")
    for a, b in zip(tower, tower[1:]):
        if b % a:
            raise TowerValuationMismatch(f"{a} does not divide {b}")
    if len({valuation(t, 2) for t in tower}) > 1:
        raise TowerValuationMismatch("tower degrees must share their 2-adic valuation")
    return tower


def _first_bad_pair(F: FiniteField, A: np.ndarray, B: np.ndarray):
    """First (a, b) in A x B with a - b not a nonzero square, or None."""
    if A.size == 0 or B.size == 0:
        return None
    sq = nonzero_squares(F)
    step = max(1, (1 << 22) // max(B.size, 1))
    for s in range(0, A.size, step):
        a = A[s : s + step, None]
        bad = ~sq[F.vsub(a, B[None, :])]
        if bad.any():
            i, j = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return int(a[i, 0]), int(B[j])
    return None


def square_difference_probe(p: int, tower, U0, U1, budget: int = DEFAULT_BUDGET) -> ProbeReport:
    """Test U0(L) x U1(L) inside {(a, b) : a - b a nonzero square} up a tower."""
    tower = check_tower(tower)
    U0, U1 = as_cover(U0), as_cover(U1)
    rep = ProbeReport(p, tower)
    for t in tower:
        L = make_ext_field(p, t)
        A = np.flatnonzero(image_mask(reduce_cover(U0, p), L, budget))
        B = np.flatnonzero(image_mask(reduce_cover(U1, p), L, budget))
        w = _first_bad_pair(L, A, B)
        rep.levels.append(
            ProbeLevel(
                t,
                L.q,
                int(A.size),
                int(B.size),
                w is None,
                None if w is None else (L.fmt(w[0]), L.fmt(w[1])),
                vacuous=A.size == 0 or B.size == 0,
            )
        )
    return rep


# -- p-adic clopen witness ----------------------------------------------------


@dataclass(frozen=True)
class ClopenWitness:
    p: int
    alpha: Fraction
    not_square: dict
    not_shifted_square: dict

    def to_dict(self):
        return {
            "p": self.p,
            "alpha": str(self.alpha),
            "not_square": self.not_square,
            "not_shifted_square": self.not_shifted_square,
        }


def clopen_witness_padic(p: int, precision: int = 12, limit: int = 1000) -> ClopenWitness:
    """Smallest integer a >= 2 outside P u (1 + P), P the nonzero squares of Q_p."""
    if not is_prime(p) or p % 4 != 1:
        raise PreconditionFailed(f"-1 is not a square mod {p}")
    ctx = PadicField(p, precision)
    squares = power_pair(2)
    shifted = affine_image(squares, 1, 1)
    for a in range(2, limit + 1):
        r0 = member_padic(squares, a, ctx)
        if not r0.no:
            continue
        r1 = member_padic(shifted, a, ctx)
        if r1.no:
            return ClopenWitness(p, Fraction(a), r0.to_dict(), r1.to_dict())
    raise SearchExhausted(f"no witness up to {limit} at precision {precision}; raise the precision")


# -- Hensel neighborhoods -----------------------------------------------------


@dataclass
class HenselReport:
    n: int
    context: str
    valid: bool
    tangent: object
    expected_tangent: int
    points: int
    members: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.valid and self.tangent == self.expected_tangent and self.members == self.points

    def to_dict(self):
        return {
            "n": self.n,
            "context": self.context,
            "valid": self.valid,
            "tangent": str(self.tangent),
            "expected_tangent": self.expected_tangent,
            "points": self.points,
            "members": self.members,
            "failures": [[str(c) for c in pt] for pt in self.failures],
            "pass": self.passed,
        }


def hensel_grid(n: int, ctx) -> list:
    if isinstance(ctx, PadicField):
        vals = (0, ctx.p, 2 * ctx.p)
    else:
        vals = (Fraction(-1, 100), Fraction(0), Fraction(1, 100))
    return [tuple(Fraction(v) for v in t) for t in product(vals, repeat=n + 1)]


def hensel_neighborhood_demo(n: int, ctx=None) -> HenselReport:
    """Small perturbations of y^(n+2) + y^(n+1) keep a root near -1.

    Over Q_p the grid is {0, p, 2p}^(n+1); over the reals (ctx None or
    "R") it is {-1/100, 0, 1/100}^(n+1).
    """
    pair = hensel_family_pair(n)
    padic = isinstance(ctx, PadicField)
    pts = hensel_grid(n, ctx)
    fails = []
    for pt in pts:
        ok = member_padic(pair, pt, ctx).yes if padic else member_real_point(pair, pt)
        if not ok:
            fails.append(pt)
    return HenselReport(
        n,
        ctx.spec if padic else "R",
        pair.validate().valid,
        hensel_tangent_value(n),
        (-1) ** (n + 1),
        len(pts),
        len(pts) - len(fails),
        fails,
    )


# -- Zariski cofinality trend ---------------------------------------------------


@dataclass
class TrendRow:
    m: int
    q: int
    image_size: int

    @property
    def complement(self):
        return self.q - self.image_size

    def to_dict(self):
        return {"m": self.m, "q": self.q, "image_size": self.image_size, "complement": self.complement}


@dataclass
class TrendReport:
    p: int
    rows: list

    @property
    def stabilizes(self) -> bool:
        """Do the last two tested levels have the same complement size?"""
        return len(self.rows) >= 2 and self.rows[-1].complement == self.rows[-2].complement

    def to_dict(self):
        return {"p": self.p, "rows": [r.to_dict() for r in self.rows], "stabilizes": self.stabilizes}


def zariski_cofinality_trend(cover, p: int, ms, budget: int = DEFAULT_BUDGET) -> TrendReport:
    cover = reduce_cover(cover, p)
    rows = []
    for m in ms:
        F = make_ext_field(p, m)
        rows.append(TrendRow(m, F.q, int(image_mask(cover, F, budget).sum())))
    return TrendReport(p, rows)


# -- openness audit -------------------------------------------------------------


def discover_members(pair, ctx: PadicField, radius: int = 3, limit: int = 12) -> list:
    """Integer points of [-radius, radius]^n with a Yes verdict, nearest first."""
    pts = sorted(
        product(range(-radius, radius + 1), repeat=pair.n),
        key=lambda t: (max(map(abs, t), default=0), t),
    )
    out = []
    for t in pts:
        if member_padic(pair, t, ctx).yes:
            out.append(tuple(Fraction(c) for c in t))
            if len(out) == limit:
                break
    return out


@dataclass
class AuditRow:
    label: str
    alpha: tuple
    M: int | None

    def to_dict(self):
        return {"pair": self.label, "alpha": [str(c) for c in self.alpha], "M": self.M}


@dataclass
class AuditReport:
    rows: list = field(default_factory=list)

    @property
    def failures(self):
        return [r for r in self.rows if r.M is None]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self):
        return {"rows": [r.to_dict() for r in self.rows], "failures": len(self.failures), "pass": self.passed}


def openness_audit(cover, ctx: PadicField, members=None, M_bound: int = 10, samples: int = 25) -> AuditReport:
    """Least passing ball exponent for sampled members of each pair."""
    rep = AuditReport()
    pairs = cover.pairs if isinstance(cover, EtaleCover) else list(as_cover(cover).pairs) if cover else []
    for pair in pairs:
        if members is None:
            pts = discover_members(pair, ctx)
        else:
            pts = [m if isinstance(m, tuple) else (m,) for m in members]
            pts = [tuple(Fraction(c) for c in m) for m in pts if member_padic(pair, m, ctx).yes]
        for a in pts:
            M = least_ball_exponent(pair, a, ctx, M_bound, samples)
            rep.rows.append(AuditRow(pair.label or pair.to_text(), a, M))
    return rep
