"""Exhaustive étale images over finite fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra.fields import FiniteField
from ..errors import BudgetExceeded
from ..vec import VecPoly, base_columns, chunks

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class PointSet:
    ctx: FiniteField
    n: int
    elements: tuple  # sorted n-tuples of encoded field elements

    @classmethod
    def from_mask(cls, ctx, n, mask) -> "PointSet":
        idx = np.flatnonzero(mask)
        if n == 1:
            return cls(ctx, 1, tuple((int(i),) for i in idx))
        pts = []
        for i in idx.tolist():
            t = []
            for _ in range(n):
                i, d = divmod(i, ctx.q)
                t.append(d)
            pts.append(tuple(reversed(t)))
        return cls(ctx, n, tuple(pts))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, pt):
        if not isinstance(pt, tuple):
            pt = (pt,)
        return pt in self._set

    @property
    def _set(self):
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def _check(self, other):
        if self.ctx != other.ctx or self.n != other.n:
            raise ValueError("point sets live over different spaces")

    def __and__(self, other) -> "PointSet":
        self._check(other)
        return PointSet(self.ctx, self.n, tuple(sorted(self._set & other._set)))

    def __or__(self, other) -> "PointSet":
        self._check(other)
        return PointSet(self.ctx, self.n, tuple(sorted(self._set | other._set)))

    def __eq__(self, other):
        return (
            isinstance(other, PointSet)
            and self.ctx == other.ctx
            and self.n == other.n
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.ctx, self.n, self.elements))

    def values(self) -> list:
        """Elements as plain ints when n = 1, else as tuples."""
        return [e[0] for e in self.elements] if self.n == 1 else list(self.elements)

    def to_dict(self):
        return {
            "field": self.ctx.spec,
            "n": self.n,
            "size": len(self),
            "elements": [[self.ctx.fmt(c) if self.ctx.m > 1 else c for c in e] for e in self.elements],
        }


def image_mask(cover, F: FiniteField, budget: int = DEFAULT_BUDGET, method: str = "auto") -> np.ndarray:
    """Boolean array over F^n (lexicographic index) marking the cover image.

    ``method`` is "grid" (every (a, b) pair), "solve" (n = 1 only: solve
    f = 0 for x1 at each fiber value; needs deg_x1 f <= 2) or "auto".
    """
    from ..etale import as_cover

    cover = as_cover(cover)
    n, q = cover.n, F.q
    mask = np.zeros(q**n, dtype=bool)
    for pair in cover.pairs:
        if method == "solve" or (method == "auto" and solvable_in_x(pair)):
            mask |= _solve_mask(pair, F)
        else:
            mask |= _grid_mask(pair, F, budget)
    return mask


def solvable_in_x(pair) -> bool:
    return pair.n == 1 and pair.f.degree("x1") <= 2


def _grid_mask(pair, F, budget):
    n, q = pair.n, F.q
    if q ** (n + 1) > budget:
        raise BudgetExceeded(f"{q}^{n + 1} evaluations exceed the budget {budget}")
    mask = np.zeros(q**n, dtype=bool)
    vf, vg = VecPoly(pair.f, F), VecPoly(pair.g, F)
    if not vg.terms:
        return mask
    beta = np.arange(q, dtype=np.int64)[None, :]
    for s, e in chunks(q**n, q):
        cols = base_columns(s, e, q, n) + [beta]
        hit = (vf(cols) == 0) & (vg(cols) != 0)
        mask[s:e] |= hit.any(axis=1)
    return mask


def _solve_mask(pair, F):
    """Image for n = 1 by solving f(x1, b) = 0 for x1 at every b (deg_x1 f <= 2)."""
    if not solvable_in_x(pair):
        raise ValueError("the solve method needs n = 1 and deg_x1 f <= 2")
    q = F.q
    mask = np.zeros(q, dtype=bool)
    vg = VecPoly(pair.g, F)
    if not vg.terms:
        return mask
    beta = np.arange(q, dtype=np.int64)
    zero_x = np.zeros(1, dtype=np.int64)
    cs = pair.f.coeffs_in("x1")
    A = [VecPoly(cs[i], F)([zero_x, beta]) if i in cs else np.zeros(q, dtype=np.int64) for i in range(3)]
    c, b, a = A
    inv = F.inverse_table()
    alphas, betas = [], []
    # quadratic in x1
    quad = a != 0
    if quad.any():
        aq, bq, cq, yq = a[quad], b[quad], c[quad], beta[quad]
        disc = F.vsub(F.vmul(bq, bq), F.vmul(F.vmul(aq, cq), F.from_int(4)))
        root = F.sqrt_table()[disc]
        ok = root >= 0
        den = inv[F.vmul(aq[ok], F.from_int(2))]
        for r in (root[ok], F.vneg(root[ok])):
            alphas.append(F.vmul(F.vsub(r, bq[ok]), den))
            betas.append(yq[ok])
    # linear in x1
    lin = (a == 0) & (b != 0)
    if lin.any():
        alphas.append(F.vneg(F.vmul(c[lin], inv[b[lin]])))
        betas.append(beta[lin])
    if alphas:
        al = np.concatenate(alphas)
        be = np.concatenate(betas)
        keep = vg([al, be]) != 0
        mask[al[keep]] = True
    # f(x1, b) vanishes identically in x1
    everything = np.arange(q, dtype=np.int64)
    for bb in np.flatnonzero((a == 0) & (b == 0) & (c == 0)).tolist():
        mask |= vg([everything, np.full(q, bb, dtype=np.int64)]) != 0
    return mask


def enumerate_finite(cover, ctx: FiniteField, budget: int = DEFAULT_BUDGET, method="auto") -> PointSet:
    """{a in F^n : some pair has f(a, b) = 0 != g(a, b) for a b in F}."""
    from ..etale import as_cover

    cover = as_cover(cover)
    return PointSet.from_mask(ctx, cover.n, image_mask(cover, ctx, budget, method))


def image_size(cover, ctx: FiniteField, budget: int = DEFAULT_BUDGET, method="auto") -> int:
    return int(image_mask(cover, ctx, budget, method).sum())
