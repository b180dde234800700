"""Vectorized evaluation of polynomials over finite fields (numpy).

Polynomials are compiled once into a target field F, then evaluated on
broadcastable integer arrays of encoded field elements.  Broadcasting a
column of base points against a row of fiber values gives grid
evaluation without materializing the grid of inputs.
"""

from __future__ import annotations

import numpy as np

from .algebra.fields import QQ, FiniteField, FqElement, embed
from .errors import NotASubfield

CHUNK = 1 << 21


def coeff_map(src, F: FiniteField):
    """Function sending coefficients of field ``src`` into F."""
    if src is QQ:
        return F.from_fraction
    if not isinstance(src, FiniteField):
        raise TypeError(f"cannot map coefficients of {src!r} into {F.spec}")
    if src.p != F.p or F.m % src.m:
        raise NotASubfield(f"{src.spec} is not a subfield of {F.spec}")
    if src.m == 1 or src == F:
        return lambda c: c
    memo = {}

    def go(c):
        if c not in memo:
            memo[c] = embed(FqElement(src, c), F).value
        return memo[c]

    return go


class VecPoly:
    def __init__(self, poly, F: FiniteField):
        cmap = coeff_map(poly.field, F)
        self.F = F
        self.nvars = poly.ring.nvars
        self.terms = [(e, cmap(c)) for e, c in poly.terms.items()]
        self.terms = [(e, c) for e, c in self.terms if c]

    def __call__(self, cols, powers=None):
        F = self.F
        shape = np.broadcast(*cols).shape
        if powers is None:
            powers = Powers(F, cols)
        acc = np.zeros(shape, dtype=np.int64)
        for e, c in self.terms:
            t = None
            for i, k in enumerate(e):
                if k:
                    t = powers(i, k) if t is None else F.vmul(t, powers(i, k))
            if t is None:
                t = np.full(shape, c, dtype=np.int64)
            elif c != 1:
                t = F.vmul(t, c)
            acc = F.vadd(acc, np.broadcast_to(t, shape))
        return acc


class Powers:
    """Memoized powers of the input columns."""

    def __init__(self, F, cols):
        self.F = F
        self.cols = [np.asarray(c, dtype=np.int64) for c in cols]
        self.memo = {}

    def __call__(self, i, k):
        key = (i, k)
        if key not in self.memo:
            if k == 1:
                self.memo[key] = self.cols[i]
            else:
                self.memo[key] = self.F.vmul(self(i, k - 1), self.cols[i])
        return self.memo[key]


def base_columns(start: int, stop: int, q: int, n: int):
    """Digits (most significant first) of the indices start..stop-1 in base q.

    Returns n column arrays of shape (stop - start, 1), so index order is
    lexicographic order on F_q^n.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for _ in range(n):
        idx, d = np.divmod(idx, q)
        cols.append(d[:, None])
    return cols[::-1]


def chunks(n_alpha: int, q: int, chunk: int = CHUNK):
    rows = max(1, chunk // max(q, 1))
    for s in range(0, n_alpha, rows):
        yield s, min(n_alpha, s + rows)
