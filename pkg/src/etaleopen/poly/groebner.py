"""Buchberger's algorithm (grlex, normal selection, both criteria).

Works over any exact field context; in practice Q and F_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .multipoly import MultiPoly, grlex_key, mono_div, mono_divides, mono_lcm


def normal_form(h: MultiPoly, basis) -> MultiPoly:
    """Fully reduce ``h`` modulo ``basis`` (a sequence of nonzero polynomials)."""
    K = h.field
    ring = h.ring
    lead = [(g.leading_monomial(), K.inv(g.leading_coeff()), g) for g in basis]
    rem = dict(h.terms)
    out = {}
    while rem:
        m = max(rem, key=grlex_key)
        c = rem[m]
        for lm, inv_lc, g in lead:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                f = K.mul(c, inv_lc)
                for e, v in g.terms.items():
                    e2 = tuple(a + b for a, b in zip(e, q))
                    s = K.sub(rem.get(e2, K.zero), K.mul(f, v))
                    if K.is_zero(s):
                        rem.pop(e2, None)
                    else:
                        rem[e2] = s
                break
        else:
            out[m] = c
            del rem[m]
    return MultiPoly(ring, out)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    K = f.field
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lf, lg)
    a = f.mul_term(mono_div(lcm, lf), K.inv(f.leading_coeff()))
    b = g.mul_term(mono_div(lcm, lg), K.inv(g.leading_coeff()))
    return a - b


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def reduce_basis(G) -> list[MultiPoly]:
    """Minimize and interreduce a Groebner basis; result is monic and sorted."""
    G = [g.monic() for g in G if not g.is_zero()]
    minimal = []
    for i, g in enumerate(G):
        lm = g.leading_monomial()
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            lh = h.leading_monomial()
            if mono_divides(lh, lm) and (lh != lm or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        out.append(normal_form(g, others).monic())
    out.sort(key=lambda g: grlex_key(g.leading_monomial()))
    return out


def buchberger(gens) -> list[MultiPoly]:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    G: list[MultiPoly] = []
    pairs: list[tuple[int, int]] = []

    def add(h):
        h = h.monic()
        if h.is_constant():
            return True
        lh = h.leading_monomial()
        k = len(G)
        G.append(h)
        for i in range(k):
            pairs.append((i, k))
        return False

    for g in sorted(gens, key=lambda g: grlex_key(g.leading_monomial())):
        h = normal_form(g, G)
        if not h.is_zero() and add(h):
            return [h.ring.one()]

    while pairs:
        # normal selection strategy: smallest lcm first
        best = min(
            range(len(pairs)),
            key=lambda t: grlex_key(
                mono_lcm(G[pairs[t][0]].leading_monomial(), G[pairs[t][1]].leading_monomial())
            ),
        )
        i, j = pairs.pop(best)
        li, lj = G[i].leading_monomial(), G[j].leading_monomial()
        if _coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        if _chain_criterion(i, j, lcm, G, pairs):
            continue
        h = normal_form(s_polynomial(G[i], G[j]), G)
        if not h.is_zero() and add(h):
            return [h.ring.one()]
    return reduce_basis(G)


def _chain_criterion(i, j, lcm, G, pairs) -> bool:
    """Skip (i, j) if some k has lm(G_k) | lcm and (i, k), (j, k) already handled."""
    pending = set(pairs)
    for k in range(len(G)):
        if k in (i, j):
            continue
        if not mono_divides(G[k].leading_monomial(), lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


@dataclass
class IdealBasis:
    generators: list
    groebner: list | None = None
    reduced: bool = False
    _ring: object = field(default=None, repr=False)

    @classmethod
    def of(cls, gens) -> "IdealBasis":
        return cls(list(gens)).compute()

    @property
    def ring(self):
        if self._ring is None and self.generators:
            self._ring = self.generators[0].ring
        return self._ring

    def compute(self) -> "IdealBasis":
        if self.groebner is None:
            self.groebner = buchberger(self.generators)
            self.reduced = True
        return self

    def normal_form(self, h: MultiPoly) -> MultiPoly:
        self.compute()
        return normal_form(h, self.groebner)

    def contains(self, h: MultiPoly) -> bool:
        return self.normal_form(h).is_zero()

    def is_unit(self) -> bool:
        self.compute()
        return len(self.groebner) == 1 and self.groebner[0].is_constant()


def radical_member(g: MultiPoly, ideal) -> bool:
    """Decide g in sqrt(I) with the Rabinowitsch variable trick."""
    gens = ideal.generators if isinstance(ideal, IdealBasis) else list(ideal)
    ring = g.ring
    fresh = "t"
    while fresh in ring.names:
        fresh = fresh + "_"
    big = ring.extend(fresh)
    lifted = [p.to_ring(big) for p in gens]
    t = big.var(fresh)
    lifted.append(big.one() - t * g.to_ring(big))
    G = buchberger(lifted)
    return len(G) == 1 and G[0].is_constant()
