"""Membership in étale images over Q_p, with finite certificates.

For a rational base point a the fiber polynomial f(a, y) is reduced to a
squarefree H whose roots are exactly the roots b of f(a, y) with
g(a, b) != 0.  After the substitution y = z / p^s, H becomes a monic
polynomial G with p-integral coefficients and a = member iff G has a root
in Z_p.  Let d = v_p(Res(G, G')).  The search walks the tree of residues
b mod p^k with G(b) = 0 mod p^k:

* a node with v(G(b)) > 2 v(G'(b)) lifts to a root (Hensel): Yes;
* if the tree dies at depth k, no root exists: No, certified by p^k;
* if a node survives at depth d + 1 a root exists: two distinct roots
  z, w of G satisfy v(z - w) <= v(G'(z)) and v(G'(z)) + v(G'(w)) <= d,
  so a residue with v(G(b)) > d is closer to one root than to all its
  conjugates and Krasner's lemma puts that root in Q_p.

So depth d + 1 always decides, and Unknown only occurs when N < d + 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, lcm

from ..algebra import upoly
from ..algebra.fields import QQ
from ..algebra.padic import PadicField, PadicNumber
from ..errors import BadDenominator, NotAMember, UnsupportedCoefficientField

NODE_CAP = 200_000


class Answer(str, enum.Enum):
    Yes = "Yes"
    No = "No"
    Unknown = "Unknown"


@dataclass(frozen=True)
class MembershipAnswer:
    verdict: Answer
    certificate: dict = field(default_factory=dict)

    @property
    def yes(self):
        return self.verdict is Answer.Yes

    @property
    def no(self):
        return self.verdict is Answer.No

    def to_dict(self):
        return {"verdict": self.verdict.value, "certificate": dict(self.certificate)}


def _v(x: Fraction | int, p: int):
    """p-adic valuation of a rational (None for zero)."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _vint(n: int, p: int, cap: int) -> int:
    """Valuation of an integer, capped at ``cap`` (zero counts as cap)."""
    if n == 0:
        return cap
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


def _as_rational(a) -> Fraction:
    if isinstance(a, PadicNumber):
        return a.to_rational()
    return Fraction(a)


def check_denominators(pair, p: int):
    for h in (pair.f, pair.g):
        for c in h.terms.values():
            if Fraction(c).denominator % p == 0:
                raise BadDenominator(f"coefficient {c} has a denominator divisible by {p}")


def fiber_polynomial(pair, alpha) -> list:
    """Squarefree H in Q[y]: its roots are the b with f(a, b) = 0 != g(a, b)."""
    xs = pair.ring.names[:-1]
    sub = dict(zip(xs, alpha))
    f = pair.f.specialize(sub).to_univariate("y")
    g = pair.g.specialize(sub).to_univariate("y")
    f = upoly.monic(QQ, f)
    sqf = upoly.exquo(QQ, f, upoly.gcd(QQ, f, upoly.deriv(QQ, f)))
    return upoly.strip_common(QQ, sqf, g)


def integral_model(H: list, p: int):
    """(s, G): G(z) = p^(s*deg) H(z / p^s) is monic, p-integral; integer coefficients up to a unit."""
    dgr = len(H) - 1
    s = 0
    for i, c in enumerate(H[:-1]):
        v = _v(c, p)
        if v is not None and v < 0:
            s = max(s, ceil(-v / (dgr - i)))
    G = [Fraction(c) * Fraction(p) ** (s * (dgr - i)) for i, c in enumerate(H)]
    den = lcm(*(c.denominator for c in G))
    return s, [int(c * den) for c in G]


def _eval(G, b):
    acc = 0
    for c in reversed(G):
        acc = acc * b + c
    return acc


def member_padic(pair, alpha, ctx: PadicField) -> MembershipAnswer:
    if pair.field is not QQ:
        raise UnsupportedCoefficientField("p-adic membership needs a pair over Q")
    p, N = ctx.p, ctx.precision
    if not isinstance(alpha, (tuple, list)):
        alpha = (alpha,)
    alpha = tuple(_as_rational(a) for a in alpha)
    if len(alpha) != pair.n:
        raise ValueError(f"point has {len(alpha)} coordinates, pair expects {pair.n}")
    check_denominators(pair, p)
    H = fiber_polynomial(pair, alpha)
    if len(H) <= 1:
        return MembershipAnswer(Answer.No, {"reason": "no admissible root over the algebraic closure"})
    if len(H) == 2:
        beta = -H[0] / H[1]
        return MembershipAnswer(Answer.Yes, {"reason": "rational root", "root": str(beta)})
    s, G = integral_model(H, p)
    dG = upoly.deriv(QQ, [Fraction(c) for c in G])
    dG = [int(c) for c in dG]
    d = _v(upoly.resultant(QQ, [Fraction(c) for c in G], [Fraction(c) for c in dG]), p)
    depth = min(N, 2 * d + 1)
    nodes = [0]
    for k in range(1, depth + 1):
        step = p ** (k - 1)
        nxt = []
        for b0 in nodes:
            for t in range(p):
                b = b0 + t * step
                vg = _vint(_eval(G, b), p, 4 * depth + 2)
                if vg < k:
                    continue
                vd = _vint(_eval(dG, b), p, 4 * depth + 2)
                if vg > 2 * vd:
                    return MembershipAnswer(
                        Answer.Yes,
                        {
                            "reason": "hensel",
                            "residue": str(Fraction(b, p**s)),
                            "modulus_exponent": k,
                            "scale": s,
                            "v_derivative": vd,
                            "precision": N,
                        },
                    )
                nxt.append(b)
        if not nxt:
            return MembershipAnswer(
                Answer.No, {"reason": "residues exhausted", "modulus": f"{p}^{k}", "scale": s, "d": d}
            )
        if len(nxt) > NODE_CAP:
            break
        nodes = nxt
        if k == d + 1:
            # a survivor at depth d + 1 forces a root in Z_p (see module docstring)
            return MembershipAnswer(
                Answer.Yes,
                {"reason": "discriminant bound", "residue": str(Fraction(nodes[0], p**s)),
                 "modulus_exponent": k, "scale": s, "d": d, "precision": N},
            )
    return MembershipAnswer(Answer.Unknown, {"d": d, "precision": N, "needed": d + 1})


def ball_points(alpha, p: int, M: int, samples: int):
    """Deterministic sample of alpha + p^M Z_p^n."""
    alpha = tuple(_as_rational(a) for a in (alpha if isinstance(alpha, (tuple, list)) else (alpha,)))
    n = len(alpha)
    r = 1
    while r**n < samples:
        r += 1
    radius = Fraction(p) ** M
    out = []
    for v in product(range(r), repeat=n):
        out.append(tuple(a + radius * t for a, t in zip(alpha, v)))
        if len(out) == samples:
            break
    return out


@dataclass(frozen=True)
class BallAudit:
    passed: bool
    M: int
    samples: int
    counterexample: tuple | None = None
    unknown: tuple = ()

    def to_dict(self):
        return {
            "passed": self.passed,
            "M": self.M,
            "samples": self.samples,
            "counterexample": None if self.counterexample is None else [str(c) for c in self.counterexample],
            "unknown": [[str(c) for c in u] for u in self.unknown],
        }


def padic_ball_audit(pair, alpha, ctx: PadicField, M: int, samples: int = 25) -> BallAudit:
    """Do all sampled points of alpha + p^M Z_p^n lie in the image?"""
    if not member_padic(pair, alpha, ctx).yes:
        raise NotAMember(f"{alpha} is not a certified member")
    unknown = []
    for pt in ball_points(alpha, ctx.p, M, samples):
        ans = member_padic(pair, pt, ctx)
        if ans.no:
            return BallAudit(False, M, samples, pt, tuple(unknown))
        if not ans.yes:
            unknown.append(pt)
    return BallAudit(not unknown, M, samples, None, tuple(unknown))


def least_ball_exponent(pair, alpha, ctx: PadicField, bound: int = 10, samples: int = 25):
    """Least M <= bound whose ball audit passes, or None."""
    for M in range(bound + 1):
        if padic_ball_audit(pair, alpha, ctx, M, samples).passed:
            return M
    return None
