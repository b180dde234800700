"""Acceptance gate: one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; they are also collected into a summary section at the end.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from etaleopen import (
    PadicField,
    artin_schreier_pair,
    hensel_family_pair,
    make_ext_field,
    member_padic,
    power_pair,
    prime_field,
    real_intervals,
)
from etaleopen.algebra.fields import QQ, FqElement
from etaleopen.errors import BadDenominator
from etaleopen.etale import hensel_tangent_value
from etaleopen.experiments import (
    clopen_witness_padic,
    density_sweep,
    discover_members,
    hensel_neighborhood_demo,
    paley_census,
    square_difference_probe,
)
from etaleopen.images import Answer, image_size, least_ball_exponent, member_real
from etaleopen.poly import PolyRing
from etaleopen.steinitz import SteinitzField, euler_square, is_square_in, k0_of, parse_steinitz
from etaleopen.weil import expand_polynomial, lift_to_extension, load_basis, point_down, restrict_pair

from oracles import brute_image, grid_bad_point

INF = float("inf")


def sieve(n):
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return [int(i) for i in np.nonzero(flags)[0]]


def reductions(pair, q):
    """The pair over F_q, or None when it does not live there."""
    if pair.field is QQ:
        try:
            return pair.over(prime_field(q))
        except BadDenominator:
            return None
    return pair if pair.field.p == q and pair.field.m == 1 else None


def test_c01_validator_soundness(corpus, criterion):
    cases, bad = 0, []
    for pair in corpus:
        for q in (3, 5, 7):
            red = reductions(pair, q)
            if red is None:
                continue
            cases += 1
            valid = red.validate().valid
            found = None
            for j in range(1, 5):
                try:
                    found = grid_bad_point(red, make_ext_field(q, j), 6 * 10**6)
                except OverflowError:
                    break
                if found is not None:
                    break
            if valid == (found is not None):
                bad.append((pair.label, q))
    ok = cases >= 50 and not bad
    criterion(1, "validator agrees with bad-point search over F_{q^j}", ok,
              f"{cases} reductions, {len(bad)} disagreements")
    assert ok, bad[:5]


def test_c02_power_images(criterion):
    primes = sieve(2003)[1:]
    bad = []
    for q in primes:
        F = prime_field(q)
        if image_size(power_pair(2), F) != (q - 1) // 2:
            bad.append((2, q))
        for k in (3, 4, 5, 6):
            if k % q and image_size(power_pair(k), F) != (q - 1) // math.gcd(k, q - 1):
                bad.append((k, q))
    ok = not bad
    criterion(2, "nonzero k-th power image sizes", ok, f"{len(primes)} primes, {len(bad)} mismatches")
    assert ok, bad[:5]


def test_c03_artin_schreier(criterion):
    bad = []
    for p in (3, 5, 7):
        for m in range(1, 6):
            if image_size(artin_schreier_pair(p), make_ext_field(p, m)) != p ** (m - 1):
                bad.append((p, m))
    ok = not bad
    criterion(3, "Artin-Schreier images have size p^(m-1)", ok, f"{len(bad)} mismatches")
    assert ok, bad


def test_c04_paley_bound(criterion):
    primes = [q for q in sieve(9973) if q >= 1009]
    fails, drift = 0, 0
    worst = 0.0
    for k in (1, 2, 3):
        for row in paley_census(primes, k, trials=20):
            fails += not row.passed
            if row.q >= 2003:
                d = abs(float(row.ratio) - 2.0**-k)
                worst = max(worst, d)
                drift += d > 0.05
    ok = not fails and not drift
    criterion(4, "Paley census below 2^(1-k) q", ok,
              f"{len(primes)} primes x 3 k x 20 draws, worst drift {worst:.4f}")
    assert ok


def test_c05_density(corpus, criterion):
    small = [p for p in sieve(100) if p > 2]
    powers = {p**k for p in small for k in range(2, 9) if 100 <= p**k <= 10**4}
    qs = sorted(set(p for p in sieve(10**4) if p >= 100) | powers)
    rows, fails = 0, []
    for pair in corpus:
        if pair.n != 1:
            continue
        Q = qs if pair.field is QQ else [q for q in qs if q % pair.field.p == 0]
        for r in density_sweep(pair, Q, 10**6, skip_over_budget=True):
            if r.applicable:
                rows += 1
                if not r.passed:
                    fails.append((pair.label, r.q))
    ok = rows > 0 and not fails
    criterion(5, "density bound |image| >= q/(2k)", ok, f"{rows} applicable rows, {len(fails)} failures")
    assert ok, fails[:5]


def test_c06_padic_squares(criterion):
    ctx = PadicField(5, 12)
    mod = 5**6
    b = np.arange(mod, dtype=np.int64)
    b = b[b % 125 != 0]
    squares = set((b * b % mod).tolist())
    mismatches, unknown = [], 0
    for a in range(-100, 101):
        v = member_padic(power_pair(2), a, ctx).verdict
        unknown += v is Answer.Unknown
        if (v is Answer.Yes) != (a % mod in squares):
            mismatches.append(a)
    ok = not mismatches and not unknown
    criterion(6, "p-adic square membership vs search mod 5^6", ok,
              f"{len(mismatches)} mismatches, {unknown} unknown")
    assert ok, mismatches[:5]


def test_c07_openness(corpus, criterion):
    ctx = PadicField(5, 12)
    members, worst, fails = 0, 0, []
    for pair in corpus:
        if pair.field is not QQ or not pair.validate(budget=0).valid:
            continue
        for alpha in discover_members(pair, ctx, radius=3 if pair.n <= 2 else 1, limit=6):
            members += 1
            M = least_ball_exponent(pair, alpha, ctx, bound=10, samples=25)
            if M is None:
                fails.append((pair.label, alpha))
            else:
                worst = max(worst, M)
    ok = members > 0 and not fails
    criterion(7, "every discovered Q_5 member has a passing ball", ok,
              f"{members} members, worst M = {worst}")
    assert ok, fails[:5]


def test_c08_real_intervals(corpus, criterion):
    exact = real_intervals(power_pair(2)).is_rational_form([(Fraction(0), INF, False, False)])
    xs = [Fraction(k, 37) for k in range(-500, 500)]
    pairs, bad = 0, []
    for pair in corpus:
        if pair.field is not QQ or pair.n != 1:
            continue
        pairs += 1
        U = real_intervals(pair)
        bad += [(pair.label, x) for x in xs if U.contains(x) != member_real(pair, x)]
    ok = exact and not bad
    criterion(8, "real intervals exact and pointwise consistent", ok,
              f"{pairs} pairs x {len(xs)} samples, {len(bad)} mismatches")
    assert ok, bad[:5]


def test_c09_clopen_witness(criterion):
    w = clopen_witness_padic(5)
    certs = w.not_square["verdict"] == "No" and w.not_shifted_square["verdict"] == "No"
    # independent residue check: 3 and 3 - 1 are non-residues mod 5
    residues = {b * b % 5 for b in range(1, 5)}
    ok = w.alpha == 3 and certs and 3 % 5 not in residues and 2 % 5 not in residues
    criterion(9, "clopen witness over Q_5 is 3", ok)
    assert ok


def test_c10_weil(criterion):
    Qi = load_basis("Qi")
    R = PolyRing(QQ, ("e1", "e2", "x1"))
    comps = expand_polynomial(lift_to_extension(R.parse("x1^2 + 1"), Qi), Qi)
    S = PolyRing(QQ, ("x1_1", "x1_2"))
    expansion = list(comps) == [S.parse("x1_1^2 - x1_2^2 + 1"), S.parse("2*x1_1*x1_2")]
    F9, B = make_ext_field(3, 2), load_basis("F9overF3")
    bad = []
    for pair in (power_pair(2, F9), artin_schreier_pair(3, F9)):
        img = brute_image(pair, F9)
        system = restrict_pair(pair, B)
        bad += [a for a in range(9) if system.solvable_at(point_down((a,), B, F9)) != ((a,) in img)]
    ok = expansion and not bad
    criterion(10, "Weil expansion and dual-path membership on F_9", ok, f"{len(bad)} disagreements")
    assert ok


STEINITZ = ["1", "2", "4", "3", "5^inf", "2*5^inf", "4*3^inf", "3^inf*7^inf", "2*3^2*7", "4*5*7^inf"]


def test_c11_steinitz_squares(criterion):
    checks, bad, vals = 0, [], set()
    for text in STEINITZ:
        K = SteinitzField(3, parse_steinitz(text))
        k0 = k0_of(K)
        vals.add(K.s.val(2))
        for n in range(1, 10):
            levels = [m for m in range(n, 10, n)
                      if parse_steinitz(str(m)).divides(K.s) and m % math.lcm(n, k0) == 0]
            if not levels:
                continue
            F = make_ext_field(3, n)
            for a in range(F.q):
                x = FqElement(F, a)
                got = is_square_in(K, x)
                for m in levels:
                    checks += 1
                    if got != euler_square(x, m):
                        bad.append((text, n, a, m))
    ok = not bad and {0, 1, 2} <= vals
    criterion(11, "Steinitz square test matches Euler at admissible levels", ok,
              f"{len(STEINITZ)} fields, {checks} checks")
    assert ok, bad[:5]


def test_c12_square_difference_probe(criterion):
    sq = power_pair(2)
    lv = square_difference_probe(3, (1, 3, 9), sq, sq).first_failure
    genuine = False
    if lv is not None and lv.witness is not None:
        F = make_ext_field(3, lv.degree)
        a, b = (int(w) for w in lv.witness)
        d = F.sub(a, b)
        genuine = a and b and F.is_square(a) and F.is_square(b) and (d == 0 or not F.is_square(d))
    # the top level on its own, to bound the cost of F_{3^9}
    t0 = time.perf_counter()
    top = square_difference_probe(3, (9,), sq, sq).first_failure
    elapsed = time.perf_counter() - t0
    ok = lv is not None and lv.degree <= 9 and bool(genuine) and top is not None and elapsed < 300
    criterion(12, "square-difference containment fails with a witness", ok,
              "" if lv is None else f"first failure at degree {lv.degree}, 3^9 level in {elapsed:.1f}s")
    assert ok


def test_c13_hensel_family(criterion):
    valid = all(hensel_family_pair(n).validate().valid for n in (2, 3, 4))
    rep = hensel_neighborhood_demo(2, PadicField(5, 12))
    tangent = all(hensel_tangent_value(n) == (-1) ** (n + 1) for n in (2, 3, 4))
    ok = valid and rep.points == 27 and rep.members == 27 and tangent
    criterion(13, "Hensel family validates and covers the Q_5 grid", ok, f"{rep.members}/27 members")
    assert ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hensel_tangent_oracle(n):
    # y^(n+2) + y^(n+1) at y = -1 has derivative (n+2)(-1)^(n+1) + (n+1)(-1)^n = (-1)^(n+1)
    d = (n + 2) * (-1) ** (n + 1) + (n + 1) * (-1) ** n
    assert hensel_tangent_value(n) == d
