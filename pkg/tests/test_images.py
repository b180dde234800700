from fractions import Fraction

import numpy as np
import pytest

from etaleopen import (
    PadicField,
    affine_image,
    enumerate_finite,
    hensel_family_pair,
    make_ext_field,
    member_padic,
    padic_ball_audit,
    parse_pair,
    power_pair,
    prime_field,
    real_intervals,
)
from etaleopen.errors import BudgetExceeded, NotAMember
from etaleopen.images import Answer, image_mask, image_size, least_ball_exponent, member_real, member_real_point

from oracles import brute_image

INF = float("inf")
Q5 = PadicField(5, 12)

SOLVABLE = [
    "pair{n=1; f=y^2 - x1; g=y}",
    "pair{n=1; f=y^2 + x1*y + 1; g=y - 1}",
    "pair{n=1; f=y^2 - x1^2 + 1; g=y}",
    "pair{n=1; f=y^3 - x1*y + 1; g=1}",
    "pair{n=1; f=y^2 - x1^3 - 2; g=x1*y + 1}",
    "pair{n=1; f=y^4 - x1^2*y - x1; g=y^2 - x1}",
    "pair{n=1; f=y^2 - 3; g=y}",
]


# -- finite fields --------------------------------------------------------------


@pytest.mark.parametrize("text", SOLVABLE)
@pytest.mark.parametrize("spec", [(7, 1), (13, 1), (3, 2), (5, 2), (3, 3)])
def test_solve_and_grid_routes_agree_with_brute_force(text, spec):
    F = make_ext_field(*spec)
    pair = parse_pair(text, F)
    want = np.zeros(F.q, dtype=bool)
    for (a,) in brute_image(pair, F):
        want[a] = True
    assert (image_mask(pair, F, method="grid") == want).all()
    if pair.f.degree("x1") <= 2:
        assert (image_mask(pair, F, method="solve") == want).all()


def test_two_dimensional_image():
    F = prime_field(5)
    pair = parse_pair("pair{n=2; f=y^2 - x1*x2; g=y + x2}", F)
    got = set(enumerate_finite(pair, F))
    assert got == brute_image(pair, F)


def test_budget():
    F = prime_field(101)
    pair = parse_pair("pair{n=2; f=y^2 - x1*x2; g=y}", F)
    with pytest.raises(BudgetExceeded):
        enumerate_finite(pair, F, budget=10**5)
    assert image_size(power_pair(2, F), F, budget=10) == 50  # solve route needs no grid


def test_point_set_json():
    F = make_ext_field(3, 2)
    d = enumerate_finite(power_pair(2, F), F).to_dict()
    assert d["field"] == F.spec and d["size"] == 4


# -- p-adic membership ----------------------------------------------------------


def squares_oracle(alpha: Fraction, p=5, k=6):
    """alpha is a nonzero square in Q_p iff it is u*p^(2j) with u a unit square."""
    if alpha == 0:
        return False
    num, den = alpha.numerator, alpha.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    if v % 2:
        return False
    u = num * pow(den, -1, p**k) % p**k
    b = np.arange(p**k, dtype=np.int64)
    return bool(((b * b) % p**k == u).any())


def test_member_padic_examples():
    sq = power_pair(2)
    assert member_padic(sq, 6, Q5).verdict is Answer.Yes
    assert member_padic(sq, 2, Q5).verdict is Answer.No
    assert member_padic(sq, 5, Q5).verdict is Answer.No
    assert member_padic(sq, 0, Q5).verdict is Answer.No
    assert member_padic(sq, Fraction(1, 25), Q5).verdict is Answer.Yes


def test_member_padic_matches_squares_oracle():
    sq = power_pair(2)
    for num in range(-40, 41):
        for den in (1, 2, 3, 5, 25, 7):
            a = Fraction(num, den)
            ans = member_padic(sq, a, Q5)
            assert ans.verdict is not Answer.Unknown
            assert ans.yes == squares_oracle(a), a


def test_member_padic_precision_monotone():
    pair = parse_pair("pair{n=1; f=y^3 - x1*y - x1; g=y}")
    for a in range(-30, 31):
        seen = {}
        for N in (1, 2, 4, 8, 12):
            v = member_padic(pair, a, PadicField(5, N)).verdict
            if v is not Answer.Unknown:
                seen.setdefault(v, N)
        assert len(seen) <= 1, (a, seen)


def test_hensel_family_member_over_q5():
    P = hensel_family_pair(2)
    assert member_padic(P, (0, 0, 0), Q5).yes
    assert member_padic(P, (5, 5, 5), Q5).yes


def test_ball_audit_examples():
    sq = power_pair(2)
    assert padic_ball_audit(sq, 1, Q5, 1, 25).passed
    audit = padic_ball_audit(sq, 1, Q5, 0, 25)
    assert not audit.passed and audit.counterexample == (Fraction(2),)
    assert padic_ball_audit(hensel_family_pair(2), (0, 0, 0), Q5, 1, 25).passed
    with pytest.raises(NotAMember):
        padic_ball_audit(sq, 2, Q5, 1)
    assert least_ball_exponent(sq, 1, Q5) == 1


def test_zero_is_a_frontier_point_of_powers():
    for k in (2, 3):
        P = power_pair(k)
        assert not member_padic(P, 0, Q5).yes and not member_real(P, 0)
        for m in range(1, 6):
            assert member_padic(P, Fraction(5) ** (k * m), Q5).yes
            assert member_real(P, Fraction(1, 2**m))


# -- real images ---------------------------------------------------------------


def test_real_interval_examples():
    assert real_intervals(power_pair(2)).is_rational_form([(Fraction(0), INF, False, False)])
    cube = parse_pair("pair{n=1; f=y^3 - x1; g=y}")
    assert real_intervals(cube).is_rational_form(
        [(-INF, Fraction(0), False, False), (Fraction(0), INF, False, False)]
    )
    hyp = parse_pair("pair{n=1; f=y^2 - x1^2 + 1; g=y}")
    assert real_intervals(hyp).is_rational_form(
        [(-INF, Fraction(-1), False, False), (Fraction(1), INF, False, False)]
    )


def test_real_interval_algebraic_endpoint():
    U = real_intervals(parse_pair("pair{n=1; f=y^2 - x1^2 + 2; g=y}"))
    # image is |x| > sqrt(2)
    assert str(U).count("root(") == 2
    assert not U.contains(Fraction(141, 100)) and U.contains(Fraction(142, 100))
    assert U.contains(-2) and not U.contains(0)


@pytest.mark.parametrize("text", SOLVABLE + [
    "pair{n=1; f=y^2 - x1^3 + x1; g=y}",
    "pair{n=1; f=y^3 - 3*y - x1; g=y^2 - 1}",
    "pair{n=1; f=y^2 - x1; g=y - 1}",
])
def test_real_intervals_agree_with_pointwise_sturm(text):
    pair = parse_pair(text)
    U = real_intervals(pair)
    pts = [Fraction(k, 7) for k in range(-60, 61)] + [Fraction(k) for k in (-3, -2, -1, 0, 1, 2, 3)]
    for x in pts:
        assert U.contains(x) == member_real(pair, x), x
        assert member_real(pair, x) == member_real_point(pair, (x,))


def test_affine_real_image():
    P = affine_image(power_pair(2), -3, 2)
    assert real_intervals(P).is_rational_form([(-INF, Fraction(2), False, False)])
