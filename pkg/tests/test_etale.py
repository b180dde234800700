import pytest

from etaleopen import (
    EtaleCover,
    affine_image,
    artin_schreier_pair,
    base_ring,
    enumerate_finite,
    generic_pair,
    hensel_family_pair,
    intersect_images,
    make_ext_field,
    parse_pair,
    power_pair,
    prime_field,
    union,
    validate,
)
from etaleopen.algebra.fields import QQ
from etaleopen.errors import NotMonic, ParseError, RingMismatch, ZeroScale
from etaleopen.etale import Verdict, hensel_tangent_value, resolve_pair

from oracles import bad_points, brute_image


def test_validate_examples():
    assert validate(power_pair(2)).valid
    r = validate(parse_pair("pair{n=1; f=y^2 - x1; g=1}"))
    assert r.verdict is Verdict.Invalid
    assert r.witness == ((0,), 0)
    assert validate(artin_schreier_pair(3)).valid


def test_validate_squares_brute_force_f5_f25():
    for F in (prime_field(5), make_ext_field(5, 2)):
        assert not list(bad_points(power_pair(2).over(F), F))


def test_invalid_witness_has_the_bad_sign_pattern():
    pair = parse_pair("pair{n=1; f=y^2 - x1^3; g=x1 + 1; field=Fp:5}")
    r = validate(pair)
    assert not r.valid
    (a,), b = r.witness
    F = r.witness_field
    assert (a, b) in set(bad_points(pair, F))


def test_witness_needs_extension():
    # bad points need y = 0 and x1^2 = -2 = 3, a non-square mod 5: first witness in F_25
    pair = parse_pair("pair{n=1; f=y^2 - x1^2 - 2; g=1; field=Fp:5}")
    assert not list(bad_points(pair, prime_field(5)))
    r = validate(pair)
    assert not r.valid and r.witness_field.q == 25


def test_generic_pair():
    R = base_ring(QQ, 1)
    P = generic_pair(R.parse("y^2 - x1"))
    assert P.g == R.parse("2*y")
    assert validate(P).valid
    assert generic_pair(R.parse("y")).g == R.one()
    with pytest.raises(NotMonic):
        generic_pair(R.parse("2*y^2 - x1"))


def test_generic_pairs_of_corpus_are_valid(corpus):
    for pair in corpus[:40]:
        assert validate(generic_pair(pair.f), budget=0).valid, pair.label


def test_power_and_artin_schreier_images():
    assert enumerate_finite(power_pair(2).over(prime_field(7)), prime_field(7)).values() == [1, 2, 4]
    assert enumerate_finite(artin_schreier_pair(3), prime_field(3)).values() == [0]
    assert 0 not in enumerate_finite(power_pair(2).over(prime_field(5)), prime_field(5))


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_power_image_size(q, k):
    from math import gcd

    F = make_ext_field(*_pm(q))
    if gcd(k, F.p) != 1:
        pytest.skip("k meets the characteristic")
    img = enumerate_finite(power_pair(k).over(F), F)
    assert len(img) == (q - 1) // gcd(k, q - 1)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)])
def test_artin_schreier_size(p, m):
    F = make_ext_field(p, m)
    assert len(enumerate_finite(artin_schreier_pair(p).over(F), F)) == p ** (m - 1)


def _pm(q):
    for p in (3, 5, 7, 11, 13):
        m, r = 0, q
        while r % p == 0:
            r //= p
            m += 1
        if r == 1:
            return p, m
    raise ValueError(q)


def test_affine_image_example():
    F = prime_field(13)
    P = affine_image(power_pair(2, F), 1, 1)
    assert enumerate_finite(P, F).values() == [0, 2, 4, 5, 10, 11]
    same = affine_image(power_pair(2, F), 1, 0)
    assert same.f == power_pair(2, F).f
    with pytest.raises(ZeroScale):
        affine_image(power_pair(2, F), 0, 1)


@pytest.mark.parametrize("q", [5, 7, 9, 13])
def test_affine_image_is_affine_transform(q):
    F = make_ext_field(*_pm(q))
    for base in (power_pair(2, F), power_pair(3, F), parse_pair("pair{n=1; f=y^2 + x1*y + 1; g=y - 1}", F)):
        img = brute_image(base, F)
        for a, b in [(1, 1), (2, 0), (q - 1, 3 % q), (3 % q or 1, q - 2)]:
            if a % F.p == 0:
                continue
            # integers act through Z -> F, as in affine_image
            A, B = F.from_int(a), F.from_int(b)
            moved = {(F.add(F.mul(A, x), B),) for (x,) in img}
            assert set(enumerate_finite(affine_image(base, a, b), F)) == moved


def test_affine_over_q_then_reduce():
    P = affine_image(power_pair(2), 2, 1)
    F = prime_field(7)
    squares = {1, 2, 4}
    assert set(enumerate_finite(P.over(F), F).values()) == {(2 * s + 1) % 7 for s in squares}


def test_union_and_intersection():
    F3 = prime_field(3)
    C = union([power_pair(2, F3), artin_schreier_pair(3)])
    assert len(C) == 2
    F = prime_field(13)
    sq = power_pair(2, F)
    shifted = affine_image(sq, 1, 1)
    assert intersect_images(sq, shifted, F).values() == [4, 10]
    assert intersect_images(sq, sq, F) == enumerate_finite(sq, F)
    with pytest.raises(RingMismatch):
        union([power_pair(2, F), power_pair(2, prime_field(7))])


def test_union_image_is_union_of_images():
    for F in (prime_field(7), make_ext_field(3, 2)):
        A, B = power_pair(2, F), parse_pair("pair{n=1; f=y^2 - x1 - 1; g=y}", F)
        assert set(enumerate_finite(union([A, B]), F)) == brute_image(A, F) | brute_image(B, F)


def test_empty_and_zero_g():
    F = prime_field(5)
    P = parse_pair("pair{n=1; f=y^2 - x1; g=0}", F)
    assert len(enumerate_finite(P, F)) == 0
    assert len(enumerate_finite(EtaleCover([], base_ring(F, 1)), F)) == 0
    assert enumerate_finite(parse_pair("pair{n=1; f=y; g=1}", F), F).values() == [0, 1, 2, 3, 4]


def test_hensel_family():
    P = hensel_family_pair(2)
    R = P.ring
    assert P.f == R.parse("y^4 + y^3 + x3*y^2 + x2*y + x1")
    for n in (2, 3, 4, 5):
        assert hensel_tangent_value(n) == (-1) ** (n + 1)
        assert validate(hensel_family_pair(n), budget=0).valid


def test_pair_text_format():
    P = parse_pair("pair{n=2; f=y^2 - x1*x2; g=y + x2; field=Fp:7}")
    assert P.n == 2 and P.field is prime_field(7)
    assert parse_pair(P.to_text()) == P
    for bad in ("pair{n=1; f=y}", "pair{n=1; f=2*y; g=1}", "pair{n=1; f=y; g=1; h=2}", "pear{}"):
        with pytest.raises((ParseError, NotMonic)):
            parse_pair(bad)


def test_corpus_shape(corpus):
    assert len(corpus) >= 50
    texts = {p.to_text() for p in corpus}
    for named in (power_pair(2), power_pair(3), hensel_family_pair(2)):
        assert named.to_text() in texts
    assert artin_schreier_pair(3).to_text() in texts
    assert resolve_pair("corpus:1") == corpus[0]
