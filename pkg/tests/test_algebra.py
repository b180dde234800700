from fractions import Fraction
from itertools import product

import pytest

from etaleopen.algebra import (
    PadicField,
    PadicNumber,
    embed,
    frobenius,
    is_square,
    make_ext_field,
    minimal_polynomial,
    norm_to_prime,
    parse_field,
    prime_field,
)
from etaleopen.algebra import upoly
from etaleopen.algebra.fields import QQ, FqElement, canonical_modulus
from etaleopen.algebra.numtheory import factorize, is_prime, legendre, primes_between, valuation
from etaleopen.errors import (
    BadDenominator,
    CompositeModulus,
    DegreeTooLarge,
    NotASubfield,
    UnsupportedCharacteristic,
)


def _has_root(poly, p):
    return any(sum(c * x**i for i, c in enumerate(poly)) % p == 0 for x in range(p))


# -- number theory ----------------------------------------------------------------


def test_primality_small_table():
    sieve = [True] * 200
    sieve[0] = sieve[1] = False
    for i in range(2, 200):
        if sieve[i]:
            for j in range(i * i, 200, i):
                sieve[j] = False
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if sieve[n]]
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_factorize_and_valuation():
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert valuation(250, 5) == 3
    assert primes_between(10, 30) == [11, 13, 17, 19, 23, 29]
    assert [legendre(a, 7) for a in range(1, 7)] == [1, 1, -1, 1, -1, -1]


# -- field construction -------------------------------------------------------------


def test_degree_one_is_prime_field():
    F = make_ext_field(3, 1)
    assert F is prime_field(3)
    assert F.kind == "PrimeField"


def test_canonical_moduli():
    assert make_ext_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_ext_field(5, 2).modulus == (2, 0, 1)  # x^2 + 2


def test_canonical_modulus_is_first_irreducible_quadratic():
    # brute force: a monic quadratic is irreducible iff it has no root
    for p in (3, 5, 7, 11):
        first = None
        for code in range(p * p):
            a0, a1 = code % p, code // p
            if not _has_root([a0, a1, 1], p):
                first = (a0, a1, 1)
                break
        assert canonical_modulus(p, 2) == first


def test_field_errors():
    with pytest.raises(CompositeModulus):
        make_ext_field(9, 1)
    with pytest.raises(UnsupportedCharacteristic):
        prime_field(2)
    with pytest.raises(DegreeTooLarge):
        make_ext_field(3, 30)


def test_parse_field_specs():
    assert parse_field("Q") is QQ
    assert parse_field("Fp:7") is prime_field(7)
    assert parse_field("Fq:3^2") is make_ext_field(3, 2)
    K = parse_field("Qp:5@12")
    assert (K.p, K.precision) == (5, 12)
    with pytest.raises(ValueError):
        parse_field("Fq:3")
    with pytest.raises(ValueError):
        parse_field("R2")


def test_from_fraction_rejects_p_denominators():
    F = prime_field(5)
    assert F.from_fraction(Fraction(1, 2)) == 3
    with pytest.raises(BadDenominator):
        F.from_fraction(Fraction(1, 5))


# -- arithmetic -------------------------------------------------------------------


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (3, 3), (7, 2)])
def test_field_axioms_exhaustive(p, m):
    F = make_ext_field(p, m)
    els = list(range(F.q))
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b in product(els[: 12], els):
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, b) == F.add(b, a)
        c = (a * 7 + b) % F.q
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_vectorized_ops_match_scalar():
    import numpy as np

    F = make_ext_field(3, 3)
    a = np.arange(F.q, dtype=np.int64)
    b = (a * 5 + 2) % F.q
    assert F.vadd(a, b).tolist() == [F.add(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert F.vmul(a, b).tolist() == [F.mul(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert F.vsub(a, b).tolist() == [F.sub(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert F.vpow(a, 5).tolist() == [F.pow(x, 5) for x in a.tolist()]


def test_inverse_and_sqrt_tables():
    for F in (prime_field(13), make_ext_field(5, 2)):
        inv = F.inverse_table()
        assert all(F.mul(a, int(inv[a])) == 1 for a in range(1, F.q))
        root = F.sqrt_table()
        for s in range(F.q):
            r = int(root[s])
            assert (r >= 0) == F.is_square(s)
            if r >= 0:
                assert F.mul(r, r) == s


def test_is_square_examples():
    assert not is_square(prime_field(5)(2))
    assert is_square(prime_field(7)(0))
    assert is_square(make_ext_field(3, 2)(2))


def test_square_multiplicativity():
    F = make_ext_field(3, 2)
    for a, b in product(range(1, 9), repeat=2):
        assert F.is_square(F.mul(a, b)) == (F.is_square(a) == F.is_square(b))


def test_frobenius_fixes_prime_field_only():
    F = make_ext_field(5, 2)
    fixed = [a for a in range(F.q) if frobenius(F(0) + FqElement(F, a)).value == a]
    assert fixed == list(range(5))


def test_norm_lands_in_prime_field():
    F = make_ext_field(3, 2)
    for a in range(1, 9):
        n = norm_to_prime(FqElement(F, a))
        # norm = a * a^3 for F_9 over F_3
        assert n == F.mul(a, F.pow(a, 3))


# -- embeddings -------------------------------------------------------------------


def test_embed_prime_subfield_identity():
    assert embed(prime_field(3)(2), make_ext_field(3, 2)).value == 2


def test_embed_root_of_modulus():
    F9, F81 = make_ext_field(3, 2), make_ext_field(3, 4)
    z = FqElement(F9, 3)  # the modulus root
    w = embed(z, F81)
    assert len(minimal_polynomial(F81, w.value)) == 3
    # w is a root of the F_9 modulus x^2 + 1
    assert F81.add(F81.mul(w.value, w.value), 1) == 0


def test_embed_not_subfield():
    with pytest.raises(NotASubfield):
        embed(make_ext_field(3, 2)(1), make_ext_field(3, 3))


def test_embed_is_homomorphism_and_chains_commute():
    F3, F9, F81 = make_ext_field(3, 1), make_ext_field(3, 2), make_ext_field(3, 4)
    for a, b in product(range(9), repeat=2):
        ea, eb = embed(FqElement(F9, a), F81), embed(FqElement(F9, b), F81)
        assert embed(FqElement(F9, F9.mul(a, b)), F81) == ea * eb
        assert embed(FqElement(F9, F9.add(a, b)), F81) == ea + eb
    for a in range(3):
        assert embed(embed(FqElement(F3, a), F9), F81) == embed(FqElement(F3, a), F81)
    F729 = make_ext_field(3, 6)
    for a in range(3):
        x = FqElement(F3, a)
        assert embed(x, F729) == embed(embed(x, F9), F729)


# -- univariate helpers -------------------------------------------------------------


def test_upoly_gcd_and_resultant():
    K = QQ
    f = [Fraction(c) for c in (-1, 0, 1)]  # x^2 - 1
    g = [Fraction(c) for c in (1, 1)]  # x + 1
    assert upoly.gcd(K, f, g) == [1, 1]
    d, s, t = upoly.xgcd(K, [Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1)])
    assert d == [1]
    # Res(x^2 - 2, 2x) = 4 * (-2) with the Sylvester sign convention: -8
    assert upoly.resultant(K, [Fraction(-2), 0, Fraction(1)], [0, Fraction(2)]) == -8


# -- p-adic numbers ---------------------------------------------------------------


def test_padic_from_rational():
    x = PadicNumber.from_rational(Fraction(50, 3), 5, 6)
    assert x.valuation == 2
    assert (x.unit * 3) % 5**6 == 2
    assert PadicNumber.from_rational(0, 5, 6).is_zero
    assert PadicField(5, 6)(Fraction(1, 25)).valuation == -2


def test_padic_valuations():
    K = PadicField(7, 8)
    for a, b in product([1, 7, 49, Fraction(3, 7), 6, 14], repeat=2):
        x, y = K(a), K(b)
        assert (x * y).valuation == x.valuation + y.valuation
        s = x + y
        if x.valuation != y.valuation:
            assert s.valuation == min(x.valuation, y.valuation)
        elif not s.is_zero:
            assert s.valuation >= x.valuation


def test_padic_inverse_roundtrip():
    K = PadicField(5, 10)
    for a in (2, 3, Fraction(7, 25), 125):
        x = K(a)
        assert x * x.inverse() == K(1)
        assert (x / x) == K(1)
