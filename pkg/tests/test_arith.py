"""Integer kernel: primality, factorization, square-free parts, residues."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quatgenus.arith import (
    factor,
    is_prime,
    is_squarefree,
    legendre,
    parse_rational,
    squarefree_classes,
    squarefree_part,
    witness_sequence,
)
from quatgenus.errors import InputError

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_is_prime_small_table():
    for n in range(-3, 50):
        assert is_prime(n) == (n in SMALL_PRIMES)


def test_is_prime_large_values():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)
    assert is_prime(10**18 + 9)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_factor_known_product():
    f = factor(9991)
    assert f.sign == 1
    assert f.prime_powers == ((97, 1), (103, 1))


def test_factor_sign_and_units():
    assert factor(-12).sign == -1
    assert factor(-12).prime_powers == ((2, 2), (3, 1))
    assert factor(1).prime_powers == ()
    with pytest.raises(InputError):
        factor(0)


@given(st.integers(min_value=2, max_value=10**9))
@settings(max_examples=200)
def test_factor_reconstructs(n):
    f = factor(n)
    product = f.sign
    for p, e in f.prime_powers:
        assert is_prime(p)
        assert e >= 1
        product *= p**e
    assert product == n


def test_squarefree_part_values():
    assert squarefree_part(12) == 3
    assert squarefree_part(-8) == -2
    assert squarefree_part(1) == 1
    assert squarefree_part(Fraction(-8, 27)) == -6
    assert squarefree_part(Fraction(1, 4)) == 1


@given(st.integers(min_value=1, max_value=10**6))
@settings(max_examples=200)
def test_squarefree_part_is_squarefree_divisor(n):
    s = squarefree_part(n)
    assert is_squarefree(s)
    # n / s is a perfect square
    q = n // s
    assert s * q == n
    assert int(q**0.5 + 0.5) ** 2 == q


def test_legendre_table_mod_7():
    values = {a: legendre(a, 7) for a in range(1, 7)}
    assert values == {1: 1, 2: 1, 3: -1, 4: 1, 5: -1, 6: -1}
    assert legendre(7, 7) == 0
    assert legendre(3, 7) == -1


def test_legendre_rejects_non_odd_prime():
    with pytest.raises(InputError):
        legendre(3, 8)
    with pytest.raises(InputError):
        legendre(3, 2)


@given(st.integers(min_value=1, max_value=1000), st.sampled_from([3, 5, 7, 11, 13]))
@settings(max_examples=200)
def test_legendre_multiplicative(a, p):
    assert legendre(a * a, p) in (0, 1)
    assert legendre(a, p) * legendre(a, p) == (0 if a % p == 0 else 1)


def test_squarefree_classes_order():
    assert squarefree_classes(7) == [1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7]


def test_witness_sequence_skips_one():
    assert witness_sequence(6) == [-1, 2, -2, 3, -3, 5, -5, 6, -6]


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("10") == Fraction(10)
    with pytest.raises(InputError):
        parse_rational("x")
    with pytest.raises(InputError):
        parse_rational("1/0")
