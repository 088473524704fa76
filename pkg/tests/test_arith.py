"""Core arithmetic: Kronecker symbols, discriminants, primality, rationals."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spcensus.arith import (
    PrimeInput,
    as_integer,
    divisor_sum,
    fundamental_discriminant,
    iroot,
    is_prime,
    is_squarefree,
    kronecker,
)
from spcensus.errors import IntegralityError


def brute_force_legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def test_kronecker_examples():
    assert kronecker(2, 7) == 1
    assert kronecker(-4, 11) == -1
    for a in (-17, -1, 0, 1, 5, 100):
        assert kronecker(a, 1) == 1


def test_kronecker_matches_quadratic_residues_for_odd_primes():
    for p in range(3, 500):
        if not is_prime(p):
            continue
        for a in range(-2 * p, 2 * p + 1):
            assert kronecker(a, p) == brute_force_legendre(a, p), (a, p)


def test_kronecker_conventions_at_zero_and_two():
    assert kronecker(1, 0) == 1
    assert kronecker(-1, 0) == 1
    assert kronecker(5, 0) == 0
    assert kronecker(4, 2) == 0
    assert kronecker(7, 2) == 1
    assert kronecker(3, 2) == -1
    assert kronecker(-3, 2) == -1  # -3 = 5 (mod 8)


@given(st.integers(-300, 300), st.integers(-300, 300), st.integers(1, 300))
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-300, 300), st.integers(1, 200), st.integers(1, 200))
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_fundamental_discriminant_examples():
    assert fundamental_discriminant(5) == 5
    assert fundamental_discriminant(-7) == -7
    assert fundamental_discriminant(-13) == -52
    assert fundamental_discriminant(2) == 8
    assert fundamental_discriminant(-1) == -4


def test_fundamental_discriminant_always_0_or_1_mod_4():
    for d in range(-200, 200):
        if d in (0, 1) or not is_squarefree(d):
            continue
        assert fundamental_discriminant(d) % 4 in (0, 1)


def test_fundamental_discriminant_rejects_bad_input():
    for d in (0, 1, 4, -4, 12, 50, -75):
        with pytest.raises(ValueError):
            fundamental_discriminant(d)


def test_is_prime_examples():
    assert is_prime(2)
    assert not is_prime(1)
    assert not is_prime(0)
    assert is_prime(7919)


def test_is_prime_matches_trial_division():
    def trial(n):
        if n < 2:
            return False
        d = 2
        while d * d <= n:
            if n % d == 0:
                return False
            d += 1
        return True

    for n in range(0, 5000):
        assert is_prime(n) == trial(n), n
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(2 ** 61 + 1)


def test_iroot_and_divisor_sum():
    for n in (0, 1, 7, 26, 27, 28, 10 ** 12):
        for k in (1, 2, 3, 5):
            r = iroot(n, k)
            assert r ** k <= n < (r + 1) ** k
    assert divisor_sum(1) == 1
    assert divisor_sum(12) == 28
    assert divisor_sum(19) == 20


rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=999
)


@given(rationals, rationals, rationals)
def test_exact_rational_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


@given(rationals)
def test_exact_rational_normalization(x):
    from math import gcd

    assert x.denominator >= 1
    assert gcd(abs(x.numerator), x.denominator) == 1
    assert Fraction(x.numerator, x.denominator) == x


def test_as_integer():
    assert as_integer(Fraction(6, 2)) == 3
    assert as_integer(5) == 5
    with pytest.raises(IntegralityError):
        as_integer(Fraction(1, 3))


def test_prime_input():
    pi = PrimeInput.from_int(13)
    assert (pi.residue_mod4, pi.residue_mod8) == (1, 5)
    assert PrimeInput.from_int(2).residue_mod4 == 2
    with pytest.raises(ValueError):
        PrimeInput.from_int(15)
    with pytest.raises(ValueError):
        PrimeInput(13, 3, 5)
