"""Exact integer arithmetic primitives: primality, Kronecker symbols,
fundamental discriminants and arbitrary-precision rationals.

Every quantity downstream is an exact rational, so this module deliberately
exposes nothing float-valued.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import IntegralityError

# Carrier for all rational-valued quantities (zeta values, masses, formula
# intermediates).  ``Fraction`` already maintains the invariants we need:
# gcd(|numerator|, denominator) = 1 and denominator >= 1.
ExactRational = Fraction

# Deterministic Miller-Rabin witnesses, correct for all n < 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**64 (and well beyond)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extended to all integers.

    Conventions: (a/0) = 1 iff a = ±1 else 0; (a/-1) = -1 iff a < 0;
    (a/2) = 0 for even a and ±1 according to a mod 8.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # n odd and positive: plain Jacobi symbol from here on.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_squarefree(d: int) -> bool:
    """True iff no square of a prime divides d (d != 0)."""
    if d == 0:
        return False
    d = abs(d)
    if d % 4 == 0:
        return False
    q = 3
    while q * q <= d:
        if d % (q * q) == 0:
            return False
        while d % q == 0:
            d //= q
        q += 2
    return True


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for a square-free integer d != 0, 1.

    Returns d itself when d = 1 (mod 4) and 4d otherwise.
    """
    if d in (0, 1):
        raise ValueError(f"no quadratic field for d={d}")
    if not is_squarefree(d):
        raise ValueError(f"d={d} is not square-free")
    return d if d % 4 == 1 else 4 * d


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0 or k < 1:
        raise ValueError("iroot requires n >= 0 and k >= 1")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x


def divisor_sum(n: int) -> int:
    """Sum of the positive divisors of n >= 1."""
    if n < 1:
        raise ValueError("divisor_sum requires n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
        d += 1
    return total


def as_integer(x: Fraction | int, what: str = "value") -> int:
    """Convert an exact rational known to be integral, or raise."""
    if isinstance(x, int):
        return x
    if x.denominator != 1:
        raise IntegralityError(f"{what} = {x} is not an integer")
    return x.numerator


@dataclass(frozen=True)
class PrimeInput:
    """A verified prime together with its residues mod 4 and mod 8."""

    p: int
    residue_mod4: int
    residue_mod8: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.residue_mod4 != self.p % 4 or self.residue_mod8 != self.p % 8:
            raise ValueError(f"inconsistent residues for p={self.p}")

    @classmethod
    def from_int(cls, p: int) -> "PrimeInput":
        return cls(p, p % 4, p % 8)
