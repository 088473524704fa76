"""Invariants of quadratic fields computed by elementary exact methods.

Imaginary class numbers are computed twice (reduced-form enumeration and the
Dirichlet character sum) and must agree.  The special value zeta_F(-1) of a
real quadratic field is likewise computed by two independent routes (a divisor
sum over representations of the discriminant, and a weighted character sum).
Real quadratic class data comes from cycles of reduced indefinite forms plus
the fundamental unit, found via continued fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import (
    ExactRational,
    PrimeInput,
    as_integer,
    divisor_sum,
    fundamental_discriminant,
    iroot,
    is_prime,
    kronecker,
)
from .errors import IntegralityError, InvariantViolation, OracleDisagreement

# Defensive bound on continued-fraction expansions; far above any period
# reachable at desk scale.
_MAX_CF_STEPS = 10 ** 6

# Smallest-prime-factor sieve, grown on demand and shared per process.
_SPF: list[int] = [0, 1]


def _smallest_prime_factors(limit: int) -> list[int]:
    global _SPF
    if len(_SPF) > limit:
        return _SPF
    size = max(limit + 1, 2 * len(_SPF))
    spf = list(range(size))
    for i in range(2, isqrt(size - 1) + 1):
        if spf[i] == i:
            for j in range(i * i, size, i):
                if spf[j] == j:
                    spf[j] = i
    _SPF = spf
    return _SPF


def _character_values(disc: int, limit: int) -> list[int]:
    """Values kronecker(disc, a) for a = 0..limit via complete multiplicativity."""
    spf = _smallest_prime_factors(limit)
    chi = [0] * (limit + 1)
    if limit >= 1:
        chi[1] = 1
    prime_vals: dict[int, int] = {}
    for a in range(2, limit + 1):
        q = spf[a]
        v = prime_vals.get(q)
        if v is None:
            v = prime_vals[q] = kronecker(disc, q)
        chi[a] = chi[a // q] * v
    return chi


def _reduced_imaginary_form_count(disc: int) -> int:
    """Number of primitive reduced forms (a, b, c) of discriminant disc < 0.

    Reduction domain: |b| <= a <= c with b >= 0 whenever |b| = a or a = c.
    """
    count = 0
    for a in range(1, isqrt(-disc // 3) + 1):
        four_a = 4 * a
        for b in range(-a, a + 1):
            num = b * b - disc
            if num % four_a:
                continue
            c = num // four_a
            if c < a:
                continue
            if b < 0 and (b == -a or a == c):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                count += 1
    return count


def _dirichlet_class_number(disc: int) -> int:
    """h(disc) from the finite character sum h = w/(2|D|) * |sum chi(a) a|."""
    w = 6 if disc == -3 else 4 if disc == -4 else 2
    n = -disc
    chi = _character_values(disc, n - 1)
    s = 0
    for a in range(1, n):
        s += chi[a] * a
    num = w * abs(s)
    if num % (2 * n):
        raise IntegralityError(f"character sum for disc {disc} is not integral")
    return num // (2 * n)


@lru_cache(maxsize=None)
def class_number_imaginary(d: int) -> int:
    """Class number of Q(sqrt(d)) for square-free d < 0, by two routes."""
    if d >= 0:
        raise ValueError(f"d={d} is not negative")
    disc = fundamental_discriminant(d)
    by_forms = _reduced_imaginary_form_count(disc)
    by_sum = _dirichlet_class_number(disc)
    if by_forms != by_sum:
        raise OracleDisagreement(
            f"h({d}): form count {by_forms} != character sum {by_sum}"
        )
    return by_forms


@dataclass(frozen=True)
class QuadraticUnit:
    """Fundamental unit of the maximal order of Q(sqrt(p)).

    The unit is (t + u*sqrt(p))/2 when ``half`` is set and t + u*sqrt(p)
    otherwise; ``norm`` is its field norm, +1 or -1.
    """

    t: int
    u: int
    half: bool
    norm: int

    def __post_init__(self):
        if self.t < 0 or self.u < 1 or self.norm not in (1, -1):
            raise ValueError("malformed unit")

    def pell_value(self, p: int) -> int:
        """t^2 - p u^2, which must equal 4*norm (half) or norm (integral)."""
        return self.t * self.t - p * self.u * self.u


def _sqrt_continued_fraction_unit(p: int) -> tuple[int, int, int]:
    """Fundamental solution of x^2 - p y^2 = ±1 via the expansion of sqrt(p).

    Returns (x, y, norm) for the fundamental unit x + y*sqrt(p) of Z[sqrt(p)].
    """
    a0 = isqrt(p)
    if a0 * a0 == p:
        raise ValueError(f"p={p} is a perfect square")
    # Convergent numerators/denominators for a_0, a_1, ...
    h_prev, h_curr = 1, a0
    k_prev, k_curr = 0, 1
    m, d, a = 0, 1, a0
    for step in range(1, _MAX_CF_STEPS + 1):
        m = d * a - m
        d = (p - m * m) // d
        if d == 1:
            norm = -1 if step % 2 else 1
            return h_curr, k_curr, norm
        a = (a0 + m) // d
        h_prev, h_curr = h_curr, a * h_curr + h_prev
        k_prev, k_curr = k_curr, a * k_curr + k_prev
    raise RuntimeError(f"continued fraction of sqrt({p}) exceeded {_MAX_CF_STEPS} steps")


@lru_cache(maxsize=None)
def fundamental_unit(p: int) -> QuadraticUnit:
    """Fundamental unit of the ring of integers of Q(sqrt(p)) for prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x, y, norm = _sqrt_continued_fraction_unit(p)
    if p % 4 != 1:
        return QuadraticUnit(x, y, False, norm)
    # The maximal order is Z[(1+sqrt(p))/2]; its fundamental unit eps satisfies
    # eps^w = x + y*sqrt(p) with w in {1, 3}.  A half-integral cube root
    # (t + u*sqrt(p))/2 exists iff t^3 - 3*norm*t = 2x has an odd solution t
    # with (t^2 - 4*norm)/p an odd perfect square.
    target = 2 * x
    r = iroot(target, 3)
    for t in range(max(1, r - 2), r + 3):
        if t * t * t - 3 * norm * t == target:
            usq, rem = divmod(t * t - 4 * norm, p)
            if rem == 0:
                u = isqrt(usq)
                if u * u == usq and t % 2 == 1 and u % 2 == 1:
                    return QuadraticUnit(t, u, True, norm)
            break
    return QuadraticUnit(x, y, False, norm)


def _reduced_indefinite_forms(disc: int) -> list[tuple[int, int, int]]:
    """All reduced forms (a, b, c) of discriminant disc > 0.

    Reduction criterion: 0 < b < sqrt(D) and |sqrt(D) - 2|a|| < b.
    """
    root = isqrt(disc)
    forms = []
    for b in range(1, root + 1):
        if (disc - b * b) % 4:
            continue
        n = (disc - b * b) // 4  # a*c = -n with n > 0
        if n == 0:
            continue
        d = 1
        while d * d <= n:
            if n % d == 0:
                for aa in {d, n // d}:
                    # |sqrt(D) - 2a| < b  <=>  D < (b+2a)^2 and (2a-b)^2 < D
                    if (b + 2 * aa) ** 2 > disc and (2 * aa - b) ** 2 < disc:
                        c = -(n // aa)
                        forms.append((aa, b, c))
                        forms.append((-aa, b, -c))
            d += 1
    return forms


def _rho_step(form: tuple[int, int, int], disc: int, root: int) -> tuple[int, int, int]:
    """Reduction/cycle operator on reduced indefinite forms."""
    _, b, c = form
    step = 2 * abs(c)
    # Largest b' < sqrt(D) with b' = -b (mod 2|c|).
    b_new = root - (root + b) % step
    c_new = (b_new * b_new - disc) // (4 * c)
    return (c, b_new, c_new)


@lru_cache(maxsize=None)
def narrow_class_number(disc: int) -> int:
    """Narrow class number of the real quadratic field of discriminant disc:
    the number of cycles of reduced indefinite forms under the rho operator."""
    forms = _reduced_indefinite_forms(disc)
    root = isqrt(disc)
    remaining = set(forms)
    cycles = 0
    while remaining:
        start = remaining.pop()
        cycles += 1
        form = _rho_step(start, disc, root)
        while form != start:
            remaining.discard(form)
            form = _rho_step(form, disc, root)
    return cycles


@lru_cache(maxsize=None)
def class_number_real(p: int) -> tuple[int, int]:
    """(h, h_plus) for F = Q(sqrt(p)), p prime.

    h_plus counts cycles of reduced indefinite forms of the field
    discriminant; h is derived from h_plus and the norm of the fundamental
    unit (equal when the norm is -1, half of h_plus otherwise).
    """
    disc = fundamental_discriminant(p)
    h_plus = narrow_class_number(disc)
    unit = fundamental_unit(p)
    if unit.norm == -1:
        return h_plus, h_plus
    if h_plus % 2:
        raise OracleDisagreement(
            f"p={p}: unit norm +1 needs an even narrow class number, got {h_plus}"
        )
    return h_plus // 2, h_plus


def unit_index_varpi(p: int) -> int:
    """Index of Z[sqrt(p)]^x inside the full unit group, for p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError(f"varpi undefined for p={p} (requires p = 1 mod 4)")
    varpi = 3 if fundamental_unit(p).half else 1
    if p % 8 == 1 and varpi != 1:
        raise InvariantViolation("varpi-one-mod8", f"p={p} gave varpi={varpi}")
    return varpi


def class_number_order_A(p: int) -> int:
    """Class number of the order Z[sqrt(p)] for p = 1 (mod 4); always odd."""
    if p % 4 != 1:
        raise ValueError(f"h(Z[sqrt(p)]) formula requires p = 1 mod 4, got p={p}")
    h, _ = class_number_real(p)
    value = Fraction((2 - kronecker(2, p)) * h, unit_index_varpi(p))
    h_a = as_integer(value, f"h(Z[sqrt({p})])")
    if h_a <= 0 or h_a % 2 == 0:
        raise IntegralityError(f"h(Z[sqrt({p})]) = {h_a} must be odd and positive")
    return h_a


def _zeta_by_divisor_sums(disc: int) -> Fraction:
    """(1/60) * sum of a over b^2 + 4ac = disc with a, c > 0."""
    total = 0
    b = disc % 2
    while b * b < disc:
        total += divisor_sum((disc - b * b) // 4) * (1 if b == 0 else 2)
        b += 2
    return Fraction(total, 60)


def _zeta_by_character_sum(disc: int) -> Fraction:
    """(1/(24 disc)) * sum of chi(a) a^2 over a = 1..disc."""
    chi = _character_values(disc, disc)
    s = 0
    for a in range(1, disc + 1):
        s += chi[a] * a * a
    return Fraction(s, 24 * disc)


@lru_cache(maxsize=None)
def zeta_F_minus1(p: int) -> Fraction:
    """zeta_F(-1) for F = Q(sqrt(p)), p prime, by two independent routes."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    disc = fundamental_discriminant(p)
    by_divisors = _zeta_by_divisor_sums(disc)
    by_characters = _zeta_by_character_sum(disc)
    if by_divisors != by_characters:
        raise OracleDisagreement(
            f"zeta(-1) at p={p}: divisor route {by_divisors} != "
            f"character route {by_characters}"
        )
    return by_divisors


@dataclass(frozen=True)
class RealQuadraticProfile:
    """All invariants of F = Q(sqrt(p)) and A = Z[sqrt(p)] used by the census."""

    p: PrimeInput
    d_F: int
    unit: QuadraticUnit
    h: int
    h_plus: int
    varpi: int | None
    h_A: int | None
    zeta_minus1: ExactRational


@lru_cache(maxsize=None)
def quadratic_profile(p: int) -> RealQuadraticProfile:
    """Assemble and cross-validate the full invariant profile of Q(sqrt(p))."""
    prime = PrimeInput.from_int(p)
    d_f = fundamental_discriminant(p)
    unit = fundamental_unit(p)
    expected = 4 * unit.norm if unit.half else unit.norm
    if unit.pell_value(p) != expected:
        raise InvariantViolation("unit-pell", f"p={p}, unit={unit}")
    if (unit.norm == -1) != (p % 4 != 3):
        raise InvariantViolation("unit-norm-residue", f"p={p}, norm={unit.norm}")
    h, h_plus = class_number_real(p)
    varpi = unit_index_varpi(p) if p % 4 == 1 else None
    h_a = class_number_order_A(p) if p % 4 == 1 else None
    zeta = zeta_F_minus1(p)
    if zeta <= 0 or (60 * d_f * zeta).denominator != 1:
        raise InvariantViolation("zeta-integrality", f"p={p}, zeta={zeta}")
    return RealQuadraticProfile(prime, d_f, unit, h, h_plus, varpi, h_a, zeta)


def clear_caches() -> None:
    """Drop all memoized quadratic invariants (used by fault-injection tests)."""
    class_number_imaginary.cache_clear()
    fundamental_unit.cache_clear()
    narrow_class_number.cache_clear()
    class_number_real.cache_clear()
    zeta_F_minus1.cache_clear()
    quadratic_profile.cache_clear()
