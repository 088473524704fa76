"""Closed-form census of polarized superspecial abelian surfaces attached to
the real Weil numbers ±sqrt(q): class numbers, type numbers, refined counts
per automorphism group, polarization-module strata and exact masses.

All formulas are evaluated in exact rational arithmetic from the quadratic
field invariants supplied by :mod:`spcensus.quadratic`; every result is
checked for integrality and nonnegativity before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from . import quadratic
from .arith import ExactRational, PrimeInput, as_integer, kronecker
from .errors import IntegralityError, InvariantViolation

_GROUP_ORDERS = {
    "C1": 1, "C2": 2, "C3": 3, "C4": 4, "C6": 6,
    "D2": 4, "D3": 6, "D4": 8, "D12": 24,
    "Q8": 8, "Q12": 12, "Q24": 24,
    "A4": 12, "S4": 24,
    "E24": 24, "E48": 48, "E120": 120,
}

_DECORATION_MARKS = {"": "", "dagger": "†", "ddagger": "‡"}


@dataclass(frozen=True, order=True)
class GroupTag:
    """A finite (reduced) automorphism group: cyclic, dihedral, dicyclic,
    or one of the binary polyhedral groups E24/E48/E120."""

    name: str
    decoration: str = ""

    def __post_init__(self):
        if self.name not in _GROUP_ORDERS:
            raise ValueError(f"unknown group {self.name!r}")
        if self.decoration not in _DECORATION_MARKS:
            raise ValueError(f"unknown decoration {self.decoration!r}")
        if self.decoration and self.name not in ("C2", "D3"):
            raise ValueError(f"decoration not allowed on {self.name}")

    @property
    def order(self) -> int:
        return _GROUP_ORDERS[self.name]

    @property
    def label(self) -> str:
        return self.name + _DECORATION_MARKS[self.decoration]


C1 = GroupTag("C1")
C2 = GroupTag("C2")
C3 = GroupTag("C3")
C4 = GroupTag("C4")
C6 = GroupTag("C6")
D2 = GroupTag("D2")
D3 = GroupTag("D3")
D4 = GroupTag("D4")
D12 = GroupTag("D12")
Q8 = GroupTag("Q8")
Q12 = GroupTag("Q12")
Q24 = GroupTag("Q24")
A4 = GroupTag("A4")
S4 = GroupTag("S4")
E24 = GroupTag("E24")
E48 = GroupTag("E48")
E120 = GroupTag("E120")
C2_DAGGER = GroupTag("C2", "dagger")
C2_DDAGGER = GroupTag("C2", "ddagger")
D3_DAGGER = GroupTag("D3", "dagger")
D3_DDAGGER = GroupTag("D3", "ddagger")


class RefinedTable(dict):
    """Mapping GroupTag -> nonnegative integer count.

    Construction converts exact rationals to integers and rejects negative
    entries, so a transcription error in any formula fails loudly.
    """

    def __init__(self, entries):
        cleaned = {}
        for tag, value in dict(entries).items():
            if not isinstance(tag, GroupTag):
                raise TypeError(f"refined-table key {tag!r} is not a GroupTag")
            count = as_integer(value, f"refined count for {tag.label}")
            if count < 0:
                raise ValueError(f"negative refined count {count} for {tag.label}")
            if count:
                cleaned[tag] = count
        super().__init__(sorted(cleaned.items()))

    def total(self) -> int:
        return sum(self.values())

    def mass(self) -> Fraction:
        return sum((Fraction(n, tag.order) for tag, n in self.items()), Fraction(0))

    def nonzero(self) -> dict[GroupTag, int]:
        return {tag: n for tag, n in self.items() if n}


class GaussGenus(Enum):
    """Coset of squares in the narrow class group: a two-element group when
    p = 3 (mod 4), trivial otherwise."""

    PRINCIPAL = "principal"
    NONPRINCIPAL = "nonprincipal"
    UNIQUE = "unique"


@dataclass(frozen=True)
class GenusLabel:
    """Stratum label r in {1, 8, 16}; r > 1 exists only for p = 1 (mod 4)."""

    r: int

    def __post_init__(self):
        if self.r not in (1, 8, 16):
            raise ValueError(f"invalid stratum r={self.r}")

    @property
    def base_ring(self) -> str:
        return "suborder" if self.r == 16 else "maximal"


class PolModTriple(NamedTuple):
    h_pm: int
    h_un: int
    t: int


class EllipticBaseline(NamedTuple):
    h: int
    t: int
    refined: RefinedTable


@dataclass(frozen=True)
class CensusReport:
    """Every census quantity for one prime, cross-validated on construction."""

    p: PrimeInput
    profile: quadratic.RealQuadraticProfile
    h_pp: int
    t_pp: int
    refined_pp: RefinedTable
    lambda1_pp: int | None
    lambda16_pp: int | None
    pol_mod: dict[tuple[int, GaussGenus], PolModTriple]
    masses: dict[str, ExactRational]
    elliptic: EllipticBaseline


def legal_genera(p: int) -> tuple[GaussGenus, ...]:
    if p % 4 == 3:
        return (GaussGenus.PRINCIPAL, GaussGenus.NONPRINCIPAL)
    return (GaussGenus.UNIQUE,)


def legal_strata(p: int) -> tuple[int, ...]:
    return (1, 8, 16) if p % 4 == 1 else (1,)


def _check_prime(p: int) -> None:
    if not quadratic.is_prime(p):
        raise ValueError(f"{p} is not prime")


def _check_combo(p: int, r: int, genus: GaussGenus) -> None:
    _check_prime(p)
    GenusLabel(r)
    if r in (8, 16) and p % 4 != 1:
        raise ValueError(f"stratum r={r} requires p = 1 (mod 4), got p={p}")
    if genus not in legal_genera(p):
        raise ValueError(f"Gauss genus {genus.value} is illegal for p={p}")


class _Symbols(NamedTuple):
    """Shared formula ingredients for one prime."""

    z: Fraction  # zeta_F(-1)
    s2: int      # (2/p)
    s3: int      # (p/3)
    h1: int      # h(-p)
    h3: int      # h(-3p)


def _symbols(p: int) -> _Symbols:
    return _Symbols(
        z=quadratic.zeta_F_minus1(p),
        s2=kronecker(2, p),
        s3=kronecker(p, 3),
        h1=quadratic.class_number_imaginary(-p),
        h3=quadratic.class_number_imaginary(-3 * p),
    )


def ppav_class_number(p: int) -> int:
    """Number of principally polarized classes in the census at p."""
    _check_prime(p)
    if p in (2, 3, 5):
        return {2: 1, 3: 1, 5: 2}[p]
    z, s2, _, h1, h3 = _symbols(p)
    if p % 4 == 1:
        value = (9 - 2 * s2) * z / 2 + Fraction(3 * h1, 8) + (3 + s2) * Fraction(h3, 6)
    else:
        value = z / 2 + (11 - 3 * s2) * Fraction(h1, 8) + Fraction(h3, 6)
    n = as_integer(value, f"h_pp({p})")
    if n < 0:
        raise IntegralityError(f"h_pp({p}) = {n} is negative")
    return n


def ppav_type_number(p: int) -> int:
    """Number of endomorphism rings up to isomorphism among those classes.

    For p = 1 (mod 4) the two strata are in bijection with their type sets,
    so the type number equals the class number; see
    :func:`ppav_type_number_variant` for the alternative closed form kept
    for diagnostics.
    """
    _check_prime(p)
    if p in (2, 3, 5):
        return {2: 1, 3: 1, 5: 2}[p]
    if p % 4 == 1:
        lam1, lam16 = lambda_pp_strata(p)
        return lam1 + lam16
    z, s2, _, h1, h3 = _symbols(p)
    h2 = quadratic.class_number_imaginary(-2 * p)
    value = z / 4 + (17 - s2) * Fraction(h1, 16) + Fraction(h2, 8) + Fraction(h3, 12)
    n = as_integer(value, f"t_pp({p})")
    if n < 0:
        raise IntegralityError(f"t_pp({p}) = {n} is negative")
    return n


def ppav_type_number_variant(p: int) -> Fraction:
    """Diagnostic only: the alternative type-number expression for
    p = 1 (mod 4), p >= 13.  It double-counts across strata (e.g. it gives 5
    at p = 13 where the type number is 3) and is exposed so the discrepancy
    stays visible."""
    if p % 4 != 1 or p < 13:
        raise ValueError("variant formula applies only to p = 1 (mod 4), p >= 13")
    z, _, _, h1, h3 = _symbols(p)
    return 8 * z + Fraction(h1, 2) + Fraction(2 * h3, 3)


def lambda_pp_strata(p: int) -> tuple[int, int]:
    """Sizes of the two principally polarized strata for p = 1 (mod 4):
    classes with maximal-order real multiplication and those with
    multiplication by Z[sqrt(p)]."""
    if p % 4 != 1:
        raise ValueError(f"strata split requires p = 1 (mod 4), got p={p}")
    z, s2, _, h1, h3 = _symbols(p)
    if p == 5:
        lam1 = 1
    else:
        lam1 = as_integer(z / 2 + Fraction(h1, 8) + Fraction(h3, 6), f"lambda1({p})")
    lam16 = as_integer(
        (4 - s2) * z + Fraction(h1, 4) + (2 + s2) * Fraction(h3, 6), f"lambda16({p})"
    )
    if lam1 < 0 or lam16 < 0:
        raise IntegralityError(f"negative stratum size at p={p}")
    if lam1 + lam16 != ppav_class_number(p):
        raise InvariantViolation(
            "strata-sum", f"p={p}: {lam1}+{lam16} != {ppav_class_number(p)}"
        )
    return lam1, lam16


def ppav_refined(p: int) -> RefinedTable:
    """Refined class numbers of the principally polarized census by
    automorphism group."""
    _check_prime(p)
    if p == 2:
        return RefinedTable({E48: 1})
    if p == 3:
        return RefinedTable({Q24: 1})
    if p == 5:
        return RefinedTable({E120: 1, Q12: 1})
    z, s2, s3, h1, h3 = _symbols(p)
    half = Fraction(1, 2)
    if p % 4 == 1:
        return RefinedTable({
            C2: (9 - 2 * s2) * z / 2 - Fraction(3 * h1, 8)
                - (3 + s2) * Fraction(h3, 12)
                - Fraction(s2, 4) - Fraction(s3, 2) + Fraction(3, 4),
            C4: Fraction(3 * h1, 4) + Fraction(s2, 4) + s3 - Fraction(5, 4),
            C6: (3 + s2) * Fraction(h3, 4) + Fraction(s2, 2) + Fraction(s3, 2) - 1,
            Q12: 1 - s3,
            E24: half * (1 - s2),
        })
    return RefinedTable({
        C2: z / 2 - (11 - 3 * s2) * Fraction(h1, 8) - Fraction(h3, 12)
            + Fraction(s2, 4) - Fraction(s3, 2) + Fraction(5, 4),
        C4: (Fraction(11, 4) - Fraction(3 * s2, 4)) * (h1 - 1) - s2 + s3,
        C6: Fraction(h3, 4) - Fraction(s2, 2) + Fraction(s3, 2) - 1,
        Q8: 1,
        Q12: 1 - s3,
        E24: half * (1 + s2),
    })


def pol_mod_numbers(p: int, r: int, genus: GaussGenus) -> PolModTriple:
    """Class number, bare-surface class number and type number of the
    (P, P_+)-polarized stratum labelled by r and the Gauss genus."""
    _check_combo(p, r, genus)
    if r == 1:
        if p in (2, 3, 5):
            return PolModTriple(1, 1, 1)
        z, s2, _, h1, h3 = _symbols(p)
        if p % 4 == 1:
            v = as_integer(
                z / 2 + Fraction(h1, 8) + Fraction(h3, 6), f"h_1^pm({p})"
            )
            return PolModTriple(v, v, v)
        h2 = quadratic.class_number_imaginary(-2 * p)
        if genus is GaussGenus.PRINCIPAL:
            h_pm = z / 2 + (11 - 3 * s2) * Fraction(h1, 8) + Fraction(h3, 6)
            h_un = (z / 4 + (17 - s2) * Fraction(h1, 16)
                    + Fraction(h2, 8) + Fraction(h3, 12))
        else:
            h_pm = z / 2 + 3 * (1 - s2) * Fraction(h1, 8) + Fraction(h3, 6)
            h_un = (z / 4 + 9 * (1 - s2) * Fraction(h1, 16)
                    + Fraction(h2, 8) + Fraction(h3, 12))
        a = as_integer(h_pm, f"h_1^pm({p}, {genus.value})")
        b = as_integer(h_un, f"h_1^un({p}, {genus.value})")
        return PolModTriple(a, b, b)
    z, s2, _, h1, h3 = _symbols(p)
    if r == 8:
        varpi = quadratic.unit_index_varpi(p)
        delta = 1 if varpi == 3 else 0
        h_pm = Fraction(3, 2) * (4 - s2) * z + (2 - s2) * Fraction(h1, 8)
        h_un = (Fraction(3, 2 * varpi) * (4 - s2) * z
                + (2 - s2) * Fraction(h1, 8 * varpi)
                + Fraction(delta, varpi) * h3)
        t = (Fraction(1, 2) * (7 + 2 * s2) * z + Fraction(h1, 8)
             + (1 - s2) * Fraction(h3, 6))
        return PolModTriple(
            as_integer(h_pm, f"h_8^pm({p})"),
            as_integer(h_un, f"h_8^un({p})"),
            as_integer(t, f"t_8({p})"),
        )
    # r == 16
    v = as_integer(
        (4 - s2) * z + Fraction(h1, 4) + (2 + s2) * Fraction(h3, 6), f"h_16^pm({p})"
    )
    return PolModTriple(v, v, v)


def mass_values(p: int) -> dict[str, ExactRational]:
    """Exact masses of every stratum, plus the total principally polarized
    mass under the key ``ppsp``."""
    _check_prime(p)
    z = quadratic.zeta_F_minus1(p)
    masses: dict[str, ExactRational] = {"pm_1": z / 4}
    if p % 4 == 1:
        s2 = kronecker(2, p)
        varpi = quadratic.unit_index_varpi(p)
        masses["pm_8"] = Fraction(3, 4) * (4 - s2) * z
        masses["pm_16"] = Fraction(1, 2) * (4 - s2) * z
        masses["un_1"] = z / 2
        masses["un_8"] = Fraction(3, 2 * varpi) * (4 - s2) * z
        masses["un_16"] = (4 - s2) * z
        masses["ppsp"] = (9 - 2 * s2) * z / 4
    else:
        masses["un_1"] = z / 4 if p % 4 == 3 else z / 2
        masses["ppsp"] = z / 4
    return masses


def _refined_r1_p1mod4(p: int) -> tuple[RefinedTable, RefinedTable]:
    z, s2, s3, h1, h3 = _symbols(p)
    a = (z / 2 - Fraction(h1, 8) - Fraction(h3, 12)
         - Fraction(s3, 4) - Fraction(s2, 4) + Fraction(1, 2))
    b = Fraction(h1, 4) + Fraction(s3, 2) + Fraction(s2, 4) - Fraction(3, 4)
    c = Fraction(h3, 4) + Fraction(s3, 4) + Fraction(s2, 2) - Fraction(3, 4)
    d = Fraction(1 - s3, 2)
    e = Fraction(1 - s2, 2)
    h_pm = RefinedTable({C2: a, C4: b, C6: c, Q12: d, E24: e})
    h_un = RefinedTable({C1: a, C2_DAGGER: b, C3: c, D3_DAGGER: d, A4: e})
    return h_pm, h_un


def _refined_r1_principal(p: int) -> tuple[RefinedTable, RefinedTable]:
    z, s2, s3, h1, h3 = _symbols(p)
    h2 = quadratic.class_number_imaginary(-2 * p)
    h_pm = RefinedTable({
        C2: z / 2 - (11 - 3 * s2) * Fraction(h1, 8) - Fraction(h3, 12)
            + Fraction(s2, 4) - Fraction(s3, 2) + Fraction(5, 4),
        C4: (Fraction(11, 4) - Fraction(3 * s2, 4)) * (h1 - 1) - s2 + s3,
        C6: Fraction(h3, 4) - Fraction(s2, 2) + Fraction(s3, 2) - 1,
        Q8: 1,
        Q12: 1 - s3,
        E24: Fraction(1 + s2, 2),
    })
    h_un = RefinedTable({
        C1: z / 4 - (11 - 3 * s2) * Fraction(h1, 16) - Fraction(h2, 8)
            - Fraction(h3, 24) + Fraction((1 + s2) * (1 - s3), 8) + 1,
        C2_DAGGER: (2 - s2) * Fraction(h1, 2) + Fraction(s3, 2) - 1,
        C2_DDAGGER: Fraction(h2, 4) - s3 * Fraction(1 - s2, 4) - 1,
        C3: Fraction(h3, 8) - Fraction((1 + s2) * (1 - s3), 8) - Fraction(1, 2),
        C4: (3 + s2) * Fraction(h1 - 1, 4),
        D3_DAGGER: Fraction(1 - s3, 2),
        D3_DDAGGER: Fraction((1 + s3) * (1 - s2), 4),
        D4: 1,
        S4: Fraction(1 + s2, 2),
    })
    return h_pm, h_un


def _refined_r1_nonprincipal(p: int) -> tuple[RefinedTable, RefinedTable]:
    z, s2, s3, h1, h3 = _symbols(p)
    h2 = quadratic.class_number_imaginary(-2 * p)
    h_pm = RefinedTable({
        C2: z / 2 - 3 * (1 - s2) * Fraction(h1, 8) - Fraction(h3, 12)
            + Fraction(1 - s2, 4),
        C4: 3 * (1 - s2) * Fraction(h1, 4) - Fraction(1 - s2, 4),
        C6: Fraction(h3, 4) + Fraction(s2, 2) - Fraction(1, 2),
        Q8: 0,
        Q12: 0,
        E24: Fraction(1 - s2, 2),
    })
    h_un = RefinedTable({
        C1: z / 4 - 3 * (1 - s2) * Fraction(h1, 16) - Fraction(h2, 8)
            - Fraction(h3, 24) - Fraction((1 + s2) * (1 - s3), 8) + Fraction(1, 2),
        C2_DAGGER: 0,
        C2_DDAGGER: Fraction(h2, 4) - s3 * Fraction(1 + s2, 4) - Fraction(1, 2),
        C3: Fraction(h3, 8) + Fraction((1 + s2) * (1 - s3), 8) - Fraction(1, 2),
        C4: (1 - s2) * Fraction(3 * h1 - 1, 4),
        D3_DAGGER: 0,
        D3_DDAGGER: Fraction((1 + s3) * (1 + s2), 4),
        D4: 0,
        S4: Fraction(1 - s2, 2),
    })
    return h_pm, h_un


def _refined_r16(p: int) -> tuple[RefinedTable, RefinedTable]:
    z, s2, s3, h1, h3 = _symbols(p)
    w1 = ((4 - s2) * z - Fraction(h1, 4) - (2 + s2) * Fraction(h3, 12)
          + Fraction(1 - s3, 4))
    w2 = Fraction(h1, 2) + Fraction(s3 - 1, 2)
    w3 = (2 + s2) * Fraction(h3, 4) + Fraction(s3 - 1, 4)
    w4 = Fraction(1 - s3, 2)
    h_pm = RefinedTable({C2: w1, C4: w2, C6: w3, Q12: w4})
    h_un = RefinedTable({C1: w1, C2: w2, C3: w3, D3: w4, D2: 0, A4: 0})
    return h_pm, h_un


def refined_pol_mod(p: int, r: int, genus: GaussGenus) -> tuple[RefinedTable, RefinedTable]:
    """Refined class numbers of one polarization-module stratum: counts by
    automorphism group of the polarized classes (first table) and by reduced
    automorphism group of the bare surfaces (second table).

    Only r = 1 (for p > 5) and r = 16 (for p = 1 mod 4) carry refined tables;
    r = 8 is rejected.
    """
    _check_combo(p, r, genus)
    if r == 8:
        raise ValueError("no refined tables for the r=8 stratum")
    if r == 16:
        return _refined_r16(p)
    if p <= 5:
        raise ValueError(f"refined r=1 tables require p > 5, got p={p}")
    if p % 4 == 1:
        return _refined_r1_p1mod4(p)
    if genus is GaussGenus.PRINCIPAL:
        return _refined_r1_principal(p)
    return _refined_r1_nonprincipal(p)


def elliptic_baseline(p: int) -> EllipticBaseline:
    """Census of supersingular elliptic curve classes for even-power Weil
    numbers ±p^(n/2): class number, type number and refined counts."""
    _check_prime(p)
    k4 = kronecker(-4, p)
    k3 = kronecker(-3, p)
    h = as_integer(
        Fraction(p - 1, 12) + Fraction(1 - k4, 4) + Fraction(1 - k3, 3),
        f"elliptic h({p})",
    )
    if p in (2, 3):
        t = 1
        refined = RefinedTable({E24: 1} if p == 2 else {Q12: 1})
    else:
        h1 = quadratic.class_number_imaginary(-p)
        bracket = Fraction(1, 2) + Fraction((1 - k4) * (2 - kronecker(2, p)), 4)
        t = as_integer((h + bracket * h1) / 2, f"elliptic t({p})")
        refined = RefinedTable({
            C2: Fraction(p - 1, 12) - Fraction(1 - k4, 4) - Fraction(1 - k3, 6),
            C4: Fraction(1 - k4, 2),
            C6: Fraction(1 - k3, 2),
        })
    if refined.total() != h:
        raise InvariantViolation("elliptic-sum", f"p={p}")
    if refined.mass() != Fraction(p - 1, 24):
        raise InvariantViolation("elliptic-mass", f"p={p}")
    if t > h or t < 1:
        raise InvariantViolation("elliptic-type", f"p={p}: t={t}, h={h}")
    return EllipticBaseline(h, t, refined)


def census(p: int) -> CensusReport:
    """Full census report for one prime, with every report invariant checked
    before returning."""
    _check_prime(p)
    profile = quadratic.quadratic_profile(p)
    h_pp = ppav_class_number(p)
    t_pp = ppav_type_number(p)
    refined = ppav_refined(p)
    if p % 4 == 1:
        lam1, lam16 = lambda_pp_strata(p)
    elif p == 2:
        lam1, lam16 = h_pp, None
    else:
        lam1 = lam16 = None
    pol_mod = {
        (r, genus): pol_mod_numbers(p, r, genus)
        for r in legal_strata(p)
        for genus in legal_genera(p)
    }
    masses = mass_values(p)
    elliptic = elliptic_baseline(p)

    if refined.total() != h_pp:
        raise InvariantViolation(
            "refined-sum", f"p={p}: {refined.total()} != h_pp={h_pp}"
        )
    if refined.mass() != masses["ppsp"]:
        raise InvariantViolation(
            "refined-mass", f"p={p}: {refined.mass()} != {masses['ppsp']}"
        )
    if t_pp > h_pp:
        raise InvariantViolation("type-le-class", f"p={p}: t_pp={t_pp} > h_pp={h_pp}")
    if lam1 is not None and lam16 is not None and lam1 + lam16 != h_pp:
        raise InvariantViolation("strata-sum", f"p={p}")
    for (r, genus), triple in pol_mod.items():
        if not triple.h_pm >= triple.h_un >= triple.t >= 0:
            raise InvariantViolation(
                "pol-mod-order", f"p={p}, r={r}, {genus.value}: {triple}"
            )
    return CensusReport(
        p=profile.p,
        profile=profile,
        h_pp=h_pp,
        t_pp=t_pp,
        refined_pp=refined,
        lambda1_pp=lam1,
        lambda16_pp=lam16,
        pol_mod=pol_mod,
        masses=masses,
        elliptic=elliptic,
    )
