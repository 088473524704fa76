"""Census formulas against golden values and independently derived ones."""

from fractions import Fraction

import pytest

from spcensus import formulas as cf
from spcensus.errors import InvariantViolation
from spcensus.formulas import (
    GaussGenus,
    GroupTag,
    RefinedTable,
    census,
    elliptic_baseline,
    lambda_pp_strata,
    mass_values,
    pol_mod_numbers,
    ppav_class_number,
    ppav_refined,
    ppav_type_number,
    ppav_type_number_variant,
    refined_pol_mod,
)

UNIQ = GaussGenus.UNIQUE
PRIN = GaussGenus.PRINCIPAL
NONP = GaussGenus.NONPRINCIPAL


def test_group_tag_orders():
    assert cf.C2.order == 2
    assert cf.Q8.order == 8
    assert cf.Q12.order == 12
    assert cf.Q24.order == 24
    assert cf.D4.order == 8
    assert cf.D12.order == 24
    assert cf.A4.order == 12
    assert cf.S4.order == 24
    assert cf.E24.order == 24
    assert cf.E48.order == 48
    assert cf.E120.order == 120
    assert cf.C2_DAGGER.label == "C2†"
    with pytest.raises(ValueError):
        GroupTag("C5")
    with pytest.raises(ValueError):
        GroupTag("C4", "dagger")


def test_refined_table_validation():
    table = RefinedTable({cf.Q8: 1, cf.E24: Fraction(2, 2), cf.C2: 0})
    assert table == {cf.Q8: 1, cf.E24: 1}
    assert table.total() == 2
    assert table.mass() == Fraction(1, 8) + Fraction(1, 24)
    with pytest.raises(ValueError):
        RefinedTable({cf.Q8: -1})


def test_class_number_golden_small_primes():
    assert ppav_class_number(2) == 1
    assert ppav_class_number(3) == 1
    assert ppav_class_number(5) == 2


def test_class_number_derived():
    assert ppav_class_number(7) == 2
    assert ppav_class_number(11) == 3
    assert ppav_class_number(13) == 3
    assert ppav_class_number(17) == 4
    assert ppav_class_number(19) == 4
    assert ppav_class_number(29) == 7


def test_type_number_golden_and_derived():
    assert ppav_type_number(2) == 1
    assert ppav_type_number(3) == 1
    assert ppav_type_number(5) == 2
    assert ppav_type_number(7) == 2
    assert ppav_type_number(11) == 2
    assert ppav_type_number(13) == 3
    assert ppav_type_number(19) == 3


def test_type_number_variant_diagnostic():
    # The alternative closed form overcounts: 5 at p = 13 against the
    # actual type number 3.
    assert ppav_type_number_variant(13) == 5
    assert ppav_type_number(13) == 3
    with pytest.raises(ValueError):
        ppav_type_number_variant(7)
    with pytest.raises(ValueError):
        ppav_type_number_variant(5)


def test_lambda_strata():
    assert lambda_pp_strata(5) == (1, 1)
    assert lambda_pp_strata(13) == (1, 2)
    assert lambda_pp_strata(17) == (1, 3)
    assert lambda_pp_strata(29) == (2, 5)
    with pytest.raises(ValueError):
        lambda_pp_strata(7)


def test_refined_golden_small_primes():
    assert ppav_refined(2) == {cf.E48: 1}
    assert ppav_refined(3) == {cf.Q24: 1}
    assert ppav_refined(5) == {cf.E120: 1, cf.Q12: 1}


def test_refined_derived():
    assert ppav_refined(7) == {cf.Q8: 1, cf.E24: 1}
    assert ppav_refined(11) == {cf.Q8: 1, cf.Q12: 2}
    assert ppav_refined(13) == {cf.C4: 1, cf.C6: 1, cf.E24: 1}
    assert ppav_refined(17) == {cf.C4: 1, cf.C6: 1, cf.Q12: 2}
    assert ppav_refined(29) == {
        cf.C2: 1, cf.C4: 2, cf.C6: 1, cf.Q12: 2, cf.E24: 1,
    }


def test_pol_mod_golden_and_derived():
    for p in (2, 3, 5):
        for genus in cf.legal_genera(p):
            assert pol_mod_numbers(p, 1, genus) == (1, 1, 1)
    assert pol_mod_numbers(5, 8, UNIQ) == (1, 1, 1)
    assert pol_mod_numbers(5, 16, UNIQ) == (1, 1, 1)
    assert pol_mod_numbers(7, 1, PRIN) == (2, 2, 2)
    assert pol_mod_numbers(7, 1, NONP) == (1, 1, 1)
    assert pol_mod_numbers(19, 1, NONP) == (3, 3, 3)
    assert pol_mod_numbers(13, 8, UNIQ) == (2, 2, 2)
    assert pol_mod_numbers(29, 8, UNIQ) == (6, 4, 4)


def test_pol_mod_rejects_illegal_combinations():
    with pytest.raises(ValueError):
        pol_mod_numbers(7, 8, UNIQ)       # r=8 needs p = 1 (mod 4)
    with pytest.raises(ValueError):
        pol_mod_numbers(7, 1, UNIQ)       # p = 3 (mod 4) has two genera
    with pytest.raises(ValueError):
        pol_mod_numbers(13, 1, PRIN)      # trivial genus group
    with pytest.raises(ValueError):
        pol_mod_numbers(2, 16, UNIQ)
    with pytest.raises(ValueError):
        pol_mod_numbers(13, 9, UNIQ)


def test_mass_values():
    assert mass_values(5)["pm_8"] == Fraction(1, 8)
    assert mass_values(7)["ppsp"] == Fraction(1, 6)
    assert mass_values(2)["ppsp"] == Fraction(1, 48)
    assert mass_values(5)["ppsp"] == Fraction(11, 120)
    assert mass_values(13) == {
        "pm_1": Fraction(1, 24), "pm_8": Fraction(5, 8),
        "pm_16": Fraction(5, 12), "un_1": Fraction(1, 12),
        "un_8": Fraction(5, 12), "un_16": Fraction(5, 6),
        "ppsp": Fraction(11, 24),
    }
    assert "pm_8" not in mass_values(7)


def test_refined_pol_mod_r16():
    pm, un = refined_pol_mod(5, 16, UNIQ)
    assert pm == {cf.Q12: 1}
    assert un == {cf.D3: 1}
    pm13, un13 = refined_pol_mod(13, 16, UNIQ)
    assert pm13 == {cf.C4: 1, cf.C6: 1}
    assert un13 == {cf.C2: 1, cf.C3: 1}
    assert un13.get(cf.A4, 0) == 0
    assert un13.get(cf.D2, 0) == 0
    # The polarized table carries the whole stratum mass.
    assert pm13.mass() == mass_values(13)["pm_16"]
    assert un13.mass() == mass_values(13)["un_16"]


def test_refined_pol_mod_r1_p3mod4():
    pm, un = refined_pol_mod(7, 1, PRIN)
    assert un == {cf.D4: 1, cf.S4: 1}
    assert pm == {cf.Q8: 1, cf.E24: 1}
    pm_n, un_n = refined_pol_mod(7, 1, NONP)
    assert pm_n == {cf.C6: 1}
    assert un_n == {cf.D3_DDAGGER: 1}
    pm11, un11 = refined_pol_mod(11, 1, NONP)
    assert pm11 == {cf.C4: 1, cf.E24: 1}
    assert un11 == {cf.C4: 1, cf.S4: 1}
    pm19, un19 = refined_pol_mod(19, 1, NONP)
    assert pm19 == {cf.C2: 1, cf.C4: 1, cf.E24: 1}
    assert un19 == {cf.C2_DDAGGER: 1, cf.C4: 1, cf.S4: 1}


def test_refined_pol_mod_r1_p1mod4():
    pm, un = refined_pol_mod(13, 1, UNIQ)
    assert pm == {cf.E24: 1}
    assert un == {cf.A4: 1}
    pm29, un29 = refined_pol_mod(29, 1, UNIQ)
    assert pm29 == {cf.Q12: 1, cf.E24: 1}
    assert un29 == {cf.D3_DAGGER: 1, cf.A4: 1}


def test_refined_pol_mod_rejections():
    with pytest.raises(ValueError):
        refined_pol_mod(13, 8, UNIQ)
    with pytest.raises(ValueError):
        refined_pol_mod(5, 1, UNIQ)
    with pytest.raises(ValueError):
        refined_pol_mod(7, 16, PRIN)


def test_elliptic_baseline():
    assert elliptic_baseline(2) == (1, 1, {cf.E24: 1})
    assert elliptic_baseline(3) == (1, 1, {cf.Q12: 1})
    assert elliptic_baseline(5) == (1, 1, {cf.C6: 1})
    assert elliptic_baseline(7) == (1, 1, {cf.C4: 1})
    assert elliptic_baseline(11) == (2, 2, {cf.C4: 1, cf.C6: 1})
    assert elliptic_baseline(13) == (1, 1, {cf.C2: 1})


def test_elliptic_refined_at_11_forced_by_mass():
    # h = 2 classes weighted by 1/|Aut| must sum to (11-1)/24 = 5/12, and
    # the order-4 count is pinned to 1; the only solution over orders
    # {2, 4, 6} is one class of order 4 and one of order 6.
    ell = elliptic_baseline(11)
    assert ell.h == 2
    assert ell.refined[cf.C4] == 1
    assert ell.refined.mass() == Fraction(5, 12)
    solutions = [
        (a, b, c)
        for a in range(3) for b in range(3) for c in range(3)
        if a + b + c == 2 and b == 1
        and Fraction(a, 2) + Fraction(b, 4) + Fraction(c, 6) == Fraction(5, 12)
    ]
    assert solutions == [(0, 1, 1)]


def test_census_report_examples():
    rep = census(3)
    assert rep.h_pp == 1
    assert rep.refined_pp == {cf.Q24: 1}
    rep13 = census(13)
    assert (rep13.h_pp, rep13.t_pp) == (3, 3)
    assert (rep13.lambda1_pp, rep13.lambda16_pp) == (1, 2)
    rep7 = census(7)
    assert rep7.h_pp == rep7.t_pp == 2
    assert rep7.masses["ppsp"] == Fraction(1, 6)
    assert set(rep7.pol_mod) == {(1, PRIN), (1, NONP)}
    assert set(census(17).pol_mod) == {(1, UNIQ), (8, UNIQ), (16, UNIQ)}


def test_census_fault_injection(monkeypatch):
    monkeypatch.setattr(cf, "ppav_class_number", lambda p: 3)
    with pytest.raises(InvariantViolation) as exc_info:
        census(7)
    assert exc_info.value.identity == "refined-sum"


def test_non_prime_rejected():
    for fn in (ppav_class_number, ppav_type_number, ppav_refined, census):
        with pytest.raises(ValueError):
            fn(15)
