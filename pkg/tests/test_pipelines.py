from fractions import Fraction

import pytest

from syzslope.constructions import lemma1_min_d
from syzslope.pipelines import (
    LISTED_E91_COEFFS,
    Prop6Report,
    analyze_e172,
    listed_coeff,
    prop6_threshold,
    table_deviation,
    verify_lemma1,
)


def test_lemma1_boundary_equality():
    rep = verify_lemma1(2, 22)
    assert rep.passed and rep.mu_max == rep.bound == -24 and rep.excess == 0
    assert verify_lemma1(2, 22, oracle=True).mu_max == -24
    obj = rep.to_json_obj()
    assert obj["pass"] and obj["B"] == "-24" and obj["witness"]["r"] == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lemma1_one_past_threshold_is_exceeded(n):
    # rounding the row exponents up pushes a pair gcd past floor(d_2)
    rep = verify_lemma1(n, lemma1_min_d(n) + 1)
    assert not rep.passed and 0 < rep.excess < 1


def test_lemma1_refuses_below_threshold():
    with pytest.raises(ValueError):
        verify_lemma1(3, lemma1_min_d(3) - 1)


def test_listed_coeff_fallback():
    assert listed_coeff(LISTED_E91_COEFFS, 2) == Fraction(-7, 6)
    assert listed_coeff(LISTED_E91_COEFFS, 7) == Fraction(-8, 7)


@pytest.mark.parametrize("d", [30, 60, 120])
def test_e91_table_exact(d):
    rep = analyze_e172(d)
    assert max(table_deviation(rep.e91, LISTED_E91_COEFFS, d).values()) == 0
    assert rep.e91.mu_max == Fraction(-9 * d, 8)
    assert rep.e91.max_proper() == Fraction(-8 * d, 7)


def test_e81_values_d30():
    rep = analyze_e172(30)
    assert [v for _, v in rep.e81.rank_table()] == [-40, -35, Fraction(-110, 3), -35, -36, -35]
    assert rep.e81.mu_max == -35


def test_e172_checks_d30():
    rep = analyze_e172(30)
    assert rep.mu_e172 == -34
    c = rep.checks
    assert c["e81_mu_max_below"] and c["e91_proper_below"] and c["extension_ranks_at_most"]
    assert not c["e91_mu_max_below"]
    # equality is reached at rank 6 + 4 = 10, so only the non-strict form holds
    assert rep.extension_bounds[10] == -34 and not c["extension_ranks_below"]
    assert rep.passed
    assert set(Prop6Report.ARGUMENT_CHECKS) <= set(c)


def test_thresholds():
    assert prop6_threshold("e81_mu_max_below", 40) == 3
    assert prop6_threshold("e91_mu_max_below", 40) is None
