from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from syzslope.bundles import (
    ALL_D,
    GENERIC,
    NO_D,
    BundleError,
    KernelBundleClass,
    MonomialMatrix,
    certify,
    decompose,
    extend,
    extend_classes,
    min_d_linear,
    quotient_class,
    quotient_rank_printed,
    slope,
    slope_coeff,
    slope_ledger,
    thm5_linear,
    thm5_margin,
)
from syzslope.constructions import bound_B, e81_generators, e91_generators, k_of, pure_powers
from syzslope.monomial import Monomial


def test_slope_examples():
    k, b, d = k_of(3), 2, 60
    e = KernelBundleClass(3, k * b - 1, b, d)
    assert slope(e) == Fraction(d * (1 - b * k), b * k - b - 1) == Fraction(-580, 9)
    assert slope(KernelBundleClass(2, 17, 2, 15)) == -17
    assert slope(KernelBundleClass(4, 5, 1, 7)) == Fraction(-5 * 7, 4)
    with pytest.raises(BundleError):
        KernelBundleClass(2, 2, 2, 5)


def test_extend_e172():
    d = 30
    m = extend(MonomialMatrix.syzygy_row(e81_generators(d)), MonomialMatrix.syzygy_row(e91_generators(d)))
    assert (m.b, m.a) == (2, 16)  # the listed family has seven generators
    assert m.entries[1][:7] == (None,) * 7
    assert all(e is GENERIC for e in m.entries[0][7:])
    e = extend_classes(KernelBundleClass(2, 8, 1, d), KernelBundleClass(2, 9, 1, d))
    assert (e.a, e.b) == (17, 2) and e.slope == Fraction(-17 * d, 15)


def test_extend_inductive_step():
    n, k, b, d = 3, k_of(3), 4, 50
    e = extend_classes(KernelBundleClass(n, k * (b - 1) - 1, b - 1, d), KernelBundleClass(n, k, 1, d))
    assert (e.a, e.b) == (k * b - 1, b)


def test_extend_filler_and_errors():
    d = 4
    row = MonomialMatrix.syzygy_row(pure_powers(2, d))
    filler = [[Monomial((4, 0, 0)), Monomial((0, 4, 0)), None]]
    m = extend(row, row, filler)
    assert m.entries[0][3] == Monomial((4, 0, 0))
    with pytest.raises(BundleError):
        extend(row, row, [[GENERIC]])
    with pytest.raises(BundleError):
        extend(row, MonomialMatrix.syzygy_row(pure_powers(2, d + 1)))
    with pytest.raises(BundleError):
        MonomialMatrix(2, 3, ((Monomial((4, 0, 0)),),))


@given(
    st.integers(2, 5), st.integers(1, 6), st.integers(1, 30), st.integers(1, 6), st.integers(1, 30),
    st.integers(1, 100),
)
def test_slope_additivity(n, b1, r1, b2, r2, d):
    e1 = KernelBundleClass(n, b1 + r1, b1, d)
    e2 = KernelBundleClass(n, b2 + r2, b2, d)
    e = extend_classes(e1, e2)
    assert e.slope == slope_ledger(e1.slope, e1.rank, e2.slope, e2.rank)


def test_slope_ledger():
    assert slope_ledger(-2, 1, -4, 1) == -3
    assert slope_ledger(Fraction(5), 0, Fraction(-7, 3), 4) == Fraction(-7, 3)
    with pytest.raises(BundleError):
        slope_ledger(1, 0, 1, 0)
    # r(W) = k, r(W2) = 1, W1 carries degree -kd
    k, d, mu2 = 15, 60, Fraction(-70)
    assert slope_ledger(mu2, 1, Fraction(-k * d, k - 1), k - 1) == (mu2 - k * d) / k


def test_decompose_examples():
    assert decompose(17, 2, 2) is None
    dec = decompose(15, 2, 2)
    assert (dec.m, dec.j, dec.s, dec.l) == (8, 1, 2, 0)
    dec = decompose(16, 2, 2)
    assert (dec.m, dec.j) == (8, 0)
    dec = decompose(29, 2, 3)
    assert (dec.m, dec.j) == (15, 1)


@given(st.integers(2, 8), st.integers(1, 40), st.integers(1, 400))
def test_decompose_total_and_unique(n, b, extra):
    a = b + extra
    dec = decompose(a, b, n)
    m = -(-a // b)
    sols = [(mm, mm * b - a) for mm in range(1, a + 2) if 0 <= mm * b - a <= b - 1]
    assert sols == [(m, m * b - a)]
    assert (dec is not None) == (2 <= m <= k_of(n))
    if dec and dec.j:
        assert b == dec.s * dec.j + dec.l and 0 <= dec.l < dec.j


def test_min_d_linear():
    assert min_d_linear(1, -5) == 6
    assert min_d_linear(0, 1) == ALL_D
    assert min_d_linear(-1, 0) == NO_D
    assert min_d_linear(Fraction(1, 3), -2) == 7
    assert min_d_linear(2, 3) == ALL_D
    assert min_d_linear(-1, 5) == NO_D


@given(st.fractions(), st.fractions())
def test_min_d_linear_is_least(alpha, beta):
    d0 = min_d_linear(alpha, beta)
    f = lambda d: alpha * d + beta
    if isinstance(d0, int):
        assert f(d0) > 0 and f(d0 + 1) > 0 and f(d0 + 1000) > 0
        assert d0 == 1 or f(d0 - 1) <= 0
    elif d0 == ALL_D:
        assert all(f(d) > 0 for d in (1, 2, 10**6))
    else:
        assert alpha < 0 or f(10**6) <= 0


@given(st.integers(2, 4), st.integers(1, 6), st.integers(2, 30), st.integers(1, 10**4), st.integers(1, 10**4))
def test_margin_linear_in_d(n, b, m, d1, d2):
    assume(b >= 2)
    j = 1 + (d1 % (b - 1))
    s, l = divmod(b, j)
    lin = thm5_linear(n, m, j, s, l)
    assert thm5_margin(n, m, j, s, l, d2) - thm5_margin(n, m, j, s, l, d1) == lin.alpha * (d2 - d1)


@given(st.integers(2, 6), st.integers(2, 40), st.integers(2, 60), st.integers(1, 500))
def test_margin_j1_is_slope_minus_bound(n, m, b, d):
    # with j = 1 the printed margin collapses to mu(E_{mb-1,b}) - B(n,d)
    mu = Fraction(-(m * b - 1) * d, m * b - 1 - b)
    assert thm5_margin(n, m, 1, b, 0, d) == mu - bound_B(n, d)


def test_margin_15_2_on_p2():
    # the bound sits above mu(E_{15,2}) for every d on P^2, so no threshold exists
    lin = thm5_linear(2, 8, 1, 2, 0)
    assert lin.alpha == Fraction(-15, 13) + Fraction(9, 8) < 0
    assert lin.beta == Fraction(-3, 4)
    assert all(slope_coeff(15, 2) * d < bound_B(2, d) for d in range(1, 500))
    cert = certify(15, 2, 2)
    assert cert.covered and cert.d0 is None and cert.d0_status == NO_D


def test_margin_j0_not_evaluated():
    with pytest.raises(BundleError):
        thm5_margin(3, 5, 0, 0, 0, 10)
    cert = certify(16, 2, 2)
    assert cert.route == "direct_sum" and cert.margin is None


@given(st.integers(2, 30), st.integers(1, 10), st.integers(1, 10), st.integers(0, 9))
def test_quotient_rank_matches_printed(m, j, s, l):
    assume(l < j)
    a2, b2 = quotient_class(m, j, s, l)
    assert quotient_rank_printed(m, j, s, l) == a2 - b2


def test_certify_examples():
    c = certify(17, 2, 2)
    assert not c.covered and c.verdict is None
    assert any("prop6" in w for w in c.warnings)
    c = certify(29, 2, 3, d=400)
    assert c.covered and (c.decomposition.m, c.decomposition.j) == (15, 1)
    assert c.thm4["leading_k"] > 0
    assert isinstance(c.d0, int) and c.holds_at(400)
    assert slope_coeff(29, 2) * c.d0 > bound_B(3, c.d0)
    assert not slope_coeff(29, 2) * (c.d0 - 1) > bound_B(3, c.d0 - 1)
    c = certify(16, 2, 2)
    assert c.covered and c.decomposition.j == 0


@pytest.mark.parametrize("n", range(2, 17))
def test_certify_pure_power_class(n):
    c = certify(n + 1, 1, n)
    assert c.covered and c.decomposition.m == n + 1 and c.decomposition.j == 0


def test_certificate_json_schema():
    obj = certify(44, 3, 3, d=200).to_json_obj()
    for key in ("n", "a", "b", "covered", "m", "j", "s", "l", "B", "mu", "d0", "warnings"):
        assert key in obj
    assert obj["mu"] == "-44/41"
    assert obj["B"] == str(bound_B(3, 200).numerator) + "/" + str(bound_B(3, 200).denominator)


def test_printed_threshold_warning_for_small_n():
    c = certify(15, 2, 2)
    assert c.thm4["printed_denominator_sign"] == -1
    assert any("non-positive denominator" in w for w in c.warnings)


def test_rederived_margin_reported():
    # a thm5-route cell (j >= 2, l >= 1) carries both thresholds
    c = certify(15 * 5 - 2, 5, 3)
    assert c.route == "thm5"
    assert c.d0_rederived is not None


def test_not_surjective_warning():
    c = certify(3, 1, 3)
    assert any("not surjective" in w for w in c.warnings)
