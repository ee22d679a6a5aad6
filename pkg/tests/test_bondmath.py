from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cryptobond.bondmath import (
    ZeroCouponBond,
    check_survival,
    price_riskfree,
    price_risky,
    risk_premium_idiosyncratic,
    risky_yield,
)

rates = st.floats(min_value=-0.5, max_value=1.0, allow_nan=False)
survival = st.floats(min_value=1e-3, max_value=1.0, allow_nan=False)


def rational_price(face, i, rho=1):
    return float(Fraction(str(rho)) * Fraction(str(face)) / (1 + Fraction(str(i))))


@pytest.mark.parametrize(
    "face, i, expected",
    [(100, 0.0, 100.0), (100, 0.05, 95.2380952381), (21, 1.0, 10.5)],
)
def test_price_riskfree_examples(face, i, expected):
    got = price_riskfree(ZeroCouponBond(face), i)
    assert got == pytest.approx(expected, abs=1e-10)
    assert got == pytest.approx(rational_price(face, i), rel=1e-15)


@pytest.mark.parametrize(
    "i, rho, expected",
    [(0.05, 1.0, 0.05), (0.05, 0.95, 0.1052631579), (0.0, 0.5, 1.0)],
)
def test_risky_yield_examples(i, rho, expected):
    assert risky_yield(i, rho) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize(
    "i, rho, expected",
    [(0.05, 1.0, 95.2380952381), (0.05, 0.95, 90.4761904762), (0.0, 0.5, 50.0)],
)
def test_price_risky_examples(i, rho, expected):
    assert price_risky(ZeroCouponBond(100), i, rho) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize(
    "i, rho, expected",
    [(0.05, 1.0, 0.0), (0.05, 0.95, 0.0552631579), (0.0, 0.5, 1.0)],
)
def test_premium_examples(i, rho, expected):
    assert risk_premium_idiosyncratic(i, rho) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("rho", [0.0, -0.1, 1.0000001, float("nan")])
def test_survival_out_of_range_rejected(rho):
    with pytest.raises(ValueError, match="rho"):
        check_survival(rho)


def test_bond_invariants():
    with pytest.raises(ValueError):
        ZeroCouponBond(0.0)
    with pytest.raises(ValueError):
        ZeroCouponBond(100.0, maturity_years=2.0)
    with pytest.raises(ValueError):
        price_riskfree(ZeroCouponBond(100.0), -1.0)


@given(rates, survival)
def test_premium_is_yield_spread(i, rho):
    assert risk_premium_idiosyncratic(i, rho) == pytest.approx(risky_yield(i, rho) - i, abs=1e-12 * (1 + 1 / rho))


@given(st.floats(min_value=0.01, max_value=1e6), rates, survival)
def test_risky_price_linear_in_rho(face, i, rho):
    bond = ZeroCouponBond(face)
    assert price_risky(bond, i, rho) == pytest.approx(rho * price_riskfree(bond, i), rel=1e-12)


@given(st.floats(min_value=0.01, max_value=1e6), rates, survival)
def test_expected_payoff_discounts_at_riskfree_rate(face, i, rho):
    # face discounted at the risky yield, grown at the risk-free yield, is the expected payoff
    i_hat = risky_yield(i, rho)
    assert face / (1 + i_hat) * (1 + i) == pytest.approx(rho * face, rel=1e-12)


@given(rates, rates, survival)
def test_monotonicity(i1, i2, rho):
    bond = ZeroCouponBond(100.0)
    if i2 - i1 > 1e-9:
        assert price_riskfree(bond, i1) > price_riskfree(bond, i2)


@given(rates, survival, survival)
def test_premium_decreasing_in_rho(i, r1, r2):
    if r2 - r1 > 1e-9:
        assert risk_premium_idiosyncratic(i, r1) > risk_premium_idiosyncratic(i, r2)
