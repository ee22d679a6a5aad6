"""Zero-coupon crypto-bond pricing when quantum-failure risk is idiosyncratic.

All yields are decimal fractions per year (0.05 means 5%). ``rho`` is always the
probability that quantum failure does *not* occur before maturity; the failure
probability ``1 - rho`` is derived where needed and never stored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


def check_survival(rho: float) -> float:
    """Validate a survival probability, which must lie in (0, 1]."""
    rho = float(rho)
    if not (0.0 < rho <= 1.0) or math.isnan(rho):
        raise ValueError(f"rho must be in (0, 1], got {rho!r}")
    return rho


def check_yield(rate: float, name: str = "ytm") -> float:
    """Validate a decimal yield, which must exceed -1."""
    rate = float(rate)
    if not rate > -1.0 or math.isinf(rate):
        raise ValueError(f"{name} must be a finite rate > -1, got {rate!r}")
    return rate


@dataclass(frozen=True)
class ZeroCouponBond:
    """One-year zero-coupon bond paying ``face_value`` units of ``currency``."""

    face_value: float
    currency: str = "X"
    maturity_years: float = 1.0

    def __post_init__(self):
        if not self.face_value > 0 or math.isinf(self.face_value):
            raise ValueError(f"face_value must be positive, got {self.face_value!r}")
        if self.maturity_years != 1.0:
            raise ValueError("only one-year maturities are supported")


def price_riskfree(bond: ZeroCouponBond, ytm: float) -> float:
    return bond.face_value / (1.0 + check_yield(ytm))


def risky_yield(riskfree_ytm: float, rho: float) -> float:
    """Yield on the at-risk bond that leaves risk-neutral holders indifferent.

    The risky bond pays nothing with probability ``1 - rho``, so its gross
    yield has to satisfy ``rho * (1 + risky) = 1 + riskfree``.
    """
    return (1.0 + check_yield(riskfree_ytm)) / check_survival(rho) - 1.0


def price_risky(bond: ZeroCouponBond, riskfree_ytm: float, rho: float) -> float:
    return check_survival(rho) * bond.face_value / (1.0 + check_yield(riskfree_ytm))


def risk_premium_idiosyncratic(riskfree_ytm: float, rho: float) -> float:
    i = check_yield(riskfree_ytm)
    rho = check_survival(rho)
    return (1.0 + i) * (1.0 - rho) / rho
