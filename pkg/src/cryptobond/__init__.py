"""Crypto-bond pricing under quantum-failure risk and proof-of-work attack simulation."""

from .bondmath import (
    ZeroCouponBond,
    price_riskfree,
    price_risky,
    risk_premium_idiosyncratic,
    risky_yield,
)
from .calibrate import (
    NoSolutionError,
    QuantumRiskParams,
    comparative_statics,
    implied_survival_full,
    implied_survival_idiosyncratic,
    risk_premium_full,
)
from .monetary import IssuancePath, LedgerAggregates

__version__ = "0.1.0"
