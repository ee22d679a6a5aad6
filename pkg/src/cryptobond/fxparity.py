"""Uncovered interest parity between a quantum-safe currency X* and an at-risk chain X.

Exchange rates are always quoted as units of X per 1 unit of X*. A rise in the
spot rate therefore means X* appreciates and the cryptocurrency depreciates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .bondmath import check_survival, check_yield


class Regime(str, Enum):
    FIXED_PEG = "fixed-peg"
    FLEXIBLE = "flexible"


@dataclass(frozen=True)
class FxQuote:
    spot: float
    expected_spot: float
    regime: Regime = Regime.FLEXIBLE

    def __post_init__(self):
        object.__setattr__(self, "regime", Regime(self.regime))
        for name in ("spot", "expected_spot"):
            value = getattr(self, name)
            if not value > 0 or math.isinf(value):
                raise ValueError(f"{name} must be positive, got {value!r}")
        if self.regime is Regime.FIXED_PEG and self.expected_spot != self.spot:
            raise ValueError("a fixed peg requires expected_spot == spot")

    @property
    def spot_change(self) -> float:
        """Expected proportional change (Se - S) / S."""
        return (self.expected_spot - self.spot) / self.spot


def check_spot_change(rate: float) -> float:
    return check_yield(rate, name="spot_change")


def uip_domestic_yield(fx: FxQuote, foreign_ytm: float) -> float:
    """Yield a risk-free X-denominated bond would need under UIP."""
    return fx.expected_spot * (1.0 + check_yield(foreign_ytm)) / fx.spot - 1.0


def risky_yield_fx(fx: FxQuote, foreign_ytm: float, rho: float) -> float:
    i_star = check_yield(foreign_ytm)
    return fx.expected_spot * (1.0 + i_star) / (check_survival(rho) * fx.spot) - 1.0


def equilibrium_spot_change(risky_ytm: float, foreign_ytm: float, rho: float) -> float:
    """Expected spot change consistent with both bonds being held.

    Any other expectation, given the two yields, leaves an arbitrage.
    """
    i_hat = check_yield(risky_ytm, "risky_ytm")
    i_star = check_yield(foreign_ytm, "foreign_ytm")
    return check_survival(rho) * (1.0 + i_hat) / (1.0 + i_star) - 1.0


def risk_premium_fx(foreign_ytm: float, spot_change: float, rho: float) -> float:
    i_star = check_yield(foreign_ytm)
    s_dot = check_spot_change(spot_change)
    rho = check_survival(rho)
    return (1.0 + i_star) * (1.0 + s_dot - rho) / rho
