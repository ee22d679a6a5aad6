"""Quantity-equation exchange-rate forecasts, including Grover-expansion.

Vendors quote crypto prices by converting fiat prices at the spot rate, so PPP
links the two price levels and the quantity equation ``C T = M V`` pins down the
spot rate. Periods are one year long, matching the bond maturity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .bondmath import check_survival


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0 or math.isinf(value):
        raise ValueError(f"{name} must be positive, got {value!r}")
    return value


@dataclass(frozen=True)
class LedgerAggregates:
    """Realized quantity-equation state of chain X for one period."""

    money_supply: float
    velocity: float
    transaction_volume: float
    fiat_price_level: float
    period: int = 0

    def __post_init__(self):
        for name in ("money_supply", "velocity", "transaction_volume", "fiat_price_level"):
            _positive(name, getattr(self, name))

    @property
    def crypto_price_level(self) -> float:
        return self.money_supply * self.velocity / self.transaction_volume

    @property
    def spot(self) -> float:
        return quantity_spot_rate(self)


@dataclass(frozen=True)
class IssuancePath:
    """Expected one-period growth rates.

    ``baseline_growth`` is the algorithmic issuance rate; ``grover_growth`` the
    largest expansion a quantum miner could force during the period.
    """

    baseline_growth: float
    grover_growth: float | None = None
    expected_fiat_inflation: float = 0.0
    expected_volume_growth: float = 0.0

    def __post_init__(self):
        if self.grover_growth is None:
            object.__setattr__(self, "grover_growth", self.baseline_growth)
        if not self.baseline_growth >= 0:
            raise ValueError(f"baseline_growth must be >= 0, got {self.baseline_growth!r}")
        if not self.grover_growth >= self.baseline_growth:
            raise ValueError("grover_growth must be >= baseline_growth")
        if not self.expected_fiat_inflation > -1:
            raise ValueError("expected_fiat_inflation must be > -1")
        if not self.expected_volume_growth > -1:
            raise ValueError("expected_volume_growth must be > -1")


@dataclass(frozen=True)
class Expectations:
    """Period-t expectations; ``None`` entries are filled from the prior period."""

    velocity: float | None = None
    transaction_volume: float | None = None
    fiat_price_level: float | None = None


@dataclass(frozen=True)
class GroverForecast:
    expected_spot: float
    spot_change: float
    spot_change_approx: float
    spot_if_attacked: float
    spot_if_safe: float


def ppp_price_level(fiat_level: float, spot: float) -> float:
    return _positive("fiat_level", fiat_level) * _positive("spot", spot)


def quantity_spot_rate(agg: LedgerAggregates) -> float:
    return agg.money_supply * agg.velocity / (agg.fiat_price_level * agg.transaction_volume)


def expected_spot_change_full(path: IssuancePath) -> float:
    """Exact expected spot change with stable velocity and no attack."""
    return (1.0 + path.baseline_growth) / (
        (1.0 + path.expected_fiat_inflation) * (1.0 + path.expected_volume_growth)
    ) - 1.0


def expected_spot_change_approx(path: IssuancePath) -> float:
    """First-order ``mu - pi``; drops the cross term, so only good for small rates."""
    if path.expected_volume_growth != 0:
        raise ValueError("the linear approximation assumes stable transaction volume")
    return path.baseline_growth - path.expected_fiat_inflation


def _mixed_growth(path: IssuancePath, rho: float) -> float:
    return rho * path.baseline_growth + (1.0 - rho) * path.grover_growth


def grover_spot_change(path: IssuancePath, rho: float) -> tuple[float, float]:
    """Exact and first-order expected spot change when an attack has weight ``1 - rho``.

    Volume growth, when nonzero, divides the exact form exactly as it does in the
    no-attack case; the approximation subtracts it linearly.
    """
    rho = check_survival(rho)
    g = _mixed_growth(path, rho)
    exact = (1.0 + g) / (
        (1.0 + path.expected_fiat_inflation) * (1.0 + path.expected_volume_growth)
    ) - 1.0
    approx = g - path.expected_fiat_inflation - path.expected_volume_growth
    return exact, approx


def expected_spot_with_grover(
    path: IssuancePath,
    rho: float,
    prior: LedgerAggregates,
    expectations: Expectations | None = None,
) -> GroverForecast:
    rho = check_survival(rho)
    exp = expectations or Expectations()
    velocity = prior.velocity if exp.velocity is None else _positive("velocity", exp.velocity)
    volume = (
        prior.transaction_volume * (1.0 + path.expected_volume_growth)
        if exp.transaction_volume is None
        else _positive("transaction_volume", exp.transaction_volume)
    )
    fiat = (
        prior.fiat_price_level * (1.0 + path.expected_fiat_inflation)
        if exp.fiat_price_level is None
        else _positive("fiat_price_level", exp.fiat_price_level)
    )
    scale = velocity / (fiat * volume)
    m_safe = prior.money_supply * (1.0 + path.baseline_growth)
    m_attacked = prior.money_supply * (1.0 + path.grover_growth)
    spot_e = scale * (rho * m_safe + (1.0 - rho) * m_attacked)
    s_prev = quantity_spot_rate(prior)
    _, approx = grover_spot_change(path, rho)
    return GroverForecast(
        expected_spot=spot_e,
        spot_change=spot_e / s_prev - 1.0,
        spot_change_approx=approx,
        spot_if_attacked=scale * m_attacked,
        spot_if_safe=scale * m_safe,
    )


def apply_supply_shock(agg: LedgerAggregates, dormant_fraction: float) -> LedgerAggregates:
    """Release dormant coins into circulation.

    ``dormant_fraction`` is the share of *total* supply that was dormant, so the
    circulating supply grows from ``M`` to ``M / (1 - fraction)``. Key recovery via
    Shor's algorithm is the mechanism; nothing here models it beyond the jump.
    """
    f = float(dormant_fraction)
    if not 0.0 <= f < 1.0:
        raise ValueError(f"dormant_fraction must be in [0, 1), got {f!r}")
    if f == 0.0:
        return agg
    return replace(agg, money_supply=agg.money_supply * (1.0 + f / (1.0 - f)))
