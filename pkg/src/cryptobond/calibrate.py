"""Full-model risk premium, market-implied survival probabilities and sensitivities."""
from __future__ import annotations

from dataclasses import dataclass, field

from .bondmath import check_survival, check_yield
from .monetary import IssuancePath

RHO_LOWER = 1e-9
BISECTION_TOL = 1e-12
FD_STEP = 1e-6


class NoSolutionError(ValueError):
    """Observed quotes cannot be produced by any survival probability in (0, 1]."""


@dataclass(frozen=True)
class QuantumRiskParams:
    rho: float
    path: IssuancePath = field(default_factory=lambda: IssuancePath(0.0))
    foreign_ytm: float = 0.0

    def __post_init__(self):
        check_survival(self.rho)
        check_yield(self.foreign_ytm, "foreign_ytm")


def _premium(rho, mu, mu_g, infl, i_star, vol=0.0):
    # unvalidated so finite differences may step slightly past rho = 1
    mix = (1.0 + rho * mu + (1.0 - rho) * mu_g) / ((1.0 + infl) * (1.0 + vol))
    return (1.0 + i_star) / rho * (mix - rho)


def risk_premium_full(params: QuantumRiskParams) -> float:
    """Premium of the risky crypto-bond over the quantum-safe bond.

    Combines total loss with probability ``1 - rho`` and the expected
    depreciation from Grover-expansion.
    """
    p = params.path
    return _premium(
        params.rho,
        p.baseline_growth,
        p.grover_growth,
        p.expected_fiat_inflation,
        params.foreign_ytm,
        p.expected_volume_growth,
    )


def implied_survival_idiosyncratic(risky_ytm: float, riskfree_ytm: float) -> float:
    i_hat = check_yield(risky_ytm, "risky_ytm")
    i = check_yield(riskfree_ytm, "riskfree_ytm")
    if i_hat < i:
        raise NoSolutionError(
            f"risky yield {i_hat} below risk-free yield {i}: quotes are not arbitrage-consistent"
        )
    return (1.0 + i) / (1.0 + i_hat)


def implied_survival_fx(observed_premium: float, spot_change: float, foreign_ytm: float) -> float:
    """Survival probability from a cross-currency premium and a given expected spot change.

    Used when the market's spot-change expectation is estimated outside the
    issuance model (for a stablecoin it is simply zero).
    """
    i_star = check_yield(foreign_ytm, "foreign_ytm")
    gross = observed_premium + 1.0 + i_star
    if not gross > 0:
        raise NoSolutionError(f"premium {observed_premium} implies a non-positive risky gross yield")
    rho = (1.0 + i_star) * (1.0 + check_yield(spot_change, "spot_change")) / gross
    if 1.0 < rho <= 1.0 + 1e-12:
        rho = 1.0
    if not 0.0 < rho <= 1.0:
        raise NoSolutionError(f"implied rho {rho} outside (0, 1]")
    return rho


def implied_survival_closed_form(
    observed_premium: float, path: IssuancePath, foreign_ytm: float
) -> float:
    """Solve the premium equation for rho directly.

    The premium is affine in ``1/rho``:
    ``(R + 1 + i*) (1 + pi)(1 + T) / (1 + i*) = (1 + muG) / rho + mu - muG``.
    Kept as an independent cross-check on :func:`implied_survival_full`.
    """
    i_star = check_yield(foreign_ytm, "foreign_ytm")
    scaled = (
        (observed_premium + 1.0 + i_star)
        * (1.0 + path.expected_fiat_inflation)
        * (1.0 + path.expected_volume_growth)
        / (1.0 + i_star)
    )
    denom = scaled - path.baseline_growth + path.grover_growth
    if not denom > 0:
        raise NoSolutionError("premium too low for any survival probability")
    rho = (1.0 + path.grover_growth) / denom
    if 1.0 < rho <= 1.0 + 1e-12:
        rho = 1.0
    if not 0.0 < rho <= 1.0:
        raise NoSolutionError(f"implied rho {rho} outside (0, 1]")
    return rho


def implied_survival_full(
    observed_premium: float,
    path: IssuancePath,
    foreign_ytm: float,
    tol: float = BISECTION_TOL,
) -> float:
    """Market-implied survival probability by bisection on ``rho -> premium``.

    The premium is strictly decreasing in rho, so a premium outside the image of
    ``[RHO_LOWER, 1]`` is reported as :class:`NoSolutionError` rather than clamped.
    """
    i_star = check_yield(foreign_ytm, "foreign_ytm")
    args = (
        path.baseline_growth,
        path.grover_growth,
        path.expected_fiat_inflation,
        i_star,
        path.expected_volume_growth,
    )

    def excess(rho: float) -> float:
        return _premium(rho, *args) - observed_premium

    lo, hi = RHO_LOWER, 1.0
    f_hi = excess(hi)
    if f_hi > 0:
        # tiny float noise at the rho = 1 boundary is still a solution
        if f_hi <= 1e-14 * max(1.0, abs(observed_premium)):
            return 1.0
        raise NoSolutionError(
            f"premium {observed_premium} below the no-risk premium {observed_premium + f_hi}"
        )
    if f_hi == 0:
        return 1.0
    if excess(lo) < 0:
        raise NoSolutionError(f"premium {observed_premium} implies rho below {RHO_LOWER}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Sensitivity:
    analytic: float
    finite_difference: float

    @property
    def relative_gap(self) -> float:
        return abs(self.analytic - self.finite_difference) / max(abs(self.analytic), 1e-8)


@dataclass(frozen=True)
class StaticsReport:
    d_premium_d_mu: Sensitivity
    d_premium_d_muG: Sensitivity
    d_premium_d_inflation: Sensitivity
    d_premium_d_rho: Sensitivity

    def items(self):
        return {
            "d_premium_d_mu": self.d_premium_d_mu,
            "d_premium_d_muG": self.d_premium_d_muG,
            "d_premium_d_inflation": self.d_premium_d_inflation,
            "d_premium_d_rho": self.d_premium_d_rho,
        }.items()


def _central(f, x: float, h: float = FD_STEP) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def comparative_statics(params: QuantumRiskParams, h: float = FD_STEP) -> StaticsReport:
    p = params.path
    rho, mu, mu_g = params.rho, p.baseline_growth, p.grover_growth
    infl, vol, i_star = p.expected_fiat_inflation, p.expected_volume_growth, params.foreign_ytm
    if infl == -1.0:
        raise ValueError("comparative statics undefined at inflation of -100%")
    denom = (1.0 + infl) * (1.0 + vol)
    growth = 1.0 + rho * mu + (1.0 - rho) * mu_g

    analytic = {
        "mu": (1.0 + i_star) / denom,
        "mu_g": (1.0 - rho) * (1.0 + i_star) / (rho * denom),
        "infl": -(1.0 + i_star) * growth / (rho * (1.0 + infl) * denom),
        "rho": -(1.0 + i_star) * (1.0 + mu_g) / (rho**2 * denom),
    }
    fd = {
        "mu": _central(lambda x: _premium(rho, x, mu_g, infl, i_star, vol), mu, h),
        "mu_g": _central(lambda x: _premium(rho, mu, x, infl, i_star, vol), mu_g, h),
        "infl": _central(lambda x: _premium(rho, mu, mu_g, x, i_star, vol), infl, h),
        "rho": _central(lambda x: _premium(x, mu, mu_g, infl, i_star, vol), rho, h),
    }
    return StaticsReport(
        d_premium_d_mu=Sensitivity(analytic["mu"], fd["mu"]),
        d_premium_d_muG=Sensitivity(analytic["mu_g"], fd["mu_g"]),
        d_premium_d_inflation=Sensitivity(analytic["infl"], fd["infl"]),
        d_premium_d_rho=Sensitivity(analytic["rho"], fd["rho"]),
    )


def premium_at_full_survival(path: IssuancePath, foreign_ytm: float) -> float:
    """Smallest premium the model can produce; anything lower has no valid rho."""
    return _premium(
        1.0,
        path.baseline_growth,
        path.grover_growth,
        path.expected_fiat_inflation,
        foreign_ytm,
        path.expected_volume_growth,
    )


__all__ = [
    "NoSolutionError",
    "QuantumRiskParams",
    "Sensitivity",
    "StaticsReport",
    "comparative_statics",
    "implied_survival_closed_form",
    "implied_survival_full",
    "implied_survival_fx",
    "implied_survival_idiosyncratic",
    "premium_at_full_survival",
    "risk_premium_full",
]
