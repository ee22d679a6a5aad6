"""Attacker targeting across heterogeneous chains and the investor's diversification response.

The investor game here is deliberately minimal: the attacker destroys a fraction
``L_i`` of whatever is held in one chain of their choosing, and the investor
picks portfolio weights to minimise the worst case ``max_i w_i L_i``. It is an
illustrative zero-sum model, not a general equilibrium result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bondmath import check_survival
from .calibrate import QuantumRiskParams, risk_premium_full
from .monetary import IssuancePath


@dataclass(frozen=True)
class ChainProfile:
    id: str
    attack_success_prob: float
    attacker_value: float
    survival_prob: float = 1.0
    capitalization: float = 1.0
    loss_fraction: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.attack_success_prob <= 1.0:
            raise ValueError(f"{self.id}: attack_success_prob must be in [0, 1]")
        if not self.attacker_value > 0 or math.isinf(self.attacker_value):
            raise ValueError(f"{self.id}: attacker_value must be positive")
        check_survival(self.survival_prob)
        if not self.capitalization > 0:
            raise ValueError(f"{self.id}: capitalization must be positive")
        if not 0.0 < self.loss_fraction <= 1.0:
            raise ValueError(f"{self.id}: loss_fraction must be in (0, 1]")


@dataclass(frozen=True)
class Portfolio:
    weights: tuple[float, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.size == 0 or (w < 0).any() or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("portfolio weights must be nonnegative and sum to 1")

    def worst_case_loss(self, loss_fractions: Sequence[float]) -> float:
        return max(w * l for w, l in zip(self.weights, loss_fractions))


def _nonempty(chains):
    chains = list(chains)
    if not chains:
        raise ValueError("need at least one chain")
    return chains


def attacker_expected_benefits(chains: Sequence[ChainProfile]) -> list[float]:
    return [c.attack_success_prob * c.attacker_value for c in _nonempty(chains)]


def attacker_best_target(chains: Sequence[ChainProfile]) -> str:
    """Chain with the largest expected benefit to the attacker; ties go to the earliest listed."""
    chains = _nonempty(chains)
    benefits = attacker_expected_benefits(chains)
    return chains[int(np.argmax(benefits))].id


def market_premia(
    chains: Sequence[ChainProfile], shared: IssuancePath, foreign_ytm: float
) -> list[float]:
    return [
        risk_premium_full(QuantumRiskParams(c.survival_prob, shared, foreign_ytm))
        for c in _nonempty(chains)
    ]


def minimax_diversification(chains: Sequence[ChainProfile]) -> tuple[Portfolio, float]:
    """Weights proportional to ``1/L_i``; they equalise ``w_i L_i`` and hence minimise its max."""
    losses = [c.loss_fraction for c in _nonempty(chains)]
    if any(l <= 0 for l in losses):
        raise ValueError("loss fractions must be positive")
    inv = [1.0 / l for l in losses]
    total = math.fsum(inv)
    weights = tuple(x / total for x in inv)
    return Portfolio(weights), 1.0 / total
