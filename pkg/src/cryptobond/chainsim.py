"""Proof-of-work chain simulation with classical and Grover-advantaged miners.

Hashing is abstracted away. A classical miner succeeds on each hash with
probability ``1/D``, so its solve time is exponential with mean ``D / rate``. A
quantum miner runs one Grover search of ``k * sqrt(D)`` oracle queries per block,
which takes the deterministic time ``k * sqrt(D) / rate``; if someone else wins
first the search restarts on the next block. Error-correction overhead is
modelled by lowering the quantum miner's ``rate``.

Difficulty retargets every ``retarget_window`` blocks from the observed window
duration, so a fast attacker mints a full window of rewards before the
adjustment catches up.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, TextIO

import numpy as np

SECONDS_PER_YEAR = 365 * 24 * 3600
EVENT_LOG_HEADER = ("height", "timestamp", "miner", "reward", "difficulty")


class MinerKind(str, Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


@dataclass(frozen=True)
class ChainParams:
    initial_difficulty: float = 600_000.0
    target_interval: float = 600.0
    retarget_window: int = 2016
    initial_reward: float = 6.25
    halving_interval: int = 210_000
    supply_cap: float = 21e6
    retarget_clamp: float = 4.0
    # circulating supply before the first simulated block; Bitcoin entered the
    # 6.25 reward era with 18.375M coins
    initial_supply: float = 18_375_000.0
    min_difficulty: float = 1.0

    def __post_init__(self):
        for name in ("initial_difficulty", "target_interval", "initial_reward", "supply_cap",
                     "initial_supply", "min_difficulty"):
            value = getattr(self, name)
            if not value > 0 or math.isinf(value):
                raise ValueError(f"{name} must be positive, got {value!r}")
        for name in ("retarget_window", "halving_interval"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not self.retarget_clamp >= 1:
            raise ValueError(f"retarget_clamp must be >= 1, got {self.retarget_clamp!r}")
        if self.initial_supply > self.supply_cap:
            raise ValueError("initial_supply exceeds supply_cap")
        if self.initial_difficulty < self.min_difficulty:
            raise ValueError("initial_difficulty below min_difficulty")


@dataclass(frozen=True)
class MinerSpec:
    id: str
    kind: MinerKind = MinerKind.CLASSICAL
    rate: float = 1000.0
    grover_constant: float = math.pi / 4

    def __post_init__(self):
        object.__setattr__(self, "kind", MinerKind(self.kind))
        if not self.rate > 0 or math.isinf(self.rate):
            raise ValueError(f"miner {self.id!r}: rate must be positive")
        if not self.grover_constant > 0:
            raise ValueError(f"miner {self.id!r}: grover_constant must be positive")

    def queries_per_block(self, difficulty: float) -> float:
        """Expected hash evaluations (classical) or oracle queries (quantum) per block."""
        if self.kind is MinerKind.QUANTUM:
            return self.grover_constant * math.sqrt(difficulty)
        return difficulty


@dataclass(frozen=True)
class BlockRecord:
    height: int
    timestamp: float
    miner: str
    reward: float
    difficulty_at_mine: float


@dataclass
class SimOutcome:
    params: ChainParams
    horizon: float
    blocks: list[BlockRecord]
    window_mean_intervals: list[float]
    window_issuance: list[float]
    wins: dict[str, int]
    final_difficulty: float
    retargets: list[tuple[int, float, float]] = field(default_factory=list)

    @property
    def minted(self) -> float:
        return math.fsum(b.reward for b in self.blocks)

    @property
    def realized_issuance_rate(self) -> float:
        """Minted tokens over the horizon as a fraction of starting supply, per year."""
        return self.minted / self.params.initial_supply * (SECONDS_PER_YEAR / self.horizon)

    def minted_by(self, t: float) -> float:
        return math.fsum(b.reward for b in self.blocks if b.timestamp <= t)


def block_time_sample(miner: MinerSpec, difficulty: float, rng: np.random.Generator) -> float:
    if difficulty < 1:
        raise ValueError(f"difficulty must be >= 1, got {difficulty!r}")
    if miner.kind is MinerKind.QUANTUM:
        return miner.queries_per_block(difficulty) / miner.rate
    return float(rng.exponential(difficulty / miner.rate))


def scheduled_reward(params: ChainParams, height: int, supply: float) -> float:
    """Block subsidy at ``height`` given current circulating ``supply``."""
    era = height // params.halving_interval
    reward = params.initial_reward / 2.0**era
    return max(0.0, min(reward, params.supply_cap - supply))


def simulate_chain(
    params: ChainParams,
    miners: Iterable[MinerSpec],
    horizon: float,
    seed: int,
    max_blocks: int | None = None,
) -> SimOutcome:
    """Run a single canonical chain until ``horizon`` seconds or ``max_blocks`` blocks.

    At each height every miner draws a completion time and the earliest wins;
    exact ties go to the miner listed first.
    """
    miners = list(miners)
    if not miners:
        raise ValueError("at least one miner is required")
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon!r}")
    ids = [m.id for m in miners]
    if len(set(ids)) != len(ids):
        raise ValueError("miner ids must be unique")

    rng = np.random.default_rng(seed)
    window = params.retarget_window
    difficulty = params.initial_difficulty
    supply = params.initial_supply
    t = 0.0
    window_start = 0.0
    window_minted = 0.0
    blocks: list[BlockRecord] = []
    wins = {m.id: 0 for m in miners}
    window_means: list[float] = []
    window_issuance: list[float] = []
    retargets: list[tuple[int, float, float]] = []

    height = 0
    while max_blocks is None or height < max_blocks:
        times = [block_time_sample(m, difficulty, rng) for m in miners]
        winner = min(range(len(miners)), key=times.__getitem__)
        t_next = t + times[winner]
        if t_next > horizon:
            break
        reward = scheduled_reward(params, height, supply)
        supply += reward
        window_minted += reward
        blocks.append(BlockRecord(height, t_next, miners[winner].id, reward, difficulty))
        wins[miners[winner].id] += 1
        t = t_next
        height += 1

        if height % window == 0:
            elapsed = t - window_start
            window_means.append(elapsed / window)
            window_issuance.append(window_minted)
            factor = params.target_interval * window / elapsed if elapsed > 0 else math.inf
            factor = min(max(factor, 1.0 / params.retarget_clamp), params.retarget_clamp)
            new_difficulty = max(difficulty * factor, params.min_difficulty)
            retargets.append((height, difficulty, new_difficulty))
            difficulty = new_difficulty
            window_start = t
            window_minted = 0.0

    return SimOutcome(
        params=params,
        horizon=float(horizon),
        blocks=blocks,
        window_mean_intervals=window_means,
        window_issuance=window_issuance,
        wins=wins,
        final_difficulty=difficulty,
        retargets=retargets,
    )


def realized_grover_expansion(
    baseline: SimOutcome, attacked: SimOutcome, period: float = SECONDS_PER_YEAR
) -> float:
    """Empirical one-period money growth under attack.

    The baseline run supplies the scheduled growth ``mu``; the attacked run's
    growth is ``mu`` scaled by the ratio of tokens minted within ``period``.
    """
    for name, run in (("baseline", baseline), ("attacked", attacked)):
        if run.horizon < period:
            raise ValueError(f"{name} run covers {run.horizon}s, shorter than period {period}s")
    if baseline.params.initial_supply != attacked.params.initial_supply:
        raise ValueError("runs must start from the same circulating supply")
    base = baseline.minted_by(period)
    if base <= 0:
        raise ValueError("baseline run minted nothing within the period")
    mu = base / baseline.params.initial_supply
    return mu * (attacked.minted_by(period) / base)


def write_event_log(outcome: SimOutcome, fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(EVENT_LOG_HEADER)
    for b in outcome.blocks:
        writer.writerow(
            [b.height, f"{b.timestamp:.10g}", b.miner, f"{b.reward:.10g}", f"{b.difficulty_at_mine:.10g}"]
        )


def event_log_text(outcome: SimOutcome) -> str:
    buf = io.StringIO()
    write_event_log(outcome, buf)
    return buf.getvalue()


@dataclass(frozen=True)
class DoubleSpendEstimate:
    probability: float
    stderr: float
    trials: int


def _check_race(q: float, z: int) -> None:
    if not 0.0 <= q < 1.0:
        raise ValueError(f"attacker share q must be in [0, 1), got {q!r}")
    if int(z) != z or z < 1:
        raise ValueError(f"confirmations must be a positive integer, got {z!r}")


def double_spend_oracle(q: float, z: int) -> float:
    """Closed-form success probability of the race simulated by :func:`double_spend_success`.

    While the merchant waits for ``z`` honest blocks the attacker finds a
    negative-binomial number of blocks; from there catching up is gambler's ruin
    with ratio ``q/p``. Summing over the negative binomial collapses to
    ``1 - sum_{m=0}^{z} C(m+z-1, m) (p^z q^m - q^z p^m)``.
    """
    _check_race(q, z)
    if q == 0:
        return 0.0
    if q >= 0.5:
        return 1.0
    p = 1.0 - q
    total = math.fsum(
        math.comb(m + z - 1, m) * (p**z * q**m - q**z * p**m) for m in range(z + 1)
    )
    return 1.0 - total


def double_spend_success(q: float, z: int, trials: int = 100_000, seed: int = 0) -> DoubleSpendEstimate:
    """Monte-Carlo estimate of double-spend success.

    Blocks arrive one at a time and each is the attacker's with probability ``q``.
    The merchant accepts once the honest branch holds ``z`` blocks; the attack
    succeeds if, from then on, the attacker's branch ever catches up with the
    honest one. Runs are abandoned once the attacker is so far behind that the
    remaining catch-up probability is below 1e-15.
    """
    _check_race(q, z)
    if int(trials) != trials or trials < 1:
        raise ValueError("trials must be a positive integer")
    if q == 0:
        return DoubleSpendEstimate(0.0, 0.0, int(trials))
    if q >= 0.5:
        return DoubleSpendEstimate(1.0, 0.0, int(trials))

    rng = np.random.default_rng(seed)
    cutoff = math.ceil(math.log(1e-15) / math.log(q / (1.0 - q)))
    attacker = np.zeros(trials, dtype=np.int64)
    honest = np.zeros(trials, dtype=np.int64)
    active = np.arange(trials)
    successes = 0
    while active.size:
        mine = rng.random(active.size) < q
        attacker[active] += mine
        honest[active] += ~mine
        a, h = attacker[active], honest[active]
        accepted = h >= z
        won = accepted & (a >= h)
        lost = accepted & (h - a > cutoff)
        successes += int(won.sum())
        active = active[~(won | lost)]
    prob = successes / trials
    return DoubleSpendEstimate(prob, math.sqrt(prob * (1.0 - prob) / trials), int(trials))
