"""JSON scenario files.

A scenario mirrors the library's dataclasses field for field; nested objects use
the same names as the types they build. Only ``risk`` is required. Every other
section falls back to the defaults below (Bitcoin-like chain: 2016-block
retarget window, 6.25 reward, 21M cap, Grover constant pi/4, clamp 4).

Example::

    {"risk": {"rho": 0.9, "foreign_ytm": 0.02,
              "path": {"baseline_growth": 0.05}}}
"""
from __future__ import annotations

import dataclasses
import json
import types
import typing
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Union

from ..attackgame import ChainProfile
from ..bondmath import ZeroCouponBond
from ..calibrate import QuantumRiskParams
from ..chainsim import SECONDS_PER_YEAR, ChainParams, MinerSpec
from ..fxparity import FxQuote
from ..monetary import LedgerAggregates


class ScenarioError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class DoubleSpendConfig:
    attacker_share: float = 0.3
    confirmations: int = 6
    trials: int = 100_000


@dataclass(frozen=True)
class OutputPaths:
    events: str | None = None
    report: str | None = None


def _default_miners() -> list[MinerSpec]:
    return [MinerSpec("honest", "classical", 1000.0)]


@dataclass
class Scenario:
    risk: QuantumRiskParams
    name: str = "scenario"
    seed: int = 0
    bond: ZeroCouponBond = field(default_factory=lambda: ZeroCouponBond(100.0))
    riskfree_ytm: float = 0.0
    fx: FxQuote | None = None
    ledger: LedgerAggregates | None = None
    dormant_fraction: float = 0.0
    chain: ChainParams = field(default_factory=ChainParams)
    miners: list[MinerSpec] = field(default_factory=_default_miners)
    horizon: float = float(SECONDS_PER_YEAR)
    doublespend: DoubleSpendConfig = field(default_factory=DoubleSpendConfig)
    chains: list[ChainProfile] = field(default_factory=list)
    outputs: OutputPaths = field(default_factory=OutputPaths)

    def __post_init__(self):
        if not 0.0 <= self.dormant_fraction < 1.0:
            raise ValueError("dormant_fraction must be in [0, 1)")
        if not self.horizon > 0:
            raise ValueError("horizon must be positive")
        if not self.miners:
            raise ValueError("miners must not be empty")


def _strip_optional(tp):
    origin = typing.get_origin(tp)
    if origin in (Union, types.UnionType):
        args = [a for a in typing.get_args(tp) if a is not type(None)]
        return args[0] if len(args) == 1 else tp, True
    return tp, False


def _convert(tp, value: Any, path: str):
    tp, optional = _strip_optional(tp)
    if value is None:
        if optional:
            return None
        raise ScenarioError(path, "must not be null")
    if dataclasses.is_dataclass(tp):
        return build(tp, value, path)
    if typing.get_origin(tp) is list:
        if not isinstance(value, list):
            raise ScenarioError(path, "expected a list")
        (item_tp,) = typing.get_args(tp)
        return [_convert(item_tp, v, f"{path}[{i}]") for i, v in enumerate(value)]
    if isinstance(tp, type) and issubclass(tp, Enum):
        try:
            return tp(value)
        except ValueError:
            allowed = ", ".join(m.value for m in tp)
            raise ScenarioError(path, f"expected one of {allowed}, got {value!r}") from None
    if tp is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(path, f"expected a number, got {value!r}")
        return float(value)
    if tp is int:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
            raise ScenarioError(path, f"expected an integer, got {value!r}")
        return int(value)
    if tp is str:
        if not isinstance(value, str):
            raise ScenarioError(path, f"expected a string, got {value!r}")
        return value
    raise ScenarioError(path, f"unsupported field type {tp!r}")


def build(cls, data: Any, path: str = ""):
    """Construct dataclass ``cls`` from a JSON object, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise ScenarioError(path, f"expected an object for {cls.__name__}")
    hints = typing.get_type_hints(cls)
    fields = {f.name: f for f in dataclasses.fields(cls) if f.init}
    unknown = sorted(set(data) - set(fields))
    if unknown:
        where = f"{path}.{unknown[0]}" if path else unknown[0]
        raise ScenarioError(where, "unknown field")
    kwargs = {}
    for name, value in data.items():
        sub = f"{path}.{name}" if path else name
        kwargs[name] = _convert(hints[name], value, sub)
    missing = [
        n for n, f in fields.items()
        if n not in kwargs
        and f.default is dataclasses.MISSING
        and f.default_factory is dataclasses.MISSING
    ]
    if missing:
        where = f"{path}.{missing[0]}" if path else missing[0]
        raise ScenarioError(where, "required field missing")
    try:
        return cls(**kwargs)
    except ScenarioError:
        raise
    except (ValueError, TypeError) as exc:
        raise ScenarioError(path or cls.__name__, str(exc)) from None


def load_scenario(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioError("", f"cannot read scenario {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("", f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return build(Scenario, data)


def _plain(value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def scenario_to_dict(scenario: Scenario) -> dict:
    """Fully resolved scenario, defaults included."""
    return _plain(dataclasses.asdict(scenario))


def dump_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"
