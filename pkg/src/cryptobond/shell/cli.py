"""Command-line entry point.

Every subcommand reads its parameters from ``--config`` (a scenario JSON file)
and lets individual flags override them. Rates are decimal fractions unless they
carry an explicit ``%`` suffix, so ``0.05`` and ``5%`` mean the same thing.

Exit codes: 0 success, 1 validation or usage error, 2 calibration has no solution.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from pathlib import Path

from .. import attackgame, bondmath, calibrate, chainsim, fxparity, monetary
from ..calibrate import NoSolutionError
from .quotes import MarketQuotes, QuotesError, ingest_quotes
from .scenario import Scenario, ScenarioError, load_scenario, scenario_to_dict

SUBCOMMANDS = ("price", "fx", "forecast", "premium", "imply", "statics", "simulate", "doublespend", "game")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def parse_rate(text: str) -> float:
    """Decimal fraction, or a percentage when suffixed with ``%``."""
    text = text.strip()
    try:
        if text.endswith("%"):
            return float(text[:-1]) / 100.0
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rate: {text!r}") from None


def fmt(x: float) -> str:
    return f"{x:.10g}"


def _round(value):
    if isinstance(value, float):
        return float(fmt(value))
    if isinstance(value, dict):
        return {k: _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v) for v in value]
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="scenario JSON file")
    common.add_argument("--quotes", help="quotes CSV (instrument,currency,ytm,date)")
    common.add_argument("--seed", type=int, help="random seed (overrides the scenario)")
    common.add_argument("--out", help="write primary output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="json")

    parser = _Parser(prog="cryptobond", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    def risk_flags(p, *, rho=True):
        if rho:
            p.add_argument("--rho", type=parse_rate, help="survival probability")
        p.add_argument("--mu", type=parse_rate, help="algorithmic issuance growth")
        p.add_argument("--mu-grover", type=parse_rate, help="issuance growth under attack")
        p.add_argument("--inflation", type=parse_rate, help="expected fiat inflation")
        p.add_argument("--volume-growth", type=parse_rate, help="expected transaction volume growth")
        p.add_argument("--foreign-ytm", type=parse_rate, help="quantum-safe bond yield")

    p = add("price", "zero-coupon prices and premium with idiosyncratic quantum risk")
    p.add_argument("--face", type=float)
    p.add_argument("--riskfree-ytm", type=parse_rate)
    p.add_argument("--rho", type=parse_rate)

    p = add("fx", "cross-currency yields and premium under uncovered interest parity")
    p.add_argument("--spot", type=float)
    p.add_argument("--expected-spot", type=float)
    p.add_argument("--regime", choices=[r.value for r in fxparity.Regime])
    p.add_argument("--foreign-ytm", type=parse_rate)
    p.add_argument("--rho", type=parse_rate)

    risk_flags(add("forecast", "expected exchange-rate change from issuance and Grover-expansion"))
    risk_flags(add("premium", "full-model crypto-bond risk premium"))
    risk_flags(add("statics", "premium sensitivities, analytic and finite-difference"))

    p = add("imply", "market-implied survival probability")
    risk_flags(p, rho=False)
    p.add_argument("--premium", type=parse_rate, help="observed premium over the foreign yield")
    p.add_argument("--risky-ytm", type=parse_rate)
    p.add_argument("--riskfree-ytm", type=parse_rate)
    p.add_argument("--spot-change", type=parse_rate, help="use this expected spot change instead of the issuance model")
    p.add_argument("--riskfree", help="instrument id of the benchmark quote")

    p = add("simulate", "proof-of-work chain simulation; prints the block event log")
    p.add_argument("--horizon", type=float, help="simulated seconds")
    p.add_argument("--max-blocks", type=int)

    p = add("doublespend", "double-spend race success probability")
    p.add_argument("--q", type=parse_rate, help="attacker share of hash power")
    p.add_argument("--z", type=int, help="confirmations")
    p.add_argument("--trials", type=int)

    add("game", "attacker targeting and minimax diversification across chains")
    return parser


def _scenario(args) -> Scenario:
    if args.config:
        scenario = load_scenario(args.config)
    else:
        scenario = Scenario(risk=calibrate.QuantumRiskParams(1.0))
    if args.seed is not None:
        scenario.seed = args.seed
    return scenario


def _opt(args, name):
    return getattr(args, name, None)


def _risk(args, scenario: Scenario) -> calibrate.QuantumRiskParams:
    base = scenario.risk
    path = base.path
    mu = _opt(args, "mu")
    mu_g = _opt(args, "mu_grover")
    if mu is not None and mu_g is None and path.grover_growth == path.baseline_growth:
        mu_g = mu
    path = monetary.IssuancePath(
        baseline_growth=path.baseline_growth if mu is None else mu,
        grover_growth=path.grover_growth if mu_g is None else mu_g,
        expected_fiat_inflation=_first(_opt(args, "inflation"), path.expected_fiat_inflation),
        expected_volume_growth=_first(_opt(args, "volume_growth"), path.expected_volume_growth),
    )
    return calibrate.QuantumRiskParams(
        rho=_first(_opt(args, "rho"), base.rho),
        path=path,
        foreign_ytm=_first(_opt(args, "foreign_ytm"), base.foreign_ytm),
    )


def _first(value, default):
    return default if value is None else value


def cmd_price(args, scenario):
    bond = scenario.bond
    if args.face is not None:
        bond = bondmath.ZeroCouponBond(args.face, bond.currency)
    i = _first(args.riskfree_ytm, scenario.riskfree_ytm)
    rho = _first(args.rho, scenario.risk.rho)
    return {
        "face_value": bond.face_value,
        "currency": bond.currency,
        "riskfree_ytm": i,
        "rho": rho,
        "price_riskfree": bondmath.price_riskfree(bond, i),
        "risky_ytm": bondmath.risky_yield(i, rho),
        "price_risky": bondmath.price_risky(bond, i, rho),
        "risk_premium": bondmath.risk_premium_idiosyncratic(i, rho),
    }


def cmd_fx(args, scenario):
    fx = scenario.fx or fxparity.FxQuote(1.0, 1.0)
    regime = _first(args.regime, fx.regime)
    spot = _first(args.spot, fx.spot)
    expected = _first(args.expected_spot, spot if regime == "fixed-peg" else fx.expected_spot)
    fx = fxparity.FxQuote(spot, expected, regime)
    i_star = _first(args.foreign_ytm, scenario.risk.foreign_ytm)
    rho = _first(args.rho, scenario.risk.rho)
    i_hat = fxparity.risky_yield_fx(fx, i_star, rho)
    return {
        "spot": fx.spot,
        "expected_spot": fx.expected_spot,
        "regime": fx.regime.value,
        "foreign_ytm": i_star,
        "rho": rho,
        "spot_change": fx.spot_change,
        "uip_domestic_ytm": fxparity.uip_domestic_yield(fx, i_star),
        "risky_ytm": i_hat,
        "equilibrium_spot_change": fxparity.equilibrium_spot_change(i_hat, i_star, rho),
        "risk_premium": fxparity.risk_premium_fx(i_star, fx.spot_change, rho),
    }


def cmd_forecast(args, scenario):
    params = _risk(args, scenario)
    path = params.path
    report = {
        "baseline_growth": path.baseline_growth,
        "grover_growth": path.grover_growth,
        "expected_fiat_inflation": path.expected_fiat_inflation,
        "expected_volume_growth": path.expected_volume_growth,
        "rho": params.rho,
        "spot_change_exact": monetary.expected_spot_change_full(path),
        "spot_change_approx": (
            monetary.expected_spot_change_approx(path) if path.expected_volume_growth == 0 else None
        ),
    }
    exact, approx = monetary.grover_spot_change(path, params.rho)
    report["grover_spot_change_exact"] = exact
    report["grover_spot_change_approx"] = approx
    if scenario.ledger is not None:
        ledger = monetary.apply_supply_shock(scenario.ledger, scenario.dormant_fraction)
        forecast = monetary.expected_spot_with_grover(path, params.rho, ledger)
        report.update(
            money_supply=ledger.money_supply,
            spot=monetary.quantity_spot_rate(ledger),
            crypto_price_level=monetary.ppp_price_level(
                ledger.fiat_price_level, monetary.quantity_spot_rate(ledger)
            ),
            expected_spot=forecast.expected_spot,
            spot_if_safe=forecast.spot_if_safe,
            spot_if_attacked=forecast.spot_if_attacked,
        )
    return report


def cmd_premium(args, scenario):
    params = _risk(args, scenario)
    path = params.path
    return {
        "rho": params.rho,
        "baseline_growth": path.baseline_growth,
        "grover_growth": path.grover_growth,
        "expected_fiat_inflation": path.expected_fiat_inflation,
        "foreign_ytm": params.foreign_ytm,
        "risk_premium": calibrate.risk_premium_full(params),
        "risky_ytm": params.foreign_ytm + calibrate.risk_premium_full(params),
    }


def cmd_statics(args, scenario):
    params = _risk(args, scenario)
    report = calibrate.comparative_statics(params)
    return {
        name: {"analytic": s.analytic, "finite_difference": s.finite_difference, "relative_gap": s.relative_gap}
        for name, s in report.items()
    }


def _imply_one(premium, params, spot_change):
    if spot_change is not None:
        return calibrate.implied_survival_fx(premium, spot_change, params.foreign_ytm), "fx"
    return calibrate.implied_survival_full(premium, params.path, params.foreign_ytm), "full"


def cmd_imply(args, scenario):
    params = _risk(args, scenario)
    if args.quotes:
        quotes = ingest_quotes(args.quotes, fiat_inflation=args.inflation)
        return {"rows": _imply_quotes(quotes, args, params)}
    if args.risky_ytm is not None and args.riskfree_ytm is not None:
        rho = calibrate.implied_survival_idiosyncratic(args.risky_ytm, args.riskfree_ytm)
        return {"method": "idiosyncratic", "rho": rho, "failure_probability": 1.0 - rho}
    if args.premium is None:
        raise UsageError("imply needs --quotes, --premium, or --risky-ytm with --riskfree-ytm")
    rho, method = _imply_one(args.premium, params, args.spot_change)
    return {"method": method, "premium": args.premium, "rho": rho, "failure_probability": 1.0 - rho}


def _imply_quotes(quotes: MarketQuotes, args, params) -> list[dict]:
    if len(quotes) < 2:
        raise QuotesError("need a benchmark quote and at least one risky quote")
    if args.riskfree:
        try:
            bench = quotes.get(args.riskfree)
        except KeyError:
            raise QuotesError(f"benchmark instrument {args.riskfree!r} not in quotes") from None
    else:
        bench = min(quotes.rows, key=lambda q: q.ytm)
    if quotes.fiat_inflation is not None:
        params = dataclasses.replace(
            params, path=dataclasses.replace(params.path, expected_fiat_inflation=quotes.fiat_inflation)
        )
    rows = []
    for q in quotes.rows:
        if q is bench:
            continue
        premium = q.ytm - bench.ytm
        if q.currency == bench.currency:
            rho, method = calibrate.implied_survival_idiosyncratic(q.ytm, bench.ytm), "idiosyncratic"
        else:
            foreign = dataclasses.replace(params, foreign_ytm=bench.ytm)
            rho, method = _imply_one(premium, foreign, args.spot_change)
        rows.append({
            "instrument": q.instrument,
            "currency": q.currency,
            "ytm": q.ytm,
            "benchmark": bench.instrument,
            "premium": premium,
            "method": method,
            "rho": rho,
            "failure_probability": 1.0 - rho,
        })
    return rows


def cmd_simulate(args, scenario):
    horizon = _first(args.horizon, scenario.horizon)
    outcome = chainsim.simulate_chain(
        scenario.chain, scenario.miners, horizon, scenario.seed, max_blocks=args.max_blocks
    )
    return outcome


def _simulation_summary(outcome: chainsim.SimOutcome) -> dict:
    return {
        "blocks_mined": len(outcome.blocks),
        "minted": outcome.minted,
        "realized_issuance_rate": outcome.realized_issuance_rate,
        "final_difficulty": outcome.final_difficulty,
        "wins": dict(outcome.wins),
        "window_mean_intervals": list(outcome.window_mean_intervals),
        "window_issuance": list(outcome.window_issuance),
    }


def cmd_doublespend(args, scenario):
    cfg = scenario.doublespend
    q = _first(args.q, cfg.attacker_share)
    z = _first(args.z, cfg.confirmations)
    trials = _first(args.trials, cfg.trials)
    est = chainsim.double_spend_success(q, z, trials, scenario.seed)
    return {
        "attacker_share": q,
        "confirmations": z,
        "trials": est.trials,
        "probability": est.probability,
        "stderr": est.stderr,
        "oracle": chainsim.double_spend_oracle(q, z),
    }


def cmd_game(args, scenario):
    chains = scenario.chains
    if not chains:
        raise ScenarioError("chains", "game needs at least one chain profile")
    params = _risk(args, scenario)
    benefits = attackgame.attacker_expected_benefits(chains)
    premia = attackgame.market_premia(chains, params.path, params.foreign_ytm)
    portfolio, value = attackgame.minimax_diversification(chains)
    return {
        "best_target": attackgame.attacker_best_target(chains),
        "game_value": value,
        "chains": [
            {
                "id": c.id,
                "expected_benefit": b,
                "survival_prob": c.survival_prob,
                "risk_premium": r,
                "weight": w,
            }
            for c, b, r, w in zip(chains, benefits, premia, portfolio.weights)
        ],
    }


HANDLERS = {
    "price": cmd_price,
    "fx": cmd_fx,
    "forecast": cmd_forecast,
    "premium": cmd_premium,
    "imply": cmd_imply,
    "statics": cmd_statics,
    "simulate": cmd_simulate,
    "doublespend": cmd_doublespend,
    "game": cmd_game,
}


def _flatten(report: dict, prefix: str = ""):
    for key, value in report.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, f"{name}.")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                yield from _flatten(item, f"{name}[{i}].")
        elif isinstance(value, list):
            yield name, ";".join(fmt(v) if isinstance(v, float) else str(v) for v in value)
        elif isinstance(value, float):
            yield name, fmt(value)
        else:
            yield name, "" if value is None else str(value)


def render(command: str, result, scenario: Scenario, fmt_name: str) -> str:
    if command == "simulate":
        if fmt_name == "csv":
            return chainsim.event_log_text(result)
        doc = _simulation_summary(result)
        doc["blocks"] = [dataclasses.asdict(b) for b in result.blocks]
        result = doc
    if fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("field", "value"))
        writer.writerows(_flatten(result))
        return buf.getvalue()
    doc = {"command": command, "scenario": scenario_to_dict(scenario), "result": _round(result)}
    return json.dumps(doc, indent=2) + "\n"


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        scenario = _scenario(args)
        result = HANDLERS[args.command](args, scenario)
        text = render(args.command, result, scenario, args.format)
    except NoSolutionError as exc:
        print(f"no solution: {exc}", file=stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (ScenarioError, QuotesError, ValueError) as exc:
        print(f"invalid input: {exc}", file=stderr)
        return 1
    out = args.out
    if out is None and args.command == "simulate" and args.format == "csv":
        out = scenario.outputs.events
    if out is None and args.command != "simulate":
        out = scenario.outputs.report
    if out:
        Path(out).write_text(text)
    else:
        stdout.write(text)
    return 0


def main(argv=None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
