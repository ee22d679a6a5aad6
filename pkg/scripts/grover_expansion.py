"""Measure Grover-expansion by simulation and push it through the pricing model.

Runs the same chain for one year with and without a quantum miner, turns the
minted totals into issuance growth rates, then reports the expected exchange-rate
change and crypto-bond premium over a range of survival probabilities.

    python scripts/grover_expansion.py --quantum-rate 1e4 --seed 3
"""
import argparse
import csv
import sys

from cryptobond.calibrate import QuantumRiskParams, risk_premium_full
from cryptobond.chainsim import SECONDS_PER_YEAR, ChainParams, MinerSpec, realized_grover_expansion, simulate_chain
from cryptobond.monetary import IssuancePath, grover_spot_change


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--difficulty", type=float, default=6e11)
    ap.add_argument("--honest-rate", type=float, default=1e9)
    ap.add_argument("--quantum-rate", type=float, default=1e4)
    ap.add_argument("--inflation", type=float, default=0.02)
    ap.add_argument("--foreign-ytm", type=float, default=0.02)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    params = ChainParams(initial_difficulty=args.difficulty)
    honest = MinerSpec("honest", "classical", args.honest_rate)
    quantum = MinerSpec("grover", "quantum", args.quantum_rate)
    base = simulate_chain(params, [honest], SECONDS_PER_YEAR, args.seed)
    attacked = simulate_chain(params, [honest, quantum], SECONDS_PER_YEAR, args.seed)

    mu = base.minted / params.initial_supply
    mu_g = max(realized_grover_expansion(base, attacked), mu)
    print(f"baseline: {len(base.blocks)} blocks, mu = {mu:.6f}", file=sys.stderr)
    print(
        f"attacked: {len(attacked.blocks)} blocks, attacker won {attacked.wins['grover']}, "
        f"muG = {mu_g:.6f}",
        file=sys.stderr,
    )

    path = IssuancePath(mu, mu_g, args.inflation)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["rho", "spot_change_exact", "spot_change_approx", "risk_premium"])
    for k in range(10, 0, -1):
        rho = k / 10
        exact, approx = grover_spot_change(path, rho)
        premium = risk_premium_full(QuantumRiskParams(rho, path, args.foreign_ytm))
        writer.writerow([rho, f"{exact:.10g}", f"{approx:.10g}", f"{premium:.10g}"])


if __name__ == "__main__":
    main()
