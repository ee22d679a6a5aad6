"""Double-spend success: Monte-Carlo estimate next to the closed form."""
import argparse

from cryptobond.chainsim import double_spend_oracle, double_spend_success


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"{'q':>5} {'z':>3} {'monte carlo':>12} {'stderr':>9} {'closed form':>12}")
    for q in (0.1, 0.2, 0.3, 0.4, 0.45):
        for z in (1, 2, 4, 6, 10):
            est = double_spend_success(q, z, args.trials, args.seed)
            print(f"{q:5.2f} {z:3d} {est.probability:12.6f} {est.stderr:9.6f} {double_spend_oracle(q, z):12.6f}")


if __name__ == "__main__":
    main()
