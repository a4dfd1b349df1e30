"""Fit truncation-error slopes for every expansion sweep and compare with the predicted order."""

import argparse

from humbert.asym import Variant
from humbert.verify import DEFAULT_SWEEPS, SweepSpec, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", default="1,2,3", help="comma-separated truncation orders")
    ap.add_argument("--target", action="append", choices=[v.value for v in DEFAULT_SWEEPS],
                    help="restrict to one expansion (repeatable)")
    args = ap.parse_args()
    orders = tuple(int(n) for n in args.orders.split(","))
    targets = [Variant(t) for t in args.target] if args.target else list(DEFAULT_SWEEPS)
    failed = False
    print(f"{'expansion':>14} {'N':>3} {'slope':>8} {'want':>6}")
    for target in targets:
        rows = run_sweep(SweepSpec.builtin(target, orders))
        for N in orders:
            r = next(row for row in rows if row.N == N)
            failed |= not all(row.ok for row in rows if row.N == N)
            slope = r.fitted_slope if isinstance(r.fitted_slope, str) else f"{r.fitted_slope:+.3f}"
            print(f"{target.value:>14} {N:3d} {slope:>8} {r.expected_slope:+6g}")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
