"""Print both ratio tables next to their published values."""

import argparse

from humbert.verify import TableSpec, run_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--method", default="integral", help="Psi1 evaluator for the numerator")
    args = ap.parse_args()
    failed = False
    for table_id in (1, 2):
        spec = TableSpec.builtin(table_id)
        p = spec.params
        shown = ", ".join(f"{v.real:g}" for v in (p.a, p.b, p.c, p.c_prime))
        print(f"table {table_id}: (a, b, c, c') = ({shown}), gamma = {spec.gamma:g}")
        print(f"{'x':>8} {'ratio':>10} {'printed':>10} {'gap':>9}  method")
        for r in run_table(spec, args.method):
            gap = abs(r.ratio - r.expected)
            failed |= not r.ok
            print(f"{r.x:8g} {r.ratio:10.6f} {r.expected:10.5f} {gap:9.1e}  {r.method}")
        print()
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
