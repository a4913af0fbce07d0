"""Run every oracle suite and write per-case rows plus an agreement table."""
import argparse
import csv
from pathlib import Path

from sparse_gpd.checks import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs/oracle")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = []
    for name in sorted(SUITES):
        rows = run_suite(name, args.cases, args.seed)
        with open(out / f"{name}.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
        ok = sum(bool(r["ok"]) for r in rows)
        summary.append((name, len(rows), ok, ok / len(rows)))
        print(f"{name:10s} {ok}/{len(rows)}")

    with open(out / "agreement.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["suite", "cases", "agree", "rate"])
        w.writerows(summary)


if __name__ == "__main__":
    main()
