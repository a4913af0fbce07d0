"""Sparsify a grid domain over several seeds and save traces (and a plot).

    python3 scripts/desk_sparsify.py --nxy 4 --nsides 2 --m 8 --epochs 200 --seeds 10
"""
import argparse
import csv
from pathlib import Path

import numpy as np

from sparse_gpd import OptimConfig, grid_domain, io, optimize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nxy", type=int, default=4)
    ap.add_argument("--nsides", type=int, default=2)
    ap.add_argument("--m", type=int, default=8)
    ap.add_argument("--epochs", type=int, default=200)
    ap.add_argument("--lr", type=float, default=1e-3)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--out", default="runs/desk")
    ap.add_argument("--plot", action="store_true", help="write loss.png (needs matplotlib)")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    full = grid_domain(counts=(args.nxy, args.nsides), name=f"grid{args.nxy}x{args.nsides}")
    io.write_domain(full, out / "full.json")

    traces = []
    with open(out / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["seed", "initial", "best", "best_epoch", "seconds"])
        for seed in range(args.seeds):
            cfg = OptimConfig(m=args.m, epochs=args.epochs, learning_rate=args.lr, seed=seed)
            best, trace = optimize(full, cfg)
            io.write_domain(best, out / f"sparse_seed{seed}.json")
            io.write_trace_csv(trace, out / f"trace_seed{seed}.csv")
            traces.append(trace.losses)
            w.writerow([seed, trace.losses[0], trace.best, int(np.argmin(trace.losses)),
                        round(trace.seconds[-1], 3)])
            print(f"seed {seed}: {trace.losses[0]:.4f} -> {trace.best:.4f}")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 3.5))
        for seed, losses in enumerate(traces):
            ax.plot(losses, lw=0.8, label=f"seed {seed}" if seed < 5 else None)
        ax.set_xlabel("epoch")
        ax.set_ylabel("loss")
        ax.set_title(f"n={len(full)}, m={args.m}")
        ax.legend(fontsize=7)
        fig.tight_layout()
        fig.savefig(out / "loss.png", dpi=150)


if __name__ == "__main__":
    main()
