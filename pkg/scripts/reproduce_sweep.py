"""Dual-hop sweep: relay moved from 10 m to 90 m, optimal jammer vs the three baselines.

Writes the per-point CSV and prints the dB gap to the best baseline.

    python scripts/reproduce_sweep.py --out results/sweep.csv
"""

import argparse
from pathlib import Path

from uavjam.experiments import rows_to_csv, run_dualhop_sweep, summarize, summary_to_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results/sweep.csv")
    ap.add_argument("--step", type=float, default=5.0)
    ap.add_argument("--y-msi", type=float, default=0.0)
    args = ap.parse_args()

    rows = run_dualhop_sweep(step=args.step, y_msi=args.y_msi)
    text = rows_to_csv(rows)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    out.with_name(out.stem + ".summary.csv").write_text(summary_to_csv(summarize(text)))

    print(f"{'x_u':>6} {'opt dB':>9} {'chase dB':>9} {'random dB':>10} {'middle dB':>10} {'gap dB':>7}")
    for line in text.splitlines()[1:]:
        f = line.split(",")
        print(f"{float(f[0]):6.1f} {float(f[3]):9.3f} {float(f[5]):9.3f} {float(f[8]):10.3f} {float(f[11]):10.3f} {float(f[-1]):7.2f}")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
