"""Multi-hop realizations: per-realization SIR_max for the optimum and the baselines.

Default is 20 relays and 20 realizations; pass --n-uavs 5,10,15,20 --count 300
for the relay-count study.

    python scripts/reproduce_realizations.py --out results/realizations.csv
"""

import argparse
from pathlib import Path

from uavjam.experiments import RealizationSpec, rows_to_csv, run_multihop_realizations, summarize, summary_to_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results/realizations.csv")
    ap.add_argument("--n-uavs", default="20")
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--y-msi", type=float, default=0.0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    texts = []
    for n in (int(v) for v in args.n_uavs.split(",")):
        spec = RealizationSpec(n_uavs=n, count=args.count, master_seed=args.seed, y_msi=args.y_msi)
        texts.append(rows_to_csv(run_multihop_realizations(spec, jobs=args.jobs)))
    text = texts[0] + "".join(t.split("\n", 1)[1] for t in texts[1:])

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    summary = summarize(text, group_by="n_uavs")
    out.with_name(out.stem + ".summary.csv").write_text(summary_to_csv(summary))

    print(f"{'N':>4} {'rows':>5} {'vs chase %':>11} {'vs random %':>12} {'vs middle %':>12} {'gap dB':>7}")
    for e in summary:
        print(f"{e['group']:>4} {e['rows']:5d} {e['mean_chase_reduction_pct']:11.2f} "
              f"{e['mean_random_reduction_pct']:12.2f} {e['mean_middle_reduction_pct']:12.2f} {e['mean_gap_best_db']:7.2f}")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
