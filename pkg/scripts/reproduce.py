"""Desk-scale reproduction batch: the acceptance runs plus their statistics report.

    python3 scripts/reproduce.py [--out results] [--runs 31] [--jobs 1] [--skip-ablation]

Writes one results tree per block under ``--out`` and prints each block's
summary rows. Equivalent to a sequence of ``moeaad experiment`` calls.
"""

import argparse
import csv
from pathlib import Path

from moeaad.engine import AlgorithmConfig
from moeaad.harness import ExperimentConfig, run_experiment, stats_report

BLOCKS = {
    "dtlz_m3": dict(
        problems=(("dtlz2", 3), ("dtlz1", 3), ("minus-dtlz2", 3)),
        algorithms=(AlgorithmConfig(), AlgorithmConfig(algorithm="moead_pbi"), AlgorithmConfig(algorithm="moead_ipbi")),
    ),
    "ablation": dict(
        problems=(("dtlz3", 5),),
        algorithms=tuple(AlgorithmConfig(variant=v) for v in ("full", "v1", "v2", "v3")),
    ),
    "high_m": dict(problems=(("dtlz2", 10),), algorithms=(AlgorithmConfig(),), runs=3),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--runs", type=int, default=31)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-ablation", action="store_true")
    args = ap.parse_args(argv)

    for name, block in BLOCKS.items():
        if name == "ablation" and args.skip_ablation:
            continue
        kw = {"runs": args.runs, **block}
        out = args.out / name
        run_experiment(ExperimentConfig(seed_base=args.seed, jobs=args.jobs, output_dir=str(out), **kw))
        stats_report(out, reference="moea_ad")
        with open(out / "summary.csv") as fh:
            for row in csv.DictReader(fh):
                print(f"{name:9s} {row['problem']:12s} m={row['m']:>2s} {row['algorithm']:12s} "
                      f"runs={row['runs']:>2s} mean={float(row['mean_hv']):.4f} sd={float(row['std_hv']):.2e}")


if __name__ == "__main__":
    main()
