"""Regenerate the shipped HV normalization table for the minus problems.

    python3 scripts/compute_minus_bounds.py [--samples 1000000] [--out PATH]
"""

import argparse
import time
from pathlib import Path

import numpy as np

from moeaad.problems import PLAIN_NAMES, make_problem
from moeaad.problems.bounds import DEFAULT_SAMPLES, oracle_bounds

OBJECTIVES = (3, 5, 8, 10, 15)
DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "moeaad" / "problems" / "data" / "minus_bounds.csv"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args(argv)

    lines = [
        f"# ideal/nadir of the negated fronts: {args.samples} uniform samples, box vertices,",
        "# DTLZ g-maximizer corners and per-objective coordinate search; seed "
        f"{args.seed}; regenerate with scripts/compute_minus_bounds.py",
        "problem,m,ideal...,nadir...",
    ]
    for base in PLAIN_NAMES:
        for m in OBJECTIVES:
            start = time.perf_counter()
            p = make_problem(f"minus-{base}", m)
            b = oracle_bounds(p, args.samples, args.seed)
            values = np.concatenate([b.ideal, b.nadir])
            lines.append(",".join([p.name, str(m)] + [repr(float(v)) for v in values]))
            print(f"{p.name:12s} m={m:2d} {time.perf_counter() - start:6.1f}s", flush=True)
    args.out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
