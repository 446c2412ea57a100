"""Command-line entry point: ``moeaad {run,experiment,hv,stats,weights}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from ..engine import ALGORITHMS, VARIANTS
from ..metrics import HvConfig, hypervolume, normalize_for_hv
from ..problems import make_problem
from ..weights import default_weights, generate_weights, write_weights_csv
from .experiment import ExperimentConfig, run_experiment
from .report import stats_report


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _add_batch_flags(p: argparse.ArgumentParser, *, single: bool) -> None:
    p.add_argument("--config", type=Path, help="JSON experiment config; flags override its fields")
    p.add_argument("--problem", help="e.g. dtlz2 or minus-wfg4")
    p.add_argument("--objectives", type=int, help="number of objectives m")
    p.add_argument("--algorithm", choices=ALGORITHMS)
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=_u64, help="batch seed (seed_base)")
    p.add_argument("--generations", type=int, help="override the budget table")
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", type=Path)
    p.add_argument("--hv-samples", type=int, help="Monte Carlo samples for m > 5")
    p.set_defaults(single=single)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="moeaad", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    _add_batch_flags(sub.add_parser("run", help="runs of one (problem, m, algorithm) cell"), single=True)
    _add_batch_flags(sub.add_parser("experiment", help="batch from a JSON config"), single=False)

    hv = sub.add_parser("hv", help="hypervolume of a CSV point file")
    hv.add_argument("points", type=Path, help="CSV of objective vectors; a header row is skipped")
    hv.add_argument("--problem", help="normalize with this problem's front bounds first")
    hv.add_argument("--objectives", type=int)
    hv.add_argument("--columns", choices=("all", "last-m"), default="all", help="last-m reads population CSVs")
    hv.add_argument("--mode", choices=("exact", "monte_carlo"), default="exact")
    hv.add_argument("--samples", type=int, default=1_000_000)
    hv.add_argument("--seed", type=_u64, default=0)
    hv.add_argument("--reference", type=float, nargs="+", help="reference point (default: 2 per objective)")

    st = sub.add_parser("stats", help="Wilcoxon flags and performance scores for a results tree")
    st.add_argument("results", type=Path)
    st.add_argument("--reference", help="algorithm label compared against (default moea_ad)")
    st.add_argument("--alpha", type=float, default=0.05)
    st.add_argument("--out", type=Path)

    w = sub.add_parser("weights", help="export a weight set as CSV")
    w.add_argument("--objectives", type=int, required=True)
    w.add_argument("--h1", type=int)
    w.add_argument("--h2", type=int, default=0)
    w.add_argument("--tau", type=float, default=0.5)
    w.add_argument("--centroid", action="store_true")
    w.add_argument("--out", type=Path, help="file to write (default stdout)")
    return ap


def _experiment_config(args) -> ExperimentConfig:
    base = json.loads(args.config.read_text()) if args.config else {}
    if args.problem or args.objectives:
        if not (args.problem and args.objectives):
            raise ValueError("--problem and --objectives go together")
        base["problems"] = [[args.problem, args.objectives]]
    if args.single and "problems" not in base:
        raise ValueError("run needs --problem and --objectives (or a config)")
    if args.algorithm or args.variant:
        templates = base.get("algorithms") or [{}]
        new = []
        for t in templates:
            t = dict(t) if isinstance(t, dict) else {"algorithm": t}
            if args.algorithm:
                t["algorithm"] = args.algorithm
            if args.variant:
                t["variant"] = args.variant
            new.append(t)
        base["algorithms"] = new[:1] if args.single else new
    elif args.single and len(base.get("algorithms", [])) > 1:
        base["algorithms"] = base["algorithms"][:1]
    for flag, key in (
        ("runs", "runs"),
        ("seed", "seed_base"),
        ("generations", "generations"),
        ("jobs", "jobs"),
        ("hv_samples", "hv_samples"),
    ):
        if getattr(args, flag) is not None:
            base[key] = getattr(args, flag)
    if args.out is not None:
        base["output_dir"] = str(args.out)
    if "problems" not in base:
        raise ValueError("no problems given")
    return ExperimentConfig.from_dict(base)


def _cmd_batch(args) -> int:
    cfg = _experiment_config(args)

    def progress(o):
        tag = f"{o.cell.problem} m={o.cell.m} {o.cell.config.label} run {o.cell.run}"
        if o.ok:
            print(f"{tag}: hv={o.manifest['hv_selected']:.6g} ({o.manifest['wall_time']:.1f}s)", flush=True)
        else:
            print(f"{tag}: FAILED {o.manifest['error']}", file=sys.stderr, flush=True)

    outcomes = run_experiment(cfg, progress)
    failed = sum(not o.ok for o in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} cells ok; summary in {Path(cfg.output_dir) / 'summary.csv'}")
    return 1 if failed else 0


def _read_points(path: Path) -> np.ndarray:
    with path.open() as fh:
        first = fh.readline()
    skip = 0 if first and all(_is_number(t) for t in first.strip().split(",")) else 1
    data = np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2)
    return data


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _cmd_hv(args) -> int:
    P = _read_points(args.points)
    m = args.objectives
    if args.columns == "last-m":
        if m is None:
            raise ValueError("--columns last-m needs --objectives")
        P = P[:, -m:]
    if args.problem:
        P = normalize_for_hv(P, make_problem(args.problem, m or P.shape[1]))
    cfg = HvConfig(
        reference=tuple(args.reference) if args.reference else None,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
    )
    print(repr(float(hypervolume(P, cfg))))
    return 0


def _cmd_stats(args) -> int:
    paths = stats_report(args.results, args.reference, args.alpha, args.out)
    for name, p in paths.items():
        print(f"{name}: {p}")
    return 0


def _cmd_weights(args) -> int:
    if args.h1 is None:
        ws = default_weights(args.objectives)
    else:
        ws = generate_weights(args.objectives, args.h1, args.h2, args.tau, args.centroid)
    if args.out is None:
        np.savetxt(sys.stdout, ws.vectors, delimiter=",", fmt="%.17g")
    else:
        write_weights_csv(ws, args.out)
        print(f"{len(ws)} weight vectors written to {args.out}")
    return 0


COMMANDS = {"run": _cmd_batch, "experiment": _cmd_batch, "hv": _cmd_hv, "stats": _cmd_stats, "weights": _cmd_weights}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"moeaad: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
