"""Significance flags and performance scores over a finished experiment tree."""

from __future__ import annotations

import csv
import warnings
from pathlib import Path

import numpy as np

from ..metrics import ScoreMatrix, performance_score
from ..stats import wilcoxon_rank_sum
from .experiment import load_manifests

DEFAULT_REFERENCE = "moea_ad"


def _write(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def collect(results_dir) -> dict[tuple[str, int], dict[str, np.ndarray]]:
    """Selected HV per run, grouped as {(problem, m): {algorithm: values ordered by run}}."""
    cells: dict[tuple[str, int], dict[str, list[tuple[int, float]]]] = {}
    for man in load_manifests(results_dir):
        if man.get("status") != "ok":
            continue
        cells.setdefault((man["problem"], int(man["m"])), {}).setdefault(man["algorithm"], []).append(
            (int(man["run"]), float(man["hv_selected"]))
        )
    return {
        key: {alg: np.array([v for _, v in sorted(vals)]) for alg, vals in sorted(algs.items())}
        for key, algs in sorted(cells.items())
    }


def score_matrix(samples: dict[str, np.ndarray], alpha: float = 0.05) -> ScoreMatrix:
    labels = tuple(samples)
    K = len(labels)
    wins = np.zeros((K, K), dtype=bool)
    for i in range(K):
        for j in range(i + 1, K):
            res = wilcoxon_rank_sum(samples[labels[i]], samples[labels[j]], alpha)
            wins[i, j] = res.a_better
            wins[j, i] = res.b_better
    return ScoreMatrix(wins, labels)


def stats_report(results_dir, reference: str | None = None, alpha: float = 0.05, out_dir=None) -> dict[str, Path]:
    """Write wilcoxon.csv, score_matrix.csv, scores.csv and average_scores.csv; returns their paths.

    Flags in wilcoxon.csv read from the competitor's side: ``+`` it beats the
    reference, ``-`` the reference beats it, ``=`` no significant difference.
    """
    out = Path(results_dir if out_dir is None else out_dir)
    out.mkdir(parents=True, exist_ok=True)
    data = collect(results_dir)
    flag_rows, matrix_rows, score_rows = [], [], []
    per_m: dict[int, dict[str, list[int]]] = {}
    overall: dict[str, list[int]] = {}
    for (problem, m), samples in data.items():
        small = [a for a, v in samples.items() if v.size < 2]
        if small:
            warnings.warn(f"skipping {problem} m={m}: fewer than 2 runs for {', '.join(small)}", stacklevel=2)
            continue
        ref = reference or (DEFAULT_REFERENCE if DEFAULT_REFERENCE in samples else next(iter(samples)))
        if ref in samples:
            for alg, vals in samples.items():
                if alg == ref:
                    continue
                res = wilcoxon_rank_sum(vals, samples[ref], alpha)
                flag = "+" if res.a_better else "-" if res.b_better else "="
                flag_rows.append([problem, m, alg, ref, repr(res.p_value), flag])
        sm = score_matrix(samples, alpha)
        for j, winner in enumerate(sm.labels):
            for i, loser in enumerate(sm.labels):
                if sm.wins[j, i]:
                    matrix_rows.append([problem, m, winner, loser])
        for alg, s in zip(sm.labels, performance_score(sm)):
            score_rows.append([problem, m, alg, int(s)])
            per_m.setdefault(m, {}).setdefault(alg, []).append(int(s))
            overall.setdefault(alg, []).append(int(s))

    avg_rows = []
    for m in sorted(per_m):
        for alg in sorted(per_m[m]):
            avg_rows.append([m, alg, repr(float(np.mean(per_m[m][alg]))), len(per_m[m][alg])])
    for alg in sorted(overall):
        avg_rows.append(["all", alg, repr(float(np.mean(overall[alg]))), len(overall[alg])])

    paths = {
        "wilcoxon": out / "wilcoxon.csv",
        "score_matrix": out / "score_matrix.csv",
        "scores": out / "scores.csv",
        "average_scores": out / "average_scores.csv",
    }
    _write(paths["wilcoxon"], ["problem", "m", "algorithm", "reference", "p_value", "flag"], flag_rows)
    _write(paths["score_matrix"], ["problem", "m", "winner", "loser"], matrix_rows)
    _write(paths["scores"], ["problem", "m", "algorithm", "score"], score_rows)
    _write(paths["average_scores"], ["m", "algorithm", "average_score", "instances"], avg_rows)
    return paths
