"""Batch execution of (problem, m, algorithm, run) cells and their on-disk layout.

Layout under ``output_dir``::

    <problem>_m<m>/<label>/run_<r>/pop_d.csv, pop_c.csv, manifest.json
    summary.csv

Every cell's seed is a pure function of the batch seed and the cell key, so
any single run can be reproduced without the rest of the batch.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ..engine import AlgorithmConfig, RunResult, run_algorithm
from ..metrics import default_hv_config, normalized_hv
from ..problems import make_problem
from .budgets import resolve_generations

log = logging.getLogger(__name__)

SUMMARY_FILE = "summary.csv"
MANIFEST_FILE = "manifest.json"


@dataclass(frozen=True)
class ExperimentConfig:
    """``generations=None`` looks every problem up in the budget table."""

    problems: tuple[tuple[str, int], ...]
    algorithms: tuple[AlgorithmConfig, ...] = (AlgorithmConfig(),)
    runs: int = 31
    seed_base: int = 0
    generations: int | None = None
    output_dir: str = "results"
    hv_samples: int = 1_000_000
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "problems", tuple((str(p), int(m)) for p, m in self.problems))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not self.problems or not self.algorithms:
            raise ValueError("need at least one problem and one algorithm")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        for name, m in self.problems:
            make_problem(name, m)
            if self.generations is None:
                resolve_generations(name, m)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        if "algorithms" in d:
            d["algorithms"] = tuple(
                AlgorithmConfig(**a) if isinstance(a, dict) else AlgorithmConfig(algorithm=a) for a in d["algorithms"]
            )
        if "problems" in d:
            d["problems"] = tuple(tuple(p) for p in d["problems"])
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["problems"] = [list(p) for p in self.problems]
        return d

    def generations_for(self, name: str, m: int) -> int:
        return resolve_generations(name, m) if self.generations is None else self.generations


def derive_seed(seed_base: int, problem: str, m: int, label: str, run: int) -> int:
    """64-bit seed from the batch seed and the cell key (stable across processes and platforms)."""
    key = f"{problem}|{m}|{label}|{run}".encode()
    h = int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")
    return (h ^ (int(seed_base) * 0x9E3779B97F4A7C15)) % 2**64


@dataclass(frozen=True)
class Cell:
    problem: str
    m: int
    config: AlgorithmConfig
    run: int
    hv_samples: int
    directory: str


@dataclass
class CellOutcome:
    cell: Cell
    ok: bool
    manifest: dict = field(default_factory=dict)


def cells(cfg: ExperimentConfig) -> list[Cell]:
    out = []
    root = Path(cfg.output_dir)
    for name, m in cfg.problems:
        gens = cfg.generations_for(name, m)
        for template in cfg.algorithms:
            for r in range(cfg.runs):
                seed = derive_seed(cfg.seed_base, name, m, template.label, r)
                conf = template.with_(generations=gens, seed=seed)
                where = root / f"{name}_m{m}" / template.label / f"run_{r:03d}"
                out.append(Cell(name, m, conf, r, cfg.hv_samples, str(where)))
    return out


def _write_population(path: Path, X: np.ndarray, F: np.ndarray) -> None:
    header = ",".join([f"x{i + 1}" for i in range(X.shape[1])] + [f"f{i + 1}" for i in range(F.shape[1])])
    np.savetxt(path, np.hstack([X, F]), delimiter=",", header=header, comments="", fmt="%.17g")


def score_result(result: RunResult, problem, hv_samples: int) -> RunResult:
    hv_cfg = default_hv_config(problem.m, samples=hv_samples, seed=result.seed)
    return result.with_hv(normalized_hv(result.F_d, problem, hv_cfg), normalized_hv(result.F_c, problem, hv_cfg))


def persist(result: RunResult, directory: Path, run: int) -> dict:
    directory.mkdir(parents=True, exist_ok=True)
    _write_population(directory / "pop_d.csv", result.X_d, result.F_d)
    _write_population(directory / "pop_c.csv", result.X_c, result.F_c)
    manifest = {
        "status": "ok",
        "problem": result.problem,
        "m": result.m,
        "algorithm": AlgorithmConfig(**result.config).label,
        "run": run,
        "seed": result.seed,
        "config": result.config,
        "generations": result.generations,
        "evaluations": result.evaluations,
        "hv_d": result.hv_d,
        "hv_c": result.hv_c,
        "hv_selected": result.hv_selected,
        "selected_population": result.selected_population,
        "wall_time": result.wall_time,
    }
    (directory / MANIFEST_FILE).write_text(json.dumps(manifest, indent=2))
    return manifest


def execute_cell(cell: Cell) -> CellOutcome:
    """Run, score and persist one cell; failures are recorded in the manifest instead of raised."""
    directory = Path(cell.directory)
    try:
        problem = make_problem(cell.problem, cell.m)
        result = score_result(run_algorithm(problem, cell.config), problem, cell.hv_samples)
        return CellOutcome(cell, True, persist(result, directory, cell.run))
    except Exception as exc:  # noqa: BLE001 - batch keeps going
        directory.mkdir(parents=True, exist_ok=True)
        manifest = {
            "status": "failed",
            "problem": cell.problem,
            "m": cell.m,
            "algorithm": cell.config.label,
            "run": cell.run,
            "seed": cell.config.seed,
            "config": cell.config.to_dict(),
            "error": f"{type(exc).__name__}: {exc}",
            "traceback": traceback.format_exc(),
        }
        (directory / MANIFEST_FILE).write_text(json.dumps(manifest, indent=2))
        log.error("cell %s m=%d %s run %d failed: %s", cell.problem, cell.m, cell.config.label, cell.run, exc)
        return CellOutcome(cell, False, manifest)


def write_summary(manifests: list[dict], path: Path) -> list[dict]:
    groups: dict[tuple[str, int, str], list[float]] = {}
    for man in manifests:
        if man.get("status") == "ok":
            groups.setdefault((man["problem"], int(man["m"]), man["algorithm"]), []).append(man["hv_selected"])
    rows = []
    for key in sorted(groups):
        hv = np.array(groups[key])
        rows.append(
            {
                "problem": key[0],
                "m": key[1],
                "algorithm": key[2],
                "runs": hv.size,
                "mean_hv": float(hv.mean()),
                "std_hv": float(hv.std(ddof=1)) if hv.size > 1 else 0.0,
                "median_hv": float(np.median(hv)),
            }
        )
    lines = ["problem,m,algorithm,runs,mean_hv,std_hv,median_hv"]
    for r in rows:
        lines.append(
            f"{r['problem']},{r['m']},{r['algorithm']},{r['runs']},{r['mean_hv']!r},{r['std_hv']!r},{r['median_hv']!r}"
        )
    path.write_text("\n".join(lines) + "\n")
    return rows


def run_experiment(cfg: ExperimentConfig, progress=None) -> list[CellOutcome]:
    """Execute every cell (in parallel up to ``cfg.jobs``) and rewrite the summary CSV.

    ``progress(outcome)`` is called as cells finish.
    """
    root = Path(cfg.output_dir)
    root.mkdir(parents=True, exist_ok=True)
    (root / "experiment.json").write_text(json.dumps(cfg.to_dict(), indent=2))
    todo = cells(cfg)
    outcomes = []
    start = time.perf_counter()
    if cfg.jobs == 1:
        for c in todo:
            outcomes.append(execute_cell(c))
            if progress is not None:
                progress(outcomes[-1])
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for outcome in pool.map(execute_cell, todo):
                outcomes.append(outcome)
                if progress is not None:
                    progress(outcome)
    # Summarize the whole tree so that separate invocations sharing a directory accumulate.
    write_summary(load_manifests(root), root / SUMMARY_FILE)
    log.info("%d cells in %.1fs", len(outcomes), time.perf_counter() - start)
    return outcomes


def load_manifests(results_dir) -> list[dict]:
    return [json.loads(p.read_text()) for p in sorted(Path(results_dir).rglob(MANIFEST_FILE))]
