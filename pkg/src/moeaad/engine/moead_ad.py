"""MOEA/AD: a diversity and a convergence population evolved side by side.

Each generation refreshes the nadir estimate, snapshots both populations,
walks the ``N`` matched pairs once (principal choice, mating, variation,
update) and finally re-matches the populations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..core import ReferencePoints, Solution, normalize_many
from ..matching import match
from ..problems import Problem
from ..weights import build_neighborhood, default_weights
from . import kernels
from .config import AlgorithmConfig
from .kernels import POP_C, POP_D
from .operators import random_population
from .operators import variation as _variation_kernel
from .result import RunResult

TAG = {POP_D: "D", POP_C: "C"}


@dataclass(frozen=True)
class Subproblem:
    weight: np.ndarray
    prev_value: float
    curr_value: float


@dataclass
class DualPopulationState:
    """Both populations as parallel arrays; row ``i`` of ``W`` is subproblem ``i`` on either side."""

    X_d: np.ndarray
    F_d: np.ndarray
    X_c: np.ndarray
    F_c: np.ndarray
    closeness: np.ndarray
    closest_p: np.ndarray
    M: np.ndarray
    R: np.ndarray
    ideal: np.ndarray
    nadir: np.ndarray
    W: np.ndarray
    B: np.ndarray
    F_d_prev: np.ndarray
    F_c_prev: np.ndarray
    generation: int = 0
    evaluations: int = 0

    @property
    def N(self) -> int:
        return self.W.shape[0]

    @property
    def m(self) -> int:
        return self.W.shape[1]

    @property
    def refs(self) -> ReferencePoints:
        return ReferencePoints(self.ideal.copy(), self.nadir.copy())

    def solution(self, tag: str, i: int) -> Solution:
        if tag == "D":
            return Solution(self.X_d[i].copy(), self.F_d[i].copy())
        return Solution(self.X_c[i].copy(), self.F_c[i].copy(), int(self.closeness[i]), int(self.closest_p[i]))

    def snapshot(self) -> None:
        self.F_d_prev[:] = self.F_d
        self.F_c_prev[:] = self.F_c

    def subproblem(self, tag: str, i: int, config: AlgorithmConfig) -> Subproblem:
        w = self.W[i]
        if tag == "D":
            g = kernels.g_diversity
            prev, curr, p = self.F_d_prev[i], self.F_d[i], config.theta
        else:
            g = kernels.g_convergence
            prev, curr, p = self.F_c_prev[i], self.F_c[i], config.alpha
        return Subproblem(w, g(prev, w, self.ideal, self.nadir, p), g(curr, w, self.ideal, self.nadir, p))


def _weights_for(problem: Problem, config: AlgorithmConfig, weights=None) -> np.ndarray:
    W = default_weights(problem.m).vectors if weights is None else np.asarray(weights, dtype=float)
    if W.ndim != 2 or W.shape[1] != problem.m:
        raise ValueError(f"weights must have {problem.m} columns")
    if config.N is not None and config.N != W.shape[0]:
        raise ValueError(f"config.N={config.N} does not match {W.shape[0]} weight vectors")
    return np.ascontiguousarray(W)


def initialize(
    problem: Problem, config: AlgorithmConfig, rng: np.random.Generator | None = None, weights=None
) -> DualPopulationState:
    rng = np.random.default_rng(config.seed) if rng is None else rng
    W = _weights_for(problem, config, weights)
    N = W.shape[0]
    B = build_neighborhood(W, min(config.T, N)).B
    X = random_population(N, problem.lower, problem.upper, rng)
    F = np.array([problem.sign * problem.kernel(x, problem.m, problem.k) for x in X])
    return DualPopulationState(
        X_d=X.copy(),
        F_d=F.copy(),
        X_c=X.copy(),
        F_c=F.copy(),
        closeness=np.ones(N, dtype=np.int64),
        closest_p=np.arange(N, dtype=np.int64),
        M=np.arange(N, dtype=np.int64),
        R=np.ones(N, dtype=np.int8),
        ideal=F.min(axis=0),
        nadir=F.max(axis=0),
        W=W,
        B=np.ascontiguousarray(B, dtype=np.int64),
        F_d_prev=F.copy(),
        F_c_prev=F.copy(),
        evaluations=N,
    )


def update_references(state: DualPopulationState, f_new) -> ReferencePoints:
    """Per-offspring ideal update; the nadir only moves in :func:`refresh_nadir`."""
    kernels.update_ideal(state.ideal, np.asarray(f_new, dtype=float))
    return state.refs


def refresh_nadir(state: DualPopulationState) -> None:
    kernels.refresh_nadir(state.F_d, state.F_c, state.nadir)


def population_update(state: DualPopulationState, x_new: Solution, config: AlgorithmConfig) -> tuple[int, int]:
    """Offer ``x_new`` to both populations; returns (replaced S_d slot or -1, S_c replacements)."""
    d, c = kernels.population_update(
        np.asarray(x_new.x, dtype=float),
        np.asarray(x_new.f, dtype=float),
        state.X_d,
        state.F_d,
        state.X_c,
        state.F_c,
        state.closeness,
        state.closest_p,
        state.W,
        state.ideal,
        state.nadir,
        config.theta,
        config.alpha,
        config.nr_c,
    )
    return int(d), int(c)


def relative_improvement(sub: Subproblem, kind: str) -> float:
    if kind not in ("d", "c"):
        raise ValueError("kind must be 'd' or 'c'")
    return float(kernels.relative_improvement(sub.prev_value, sub.curr_value, kind == "c"))


def pop_selection(state: DualPopulationState, i: int, config: AlgorithmConfig, rng: np.random.Generator) -> str:
    tag = kernels.pop_selection(
        i,
        state.m,
        state.M,
        state.F_d,
        state.F_c,
        state.F_d_prev,
        state.F_c_prev,
        state.closeness,
        state.W,
        state.ideal,
        state.nadir,
        config.theta,
        config.alpha,
        config.variant == "v3",
        rng,
    )
    return TAG[tag]


def mating_selection(
    state: DualPopulationState, i: int, config: AlgorithmConfig, rng: np.random.Generator, principal_pop: str | None = None
) -> tuple[tuple[str, int], tuple[str, int]]:
    """((tag, slot) of the principal, (tag, slot) of the mate) for pair ``i``."""
    if principal_pop is None:
        principal_pop = pop_selection(state, i, config, rng)
    pop = POP_D if principal_pop == "D" else POP_C
    pp, pi, mp, mi = kernels.mating_selection(
        i, pop, state.M, state.R, state.B, state.closest_p, config.delta, kernels.VARIANT_CODES[config.variant], rng
    )
    return (TAG[pp], int(pi)), (TAG[mp], int(mi))


def variation(parents, problem: Problem, config: AlgorithmConfig, rng: np.random.Generator) -> Solution:
    p1, p2 = (np.asarray(p.x if isinstance(p, Solution) else p, dtype=float) for p in parents)
    child = _variation_kernel(
        p1,
        p2,
        problem.lower,
        problem.upper,
        config.p_c,
        config.eta_c,
        config.mutation_probability(problem.n),
        config.eta_m,
        rng,
    )
    return Solution(child, problem.sign * problem.kernel(child, problem.m, problem.k))


def rematch(state: DualPopulationState, config: AlgorithmConfig, rng: np.random.Generator) -> None:
    if config.variant == "v1":
        state.M[:] = rng.permutation(state.N)
        state.R[:] = 1
        return
    fbar = normalize_many(state.F_c, state.refs)
    result = match(fbar, state.W, state.m, config.theta)
    state.M[:] = result.M
    state.R[:] = result.R


def step(state: DualPopulationState, problem: Problem, config: AlgorithmConfig, rng: np.random.Generator) -> None:
    """Advance one generation in place."""
    if config.update_references:
        refresh_nadir(state)
    state.snapshot()
    kernels.moea_ad_generation(
        problem.kernel,
        problem.m,
        problem.k,
        problem.sign,
        problem.lower,
        problem.upper,
        state.X_d,
        state.F_d,
        state.X_c,
        state.F_c,
        state.closeness,
        state.closest_p,
        state.M,
        state.R,
        state.F_d_prev,
        state.F_c_prev,
        state.W,
        state.B,
        state.ideal,
        state.nadir,
        config.theta,
        config.alpha,
        config.nr_c,
        config.delta,
        config.p_c,
        config.eta_c,
        config.mutation_probability(problem.n),
        config.eta_m,
        kernels.VARIANT_CODES[config.variant],
        config.update_references,
        rng,
    )
    state.generation += 1
    state.evaluations += state.N
    rematch(state, config, rng)


def run(problem: Problem, config: AlgorithmConfig, callback=None, weights=None) -> RunResult:
    """Run MOEA/AD (any variant) for ``config.generations`` generations.

    ``callback(state)`` is called after initialization and after every generation.
    """
    if config.algorithm != "moea_ad":
        raise ValueError(f"run() executes moea_ad, got {config.algorithm!r}")
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    state = initialize(problem, config, rng, weights)
    if callback is not None:
        callback(state)
    for _ in range(config.generations):
        step(state, problem, config, rng)
        if callback is not None:
            callback(state)
    return RunResult(
        problem=problem.name,
        m=problem.m,
        config=config.to_dict(),
        seed=config.seed,
        X_d=state.X_d.copy(),
        F_d=state.F_d.copy(),
        X_c=state.X_c.copy(),
        F_c=state.F_c.copy(),
        generations=state.generation,
        evaluations=state.evaluations,
        wall_time=time.perf_counter() - start,
    )


def run_variant(problem: Problem, config: AlgorithmConfig, callback=None, weights=None) -> RunResult:
    if config.variant not in ("v1", "v2", "v3"):
        raise ValueError(f"run_variant expects v1, v2 or v3, got {config.variant!r}")
    return run(problem, config, callback, weights)
