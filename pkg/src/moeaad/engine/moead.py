"""Single-population MOEA/D with normalized PBI or inverted PBI."""

from __future__ import annotations

import time

import numpy as np

from ..problems import Problem
from ..weights import build_neighborhood
from . import kernels
from .config import AlgorithmConfig
from .moead_ad import _weights_for
from .operators import random_population
from .result import RunResult

SCALARIZERS = {"moead_pbi": kernels.SCALARIZER_PBI, "moead_ipbi": kernels.SCALARIZER_IPBI}


def run_moead_baseline(problem: Problem, config: AlgorithmConfig, callback=None, weights=None) -> RunResult:
    """``callback(X, F, ideal, nadir)`` is called after initialization and after every generation."""
    if config.algorithm not in SCALARIZERS:
        raise ValueError(f"baseline must be one of {tuple(SCALARIZERS)}, got {config.algorithm!r}")
    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    W = _weights_for(problem, config, weights)
    N = W.shape[0]
    if N < 2:
        raise ValueError("MOEA/D needs at least two subproblems")
    B = np.ascontiguousarray(build_neighborhood(W, max(2, min(config.T, N))).B, dtype=np.int64)
    X = random_population(N, problem.lower, problem.upper, rng)
    F = np.array([problem.sign * problem.kernel(x, problem.m, problem.k) for x in X])
    ideal = F.min(axis=0)
    nadir = F.max(axis=0)
    theta = config.theta_ipbi if config.algorithm == "moead_ipbi" else config.theta
    p_m = config.mutation_probability(problem.n)
    if callback is not None:
        callback(X, F, ideal, nadir)
    for _ in range(config.generations):
        if config.update_references:
            nadir[:] = F.max(axis=0)
        kernels.moead_generation(
            problem.kernel,
            problem.m,
            problem.k,
            problem.sign,
            problem.lower,
            problem.upper,
            X,
            F,
            W,
            B,
            ideal,
            nadir,
            theta,
            SCALARIZERS[config.algorithm],
            config.nr_c,
            config.delta,
            config.p_c,
            config.eta_c,
            p_m,
            config.eta_m,
            config.update_references,
            rng,
        )
        if callback is not None:
            callback(X, F, ideal, nadir)
    return RunResult(
        problem=problem.name,
        m=problem.m,
        config=config.to_dict(),
        seed=config.seed,
        X_d=X.copy(),
        F_d=F.copy(),
        X_c=X.copy(),
        F_c=F.copy(),
        generations=config.generations,
        evaluations=N * (config.generations + 1),
        wall_time=time.perf_counter() - start,
    )
