from .config import ALGORITHMS, VARIANTS, AlgorithmConfig
from .moead import run_moead_baseline
from .moead_ad import (
    DualPopulationState,
    Subproblem,
    initialize,
    mating_selection,
    pop_selection,
    population_update,
    refresh_nadir,
    relative_improvement,
    run,
    run_variant,
    update_references,
    variation,
)
from .result import RunResult


def run_algorithm(problem, config: AlgorithmConfig, callback=None, weights=None) -> RunResult:
    """Dispatch on ``config.algorithm``."""
    if config.algorithm == "moea_ad":
        return run(problem, config, callback, weights)
    return run_moead_baseline(problem, config, callback, weights)


__all__ = [
    "ALGORITHMS",
    "VARIANTS",
    "AlgorithmConfig",
    "DualPopulationState",
    "RunResult",
    "Subproblem",
    "initialize",
    "mating_selection",
    "pop_selection",
    "population_update",
    "refresh_nadir",
    "relative_improvement",
    "run",
    "run_algorithm",
    "run_moead_baseline",
    "run_variant",
    "update_references",
    "variation",
]
