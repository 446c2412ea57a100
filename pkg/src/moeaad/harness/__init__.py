from .budgets import resolve_generations
from .experiment import ExperimentConfig, derive_seed, run_experiment
from .report import stats_report

__all__ = ["ExperimentConfig", "derive_seed", "resolve_generations", "run_experiment", "stats_report"]
