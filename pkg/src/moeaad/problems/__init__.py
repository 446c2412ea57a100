from .base import Problem, hv_bounds, make_problem, minus_wrap, plain_bounds

PLAIN_NAMES = tuple(f"dtlz{i}" for i in range(1, 5)) + tuple(f"wfg{i}" for i in range(1, 10))
ALL_NAMES = PLAIN_NAMES + tuple(f"minus-{name}" for name in PLAIN_NAMES)

__all__ = [
    "ALL_NAMES",
    "PLAIN_NAMES",
    "Problem",
    "hv_bounds",
    "make_problem",
    "minus_wrap",
    "plain_bounds",
]
