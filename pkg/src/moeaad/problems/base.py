"""Problem container, factory, minus wrapper and hypervolume normalization bounds."""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources

import numpy as np

from ..core import ReferencePoints
from . import dtlz, wfg

WFG_DISTANCE_VARS = 20
BOUNDS_TABLE = "minus_bounds.csv"

_NAME = re.compile(r"^(minus-)?(dtlz[1-4]|wfg[1-9])$")


@dataclass(frozen=True)
class Problem:
    """A box-constrained benchmark instance.

    ``kernel(x, m, k)`` returns the raw objectives of the plain problem; ``sign``
    is -1 for the minus version. ``k`` is the DTLZ distance-variable count or
    the WFG position-parameter count.
    """

    name: str
    m: int
    n: int
    k: int
    lower: np.ndarray
    upper: np.ndarray
    kernel: object
    sign: float = 1.0

    @property
    def base_name(self) -> str:
        return self.name.removeprefix("minus-")

    @property
    def family(self) -> str:
        return "dtlz" if self.base_name.startswith("dtlz") else "wfg"

    @property
    def is_minus(self) -> bool:
        return self.sign < 0

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"{self.name} expects {self.n} variables, got shape {x.shape}")
        if np.any(x < self.lower) or np.any(x > self.upper):
            raise ValueError(f"decision vector outside the box of {self.name}")
        return self.sign * self.kernel(x, self.m, self.k)

    def evaluate_many(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.array([self.evaluate(x) for x in X])

    def hv_bounds(self) -> ReferencePoints:
        return hv_bounds(self)


def make_problem(name: str, m: int, n: int | None = None) -> Problem:
    """Build ``dtlz1..4`` / ``wfg1..9``, optionally prefixed ``minus-``.

    DTLZ instances use ``n = m + k - 1`` (k = 5 for DTLZ1, 10 otherwise) and WFG
    instances ``n = k + 20`` with ``k = 2(m - 1)``. ``n`` overrides the sizing.
    """
    match = _NAME.match(name.lower())
    if match is None:
        raise ValueError(f"unknown problem {name!r}")
    minus, base = match.groups()
    if m < 2:
        raise ValueError("need at least two objectives")

    if base.startswith("dtlz"):
        k = dtlz.DISTANCE_VARS[base]
        n_vars = m + k - 1 if n is None else n
        if n_vars < m:
            raise ValueError(f"{base} needs at least m={m} variables")
        k = n_vars - m + 1
        lower, upper = np.zeros(n_vars), np.ones(n_vars)
        kernel = dtlz.KERNELS[base]
    else:
        k = 2 * (m - 1)
        n_vars = k + WFG_DISTANCE_VARS if n is None else n
        l = n_vars - k
        if l < 1 or (base in ("wfg2", "wfg3") and l % 2):
            raise ValueError(f"{base} needs a positive (for wfg2/3: even) distance count, got {l}")
        lower = np.zeros(n_vars)
        upper = 2.0 * np.arange(1, n_vars + 1)
        kernel = wfg.KERNELS[base]

    problem = Problem(base, m, n_vars, k, lower, upper, kernel)
    return minus_wrap(problem) if minus else problem


def minus_wrap(p: Problem) -> Problem:
    """Negate every objective of a plain problem."""
    if p.is_minus:
        raise ValueError(f"{p.name} is already a minus problem")
    return replace(p, name=f"minus-{p.name}", sign=-1.0)


def plain_bounds(base: str, m: int) -> ReferencePoints:
    """Ideal and nadir of the Pareto front of a plain problem."""
    if base == "dtlz1":
        return ReferencePoints(np.zeros(m), np.full(m, 0.5))
    if base.startswith("dtlz"):
        return ReferencePoints(np.zeros(m), np.ones(m))
    return ReferencePoints(np.zeros(m), 2.0 * np.arange(1, m + 1))


@lru_cache(maxsize=None)
def _bounds_table() -> dict[tuple[str, int], ReferencePoints]:
    table = {}
    text = resources.files("moeaad.problems").joinpath("data", BOUNDS_TABLE).read_text()
    for row in csv.reader(line for line in text.splitlines() if line and not line.startswith("#")):
        if row[0] == "problem":
            continue
        name, m = row[0], int(row[1])
        values = np.array([float(v) for v in row[2:]])
        table[(name, m)] = ReferencePoints(values[:m], values[m:])
    return table


def hv_bounds(p: Problem) -> ReferencePoints:
    """Normalization box for hypervolume: analytic for plain problems, tabulated for minus ones."""
    if not p.is_minus:
        return plain_bounds(p.base_name, p.m)
    try:
        return _bounds_table()[(p.name, p.m)]
    except KeyError:
        raise ValueError(
            f"no tabulated bounds for {p.name} with m={p.m}; run scripts/compute_minus_bounds.py"
        ) from None
