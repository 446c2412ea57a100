"""Wilcoxon rank-sum test (normal approximation) and its exact counterpart for small samples."""

from __future__ import annotations

from dataclasses import dataclass
from math import erfc, sqrt

import numpy as np

SMALL_N = 10


@dataclass(frozen=True)
class SampleSet:
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size < 2:
            raise ValueError(f"sample {self.label!r} needs at least two values")
        if not np.all(np.isfinite(v)):
            raise ValueError(f"sample {self.label!r} contains non-finite values")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    @property
    def median(self) -> float:
        return float(np.median(self.values))


@dataclass(frozen=True)
class RankSumResult:
    p_value: float
    a_better: bool
    b_better: bool
    small_n: bool

    def __iter__(self):
        return iter((self.p_value, self.a_better, self.b_better))


def midranks(x) -> np.ndarray:
    """1-based ranks with ties sharing their average rank."""
    x = np.asarray(x, dtype=float)
    order = np.argsort(x, kind="mergesort")
    ranks = np.empty(x.size)
    xs = x[order]
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and xs[j + 1] == xs[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _as_sample(s, label) -> SampleSet:
    return s if isinstance(s, SampleSet) else SampleSet(s, label)


def rank_sum_normal_p(a, b) -> float:
    a = _as_sample(a, "a").values
    b = _as_sample(b, "b").values
    n1, n2 = a.size, b.size
    n = n1 + n2
    ranks = midranks(np.concatenate([a, b]))
    w = ranks[:n1].sum()
    mean = n1 * (n + 1) / 2.0
    _, counts = np.unique(ranks, return_counts=True)
    ties = float(np.sum(counts**3 - counts))
    var = n1 * n2 / 12.0 * ((n + 1) - ties / (n * (n - 1)))
    if var <= 0.0:
        return 1.0
    z = max(abs(w - mean) - 0.5, 0.0) / sqrt(var)
    return min(1.0, erfc(z / sqrt(2.0)))


def exact_rank_sum_p(a, b) -> float:
    """Two-sided permutation p-value of the rank-sum statistic, ties included.

    Counts every way of assigning ``len(a)`` of the pooled midranks to the
    first sample; doubled midranks keep the sums integral.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    n1 = a.size
    ranks2 = np.rint(2.0 * midranks(np.concatenate([a, b]))).astype(np.int64)
    total = int(ranks2.sum())
    # ways[k, s]: subsets of size k with doubled-rank sum s
    ways = np.zeros((n1 + 1, total + 1))
    ways[0, 0] = 1.0
    for r in ranks2:
        ways[1:, r:] += ways[:-1, : total + 1 - r].copy()
    dist = ways[n1]
    observed = int(ranks2[:n1].sum())
    center = n1 * total / (a.size + b.size)
    sums = np.arange(total + 1)
    extreme = np.abs(sums - center) >= abs(observed - center) - 1e-9
    return float(min(1.0, dist[extreme].sum() / dist.sum()))


def wilcoxon_rank_sum(a, b, alpha: float = 0.05) -> RankSumResult:
    """Two-sided rank-sum test; a side is "better" when its median is larger and p < alpha."""
    a = _as_sample(a, "a")
    b = _as_sample(b, "b")
    p = rank_sum_normal_p(a, b)
    significant = p < alpha
    return RankSumResult(
        p_value=p,
        a_better=bool(significant and a.median > b.median),
        b_better=bool(significant and b.median > a.median),
        small_n=min(len(a), len(b)) <= SMALL_N,
    )
