"""Hypervolume (exact and Monte Carlo) and the performance score.

Exact mode uses the WFG exclusive-volume recursion: points are sorted by the
last objective, worst first, so each limit set shares that coordinate and the
problem drops one dimension per level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import _dominates
from .problems import Problem

MAX_EXACT_M = 10
MC_CHUNK = 65536


@dataclass(frozen=True)
class HvConfig:
    """``reference=None`` means the all-2 point of normalized objective space."""

    reference: tuple[float, ...] | None = None
    mode: str = "exact"
    samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("exact", "monte_carlo"):
            raise ValueError(f"mode must be 'exact' or 'monte_carlo', got {self.mode!r}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")

    def reference_for(self, m: int) -> np.ndarray:
        if self.reference is None:
            return np.full(m, 2.0)
        ref = np.asarray(self.reference, dtype=float)
        if ref.shape != (m,):
            raise ValueError(f"reference has {ref.size} components, points have {m}")
        return ref


@dataclass(frozen=True)
class ScoreMatrix:
    """``wins[j, i]`` is True when algorithm ``j`` is significantly better than ``i``."""

    wins: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        wins = np.asarray(self.wins, dtype=bool)
        if wins.ndim != 2 or wins.shape[0] != wins.shape[1]:
            raise ValueError("wins must be a square matrix")
        if wins.diagonal().any():
            raise ValueError("an algorithm cannot beat itself")
        if (wins & wins.T).any():
            raise ValueError("wins[i, j] and wins[j, i] cannot both hold")
        if self.labels and len(self.labels) != wins.shape[0]:
            raise ValueError("one label per algorithm")
        object.__setattr__(self, "wins", wins)

    @property
    def K(self) -> int:
        return self.wins.shape[0]


@njit(cache=True)
def _nondominated(P):
    n = P.shape[0]
    keep = np.ones(n, dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if i != j and keep[j] and _dominates(P[j], P[i]):
                keep[i] = False
                break
    # Exact duplicates survive the check above; keep only the first copy.
    for i in range(n):
        if not keep[i]:
            continue
        for j in range(i + 1, n):
            if keep[j]:
                same = True
                for d in range(P.shape[1]):
                    if P[i, d] != P[j, d]:
                        same = False
                        break
                if same:
                    keep[j] = False
    return P[keep]


@njit(cache=True)
def _hv2d(P, ref):
    order = np.argsort(P[:, 0])
    vol = 0.0
    y_prev = ref[1]
    for r in range(order.shape[0]):
        p = P[order[r]]
        if p[1] < y_prev:
            vol += (ref[0] - p[0]) * (y_prev - p[1])
            y_prev = p[1]
    return vol


@njit(cache=True)
def _wfg(P, ref):
    n, m = P.shape
    if n == 0:
        return 0.0
    if n == 1:
        v = 1.0
        for d in range(m):
            v *= ref[d] - P[0, d]
        return v
    if m == 2:
        return _hv2d(P, ref)
    order = np.argsort(-P[:, m - 1], kind="mergesort")
    S = P[order]
    sub_ref = ref[: m - 1].copy()
    total = 0.0
    for i in range(n):
        box = 1.0
        for d in range(m):
            box *= ref[d] - S[i, d]
        rest = n - i - 1
        if rest == 0:
            total += box
            continue
        L = np.empty((rest, m - 1))
        for j in range(rest):
            for d in range(m - 1):
                L[j, d] = max(S[i, d], S[i + 1 + j, d])
        total += box - (ref[m - 1] - S[i, m - 1]) * _wfg(_nondominated(L), sub_ref)
    return total


@njit(cache=True)
def _mc_count(P, lower, ref, count, rng):
    m = lower.shape[0]
    u = np.empty(m)
    hits = 0
    for _ in range(count):
        for d in range(m):
            u[d] = lower[d] + rng.random() * (ref[d] - lower[d])
        for j in range(P.shape[0]):
            inside = True
            for d in range(m):
                if P[j, d] > u[d]:
                    inside = False
                    break
            if inside:
                hits += 1
                break
    return hits


def _inside(points, ref) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.size == 0:
        return np.empty((0, ref.shape[0]))
    P = np.atleast_2d(P)
    if P.shape[1] != ref.shape[0]:
        raise ValueError(f"points have {P.shape[1]} objectives, reference has {ref.shape[0]}")
    if not np.all(np.isfinite(P)):
        raise ValueError("points must be finite")
    return np.ascontiguousarray(P[np.all(P < ref, axis=1)])


def _m_of(points, cfg: HvConfig) -> int:
    P = np.asarray(points, dtype=float)
    if P.size:
        return np.atleast_2d(P).shape[1]
    if cfg.reference is not None:
        return len(cfg.reference)
    return 0


def hv_exact(points, cfg: HvConfig = HvConfig()) -> float:
    """Volume dominated by ``points`` and bounded by the reference point."""
    m = _m_of(points, cfg)
    if m == 0:
        return 0.0
    if m > MAX_EXACT_M:
        raise ValueError(f"exact hypervolume is limited to m <= {MAX_EXACT_M}; use mode='monte_carlo'")
    ref = cfg.reference_for(m)
    P = _inside(points, ref)
    if P.shape[0] == 0:
        return 0.0
    if m == 1:
        return float(ref[0] - P[:, 0].min())
    return float(_wfg(_nondominated(P), ref))


def hv_monte_carlo(points, cfg: HvConfig = HvConfig(mode="monte_carlo"), return_stderr: bool = False):
    """Dominated fraction of ``cfg.samples`` uniform draws from [min corner, reference], times the box volume.

    With ``return_stderr`` the binomial standard error is returned as well.
    """
    m = _m_of(points, cfg)
    if m == 0:
        return (0.0, 0.0) if return_stderr else 0.0
    ref = cfg.reference_for(m)
    P = _inside(points, ref)
    if P.shape[0] == 0:
        return (0.0, 0.0) if return_stderr else 0.0
    P = _nondominated(P)
    lower = np.minimum(P.min(axis=0), 0.0)
    volume = float(np.prod(ref - lower))
    rng = np.random.default_rng(cfg.seed)
    hits = 0
    remaining = cfg.samples
    while remaining > 0:
        c = min(MC_CHUNK, remaining)
        hits += _mc_count(P, lower, ref, c, rng)
        remaining -= c
    frac = hits / cfg.samples
    est = frac * volume
    if return_stderr:
        return est, volume * np.sqrt(frac * (1.0 - frac) / cfg.samples)
    return est


def hypervolume(points, cfg: HvConfig = HvConfig()) -> float:
    if cfg.mode == "exact":
        return hv_exact(points, cfg)
    return hv_monte_carlo(points, cfg)


def normalize_for_hv(F, problem: Problem) -> np.ndarray:
    bounds = problem.hv_bounds()
    span = np.maximum(bounds.nadir - bounds.ideal, 1e-12)
    return (np.atleast_2d(np.asarray(F, dtype=float)) - bounds.ideal) / span


def normalized_hv(F, problem: Problem, cfg: HvConfig = HvConfig()) -> float:
    """HV of raw objective vectors after normalizing with the problem's front bounds."""
    return hypervolume(normalize_for_hv(F, problem), cfg)


def default_hv_config(m: int, samples: int = 1_000_000, seed: int = 0) -> HvConfig:
    """Exact up to five objectives, Monte Carlo beyond."""
    return HvConfig(mode="exact" if m <= 5 else "monte_carlo", samples=samples, seed=seed)


def performance_score(wins: ScoreMatrix | np.ndarray) -> np.ndarray:
    """Number of competitors significantly better than each algorithm (lower is better)."""
    if not isinstance(wins, ScoreMatrix):
        W = np.asarray(wins, dtype=bool)
        if W.size == 0:
            return np.zeros(0, dtype=np.int64)
        wins = ScoreMatrix(W)
    return wins.wins.sum(axis=0).astype(np.int64)
