"""Offline estimation of ideal and nadir points for the minus problems.

Candidates are uniform samples of the decision box plus structured points:
box vertices, and for DTLZ the position corners with every distance variable
at a maximizer of ``g``. Sampling alone badly underestimates how far the
negated front reaches, because ``g`` is maximal only on a thin set.

The ideal is the componentwise minimum over all candidates. The nadir of the
nondominated candidates is found per objective by scanning candidates from
the largest value down until one is not dominated, which avoids filtering the
whole set.
"""

from __future__ import annotations

import itertools

import numpy as np
from numba import njit

from ..core import ReferencePoints, _dominates
from . import dtlz
from .base import Problem

DEFAULT_SAMPLES = 1_000_000
MAX_VERTICES = 20_000
SEARCH_GRID = 41
SEARCH_SWEEPS = 6


@njit(cache=True)
def _evaluate_all(kernel, X, m, k, sign):
    F = np.empty((X.shape[0], m))
    for i in range(X.shape[0]):
        F[i] = sign * kernel(X[i], m, k)
    return F


@njit(cache=True)
def _nondominated_nadir(F):
    n, m = F.shape
    nadir = np.empty(m)
    for d in range(m):
        order = np.argsort(-F[:, d])
        for r in range(n):
            c = order[r]
            dominated = False
            for j in range(n):
                if j != c and _dominates(F[j], F[c]):
                    dominated = True
                    break
            if not dominated:
                nadir[d] = F[c, d]
                break
    return nadir


@njit(cache=True)
def _coordinate_search(kernel, x0, lower, upper, m, k, sign, obj, grid, sweeps):
    # Minimize objective ``obj`` one variable at a time over a uniform grid.
    x = x0.copy()
    best = sign * kernel(x, m, k)[obj]
    for _ in range(sweeps):
        improved = False
        for d in range(x.shape[0]):
            keep = x[d]
            for g in range(grid):
                x[d] = lower[d] + (upper[d] - lower[d]) * g / (grid - 1)
                v = sign * kernel(x, m, k)[obj]
                if v < best:
                    best = v
                    keep = x[d]
                    improved = True
            x[d] = keep
        if not improved:
            break
    return x


def _vertices(p: Problem, rng: np.random.Generator) -> np.ndarray:
    if p.n <= 14:
        bits = np.array(list(itertools.product((0.0, 1.0), repeat=p.n)))
    else:
        bits = rng.integers(0, 2, size=(MAX_VERTICES, p.n)).astype(float)
        bits = np.vstack([np.zeros(p.n), np.ones(p.n), bits])
    return p.lower + bits * (p.upper - p.lower)


def _dtlz_extremes(p: Problem) -> np.ndarray:
    """Position corners combined with distance variables at the g-maximizers (and minimizers)."""
    pos_dims = p.m - 1
    if pos_dims <= 14:
        corners = np.array(list(itertools.product((0.0, 1.0), repeat=pos_dims)))
    else:
        corners = np.vstack([np.eye(pos_dims), np.zeros(pos_dims), np.ones(pos_dims)])
    if p.base_name in ("dtlz1", "dtlz3"):
        dist_values = (0.5 - dtlz.RASTRIGIN_PEAK_OFFSET, 0.5 + dtlz.RASTRIGIN_PEAK_OFFSET, 0.5)
    else:
        dist_values = (0.0, 1.0, 0.5)
    rows = [np.hstack([corners, np.full((corners.shape[0], p.k), v)]) for v in dist_values]
    return np.vstack(rows)


def candidate_points(p: Problem, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    parts = [p.lower + rng.random((samples, p.n)) * (p.upper - p.lower), _vertices(p, rng)]
    if p.family == "dtlz":
        parts.append(_dtlz_extremes(p))
    return np.ascontiguousarray(np.vstack(parts))


def oracle_bounds(p: Problem, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> ReferencePoints:
    """Ideal and nadir of the nondominated image of the candidate set."""
    X = candidate_points(p, samples, seed)
    F = _evaluate_all(p.kernel, X, p.m, p.k, p.sign)
    # Polish the best candidate of every objective by coordinate search.
    polished = np.array(
        [
            _coordinate_search(
                p.kernel, X[np.argmin(F[:, i])], p.lower, p.upper, p.m, p.k, p.sign, i, SEARCH_GRID, SEARCH_SWEEPS
            )
            for i in range(p.m)
        ]
    )
    F = np.vstack([F, _evaluate_all(p.kernel, polished, p.m, p.k, p.sign)])
    return ReferencePoints(F.min(axis=0), _nondominated_nadir(F))
