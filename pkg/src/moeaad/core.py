"""Dominance, normalization and the small value types shared across the package.

Everything here follows the minimization convention. Objective and decision
vectors are plain 1-D float arrays; the jitted ``_``-prefixed kernels are what
the engine calls in its inner loops, the public wrappers add validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

EPS_NORM = 1e-12


@dataclass(frozen=True)
class ReferencePoints:
    """Ideal and nadir estimates used for objective normalization."""

    ideal: np.ndarray
    nadir: np.ndarray

    def __post_init__(self):
        ideal = np.asarray(self.ideal, dtype=float)
        nadir = np.asarray(self.nadir, dtype=float)
        if ideal.shape != nadir.shape or ideal.ndim != 1:
            raise ValueError("ideal and nadir must be 1-D arrays of equal length")
        if np.any(ideal > nadir):
            raise ValueError("ideal must not exceed nadir in any component")
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "nadir", nadir)

    @property
    def m(self) -> int:
        return self.ideal.shape[0]


@dataclass
class Solution:
    """A decision vector, its objectives and the convergence-update bookkeeping.

    ``closeness`` is the 1-based rank of the slot the solution took over among
    the subproblems sorted by distance; ``closest_p`` is the 0-based index of
    its nearest subproblem.
    """

    x: np.ndarray
    f: np.ndarray
    closeness: int = 1
    closest_p: int = 0

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.f = np.asarray(self.f, dtype=float)

    def copy(self) -> "Solution":
        return Solution(self.x.copy(), self.f.copy(), self.closeness, self.closest_p)


@njit(cache=True)
def _dominates(a, b):
    strictly = False
    for i in range(a.shape[0]):
        if a[i] > b[i]:
            return False
        if a[i] < b[i]:
            strictly = True
    return strictly


@njit(cache=True)
def _is_dominated_by_any(f, F, skip):
    for j in range(F.shape[0]):
        if j != skip and _dominates(F[j], f):
            return True
    return False


@njit(cache=True)
def _normalize(f, ideal, nadir, out):
    for i in range(f.shape[0]):
        out[i] = (f[i] - ideal[i]) / max(nadir[i] - ideal[i], EPS_NORM)
    return out


@njit(cache=True)
def nondominated_mask(F):
    """Boolean mask of the rows of ``F`` not dominated by any other row."""
    n = F.shape[0]
    mask = np.ones(n, dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if i != j and _dominates(F[j], F[i]):
                mask[i] = False
                break
    return mask


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {arr.shape}")
    return arr


def dominates(a, b) -> bool:
    """True iff ``a`` Pareto-dominates ``b`` (minimization)."""
    a, b = _as_vector(a), _as_vector(b)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape[0]} vs {b.shape[0]}")
    return bool(_dominates(a, b))


def is_nondominated(i: int, pool) -> bool:
    """True iff no other member of ``pool`` dominates ``pool[i]``."""
    F = np.atleast_2d(np.asarray(pool, dtype=float))
    if not 0 <= i < F.shape[0]:
        raise IndexError(f"index {i} out of range for pool of size {F.shape[0]}")
    return not bool(_is_dominated_by_any(F[i], F, i))


def normalize(f, refs: ReferencePoints) -> np.ndarray:
    """Map ``f`` so the ideal goes to 0 and the nadir to 1.

    Spans narrower than ``EPS_NORM`` are replaced by ``EPS_NORM``; results may
    fall outside [0, 1] for points beyond the reference box.
    """
    f = _as_vector(f)
    if f.shape[0] != refs.m:
        raise ValueError(f"length mismatch: {f.shape[0]} vs {refs.m}")
    return _normalize(f, refs.ideal, refs.nadir, np.empty_like(f))


def normalize_many(F, refs: ReferencePoints) -> np.ndarray:
    F = np.atleast_2d(np.asarray(F, dtype=float))
    span = np.maximum(refs.nadir - refs.ideal, EPS_NORM)
    return (F - refs.ideal) / span
