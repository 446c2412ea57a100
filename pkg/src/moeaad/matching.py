"""Pairing the diversity and convergence populations by two-level stable matching.

Agent ``i`` on the diversity side stands for slot ``i`` of ``S_d`` (and thus
for weight ``w^i``); agent ``j`` on the convergence side is ``S_c[j]``.

* A diversity agent ranks convergence solutions by their PBI value on its own
  weight vector.
* A convergence solution ranks diversity agents by its perpendicular distance
  to their weight rays.

Level one truncates every list to its first ``m`` entries; a pair is
acceptable there only if each side lists the other. Deferred acceptance with
the diversity side proposing runs over those pairs, and the pairs it forms are
flagged ``R = 1``. Level two matches everybody left over with the complete
lists (``R = 0``). Ties in the lists go to the lower index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .scalarizing import _d2_origin, _pbi_diversity

_UNACCEPTABLE = np.iinfo(np.int64).max


@dataclass(frozen=True)
class PreferenceProfile:
    d_prefs: np.ndarray
    c_prefs: np.ndarray

    @property
    def N(self) -> int:
        return self.d_prefs.shape[0]


@dataclass(frozen=True)
class Matching:
    M: np.ndarray
    R: np.ndarray


@njit(cache=True)
def _preference_lists(fbar_c, W, theta):
    N = W.shape[0]
    d_val = np.empty((N, N))
    c_val = np.empty((N, N))
    for j in range(N):
        for i in range(N):
            d_val[i, j] = _pbi_diversity(fbar_c[j], W[i], theta)
            c_val[j, i] = _d2_origin(fbar_c[j], W[i])
    d_prefs = np.empty((N, N), dtype=np.int64)
    c_prefs = np.empty((N, N), dtype=np.int64)
    for r in range(N):
        d_prefs[r] = np.argsort(d_val[r], kind="mergesort")
        c_prefs[r] = np.argsort(c_val[r], kind="mergesort")
    return d_prefs, c_prefs


@njit(cache=True)
def _deferred_acceptance(d_lists, d_len, c_rank, proposers):
    """Proposer-optimal stable matching; returns partner per proposer (-1 if none)."""
    N = d_lists.shape[0]
    nxt = np.zeros(N, dtype=np.int64)
    held_by = np.full(c_rank.shape[0], -1, dtype=np.int64)
    partner = np.full(N, -1, dtype=np.int64)
    stack = list(proposers)
    while len(stack) > 0:
        i = stack.pop()
        while nxt[i] < d_len[i]:
            j = d_lists[i, nxt[i]]
            nxt[i] += 1
            if c_rank[j, i] == _UNACCEPTABLE:
                continue
            cur = held_by[j]
            if cur == -1:
                held_by[j] = i
                partner[i] = j
                break
            if c_rank[j, i] < c_rank[j, cur]:
                held_by[j] = i
                partner[i] = j
                partner[cur] = -1
                stack.append(cur)
                break
    return partner


@njit(cache=True)
def _two_level(d_prefs, c_prefs, m):
    N = d_prefs.shape[0]
    L = min(m, N)

    # Level one: mutual presence on the truncated lists.
    c_rank = np.full((N, N), _UNACCEPTABLE, dtype=np.int64)
    for j in range(N):
        for r in range(L):
            c_rank[j, c_prefs[j, r]] = r
    d_lists = np.empty((N, N), dtype=np.int64)
    d_len = np.zeros(N, dtype=np.int64)
    for i in range(N):
        for r in range(L):
            j = d_prefs[i, r]
            if c_rank[j, i] != _UNACCEPTABLE:
                d_lists[i, d_len[i]] = j
                d_len[i] += 1
    first = _deferred_acceptance(d_lists, d_len, c_rank, np.arange(N))

    R = np.zeros(N, dtype=np.int8)
    c_taken = np.zeros(N, dtype=np.bool_)
    for i in range(N):
        if first[i] >= 0:
            R[i] = 1
            c_taken[first[i]] = True

    # Level two: complete lists restricted to the agents still free.
    for j in range(N):
        for r in range(N):
            c_rank[j, c_prefs[j, r]] = r
    d_len[:] = 0
    free = []
    for i in range(N):
        if first[i] >= 0:
            continue
        free.append(i)
        for r in range(N):
            j = d_prefs[i, r]
            if not c_taken[j]:
                d_lists[i, d_len[i]] = j
                d_len[i] += 1
    M = first.copy()
    if len(free) > 0:
        second = _deferred_acceptance(d_lists, d_len, c_rank, np.array(free))
        for i in free:
            M[i] = second[i]
    return M, R


def build_preferences(fbar_c, W, theta: float = 5.0) -> PreferenceProfile:
    """Preference lists from the normalized objectives of ``S_c`` and the weight set."""
    fbar_c = np.ascontiguousarray(fbar_c, dtype=float)
    W = np.ascontiguousarray(W, dtype=float)
    if fbar_c.shape != W.shape:
        raise ValueError(f"population shape {fbar_c.shape} does not match weights {W.shape}")
    d_prefs, c_prefs = _preference_lists(fbar_c, W, theta)
    return PreferenceProfile(d_prefs, c_prefs)


def two_level_match(prefs: PreferenceProfile, m: int) -> Matching:
    M, R = _two_level(
        np.ascontiguousarray(prefs.d_prefs, dtype=np.int64),
        np.ascontiguousarray(prefs.c_prefs, dtype=np.int64),
        m,
    )
    return Matching(M, R)


def match(fbar_c, W, m: int, theta: float = 5.0) -> Matching:
    return two_level_match(build_preferences(fbar_c, W, theta), m)
