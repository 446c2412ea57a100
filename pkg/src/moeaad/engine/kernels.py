"""Jitted inner loops of MOEA/AD and the MOEA/D baselines.

Population tags: 0 is the diversity population ``S_d``, 1 the convergence
population ``S_c``. Variants: 0 full, 1 random matching, 2 mating pools
restricted to the principal's population, 3 random tie-break in the
principal-parent choice.
"""

import numpy as np
from numba import njit

from ..core import _dominates, _normalize
from ..scalarizing import _d2_ones, _d2_origin, _ipbi, _maasf_convergence, _pbi_diversity
from .operators import variation

POP_D = 0
POP_C = 1

VARIANT_CODES = {"full": 0, "v1": 1, "v2": 2, "v3": 3}
SCALARIZER_PBI = 0
SCALARIZER_IPBI = 1

RI_EPS = 1e-12


@njit(cache=True)
def g_diversity(f, w, ideal, nadir, theta):
    fbar = _normalize(f, ideal, nadir, np.empty(f.shape[0]))
    return _pbi_diversity(fbar, w, theta)


@njit(cache=True)
def g_convergence(f, w, ideal, nadir, alpha):
    fbar = _normalize(f, ideal, nadir, np.empty(f.shape[0]))
    return _maasf_convergence(fbar, w, alpha)


@njit(cache=True)
def relative_improvement(prev, curr, absolute):
    if abs(prev) < RI_EPS:
        return 0.0
    r = (prev - curr) / prev
    return abs(r) if absolute else r


@njit(cache=True)
def refresh_nadir(F_d, F_c, nadir):
    for i in range(nadir.shape[0]):
        v = -np.inf
        for j in range(F_d.shape[0]):
            v = max(v, F_d[j, i], F_c[j, i])
        nadir[i] = v


@njit(cache=True)
def update_ideal(ideal, f):
    for i in range(ideal.shape[0]):
        if f[i] < ideal[i]:
            ideal[i] = f[i]


@njit(cache=True)
def nondominated_in_union(f, F_d, F_c):
    for j in range(F_d.shape[0]):
        if _dominates(F_d[j], f) or _dominates(F_c[j], f):
            return False
    return True


@njit(cache=True)
def population_update(x, f, X_d, F_d, X_c, F_c, closeness, closest_p, W, ideal, nadir, theta, alpha, nr_c):
    """Offer one offspring to both populations.

    Returns the replaced ``S_d`` slot (-1 if none) and the number of ``S_c``
    slots taken over.
    """
    N, m = W.shape
    fbar = _normalize(f, ideal, nadir, np.empty(m))
    buf = np.empty(m)

    # Diversity population: only the subproblem whose ray is nearest.
    i_d = 0
    best = np.inf
    for i in range(N):
        d = _d2_origin(fbar, W[i])
        if d < best:
            best = d
            i_d = i
    g_new = _pbi_diversity(fbar, W[i_d], theta)
    g_old = _pbi_diversity(_normalize(F_d[i_d], ideal, nadir, buf), W[i_d], theta)
    replaced_d = -1
    if g_new <= g_old:
        X_d[i_d] = x
        F_d[i_d] = f
        replaced_d = i_d

    # Convergence population: nearest rays through the nadir image first, at most nr_c slots.
    dist = np.empty(N)
    for i in range(N):
        dist[i] = _d2_ones(fbar, W[i])
    order = np.argsort(dist, kind="mergesort")
    taken = 0
    for r in range(N):
        s = order[r]
        g_new = _maasf_convergence(fbar, W[s], alpha)
        g_old = _maasf_convergence(_normalize(F_c[s], ideal, nadir, buf), W[s], alpha)
        if g_new <= g_old:
            X_c[s] = x
            F_c[s] = f
            closeness[s] = r + 1
            closest_p[s] = order[0]
            taken += 1
            if taken == nr_c:
                break
    return replaced_d, taken


@njit(cache=True)
def pop_selection(i, m, M, F_d, F_c, F_d_prev, F_c_prev, closeness, W, ideal, nadir, theta, alpha, random_ties, rng):
    """Population (POP_D or POP_C) that supplies the principal parent of pair ``i``."""
    j = M[i]
    delta_d = relative_improvement(
        g_diversity(F_d_prev[i], W[i], ideal, nadir, theta),
        g_diversity(F_d[i], W[i], ideal, nadir, theta),
        False,
    )
    delta_c = relative_improvement(
        g_convergence(F_c_prev[j], W[j], ideal, nadir, alpha),
        g_convergence(F_c[j], W[j], ideal, nadir, alpha),
        True,
    )
    if delta_d > delta_c:
        return POP_D
    if delta_d < delta_c:
        return POP_C
    if not random_ties:
        nondominated = nondominated_in_union(F_d[i], F_d, F_c)
        if nondominated and closeness[j] > m:
            return POP_D
        if not nondominated and closeness[j] <= m:
            return POP_C
    return POP_D if rng.random() < 0.5 else POP_C


@njit(cache=True)
def _draw_global(N, skip_d, skip_c, rng):
    # Uniform over S_d + S_c without the two excluded slots (either may be -1).
    n_d = N - (1 if skip_d >= 0 else 0)
    n_c = N - (1 if skip_c >= 0 else 0)
    r = rng.integers(0, n_d + n_c)
    if r < n_d:
        idx = r if (skip_d < 0 or r < skip_d) else r + 1
        return POP_D, idx
    r -= n_d
    idx = r if (skip_c < 0 or r < skip_c) else r + 1
    return POP_C, idx


@njit(cache=True)
def mating_selection(i, pop, M, R, B, closest_p, delta, variant, rng):
    """Mate for the principal of pair ``i``; returns (principal_pop, principal_idx, mate_pop, mate_idx).

    Neither member of pair ``i`` other than the principal can be drawn.
    """
    N, T = B.shape
    principal = i if pop == POP_D else M[i]
    pool_pop = np.empty(2 * T, dtype=np.int64)
    pool_idx = np.empty(2 * T, dtype=np.int64)
    size = 0
    if rng.random() < delta:
        if pop == POP_D:
            for t in range(T):
                j = B[i, t]
                if j == i:
                    continue
                pool_pop[size] = POP_D
                pool_idx[size] = j
                size += 1
                if variant != 2 and R[j] == 1:
                    pool_pop[size] = POP_C
                    pool_idx[size] = M[j]
                    size += 1
        else:
            for t in range(T):
                j = B[principal, t]
                if j == principal:
                    continue
                if variant == 2 or closest_p[j] != closest_p[principal]:
                    pool_pop[size] = POP_C
                    pool_idx[size] = j
                    size += 1
        if size > 0:
            r = rng.integers(0, size)
            return pop, principal, pool_pop[r], pool_idx[r]
    elif variant == 2:
        r = rng.integers(0, N - 1)
        return pop, principal, pop, (r if r < principal else r + 1)
    mate_pop, mate_idx = _draw_global(N, i, M[i], rng)
    return pop, principal, mate_pop, mate_idx


@njit(cache=True)
def moea_ad_generation(
    evaluate, m, k, sign, lower, upper,
    X_d, F_d, X_c, F_c, closeness, closest_p, M, R, F_d_prev, F_c_prev,
    W, B, ideal, nadir,
    theta, alpha, nr_c, delta, p_c, eta_c, p_m, eta_m,
    variant, update_refs, rng,
):  # fmt: skip
    N = W.shape[0]
    for i in range(N):
        pop = pop_selection(
            i, m, M, F_d, F_c, F_d_prev, F_c_prev, closeness, W, ideal, nadir, theta, alpha, variant == 3, rng
        )
        pp, pi, mp, mi = mating_selection(i, pop, M, R, B, closest_p, delta, variant, rng)
        p1 = X_d[pi] if pp == POP_D else X_c[pi]
        p2 = X_d[mi] if mp == POP_D else X_c[mi]
        child = variation(p1, p2, lower, upper, p_c, eta_c, p_m, eta_m, rng)
        f = sign * evaluate(child, m, k)
        if update_refs:
            update_ideal(ideal, f)
        population_update(child, f, X_d, F_d, X_c, F_c, closeness, closest_p, W, ideal, nadir, theta, alpha, nr_c)


@njit(cache=True)
def decomposition_value(f, w, ideal, nadir, theta, scalarizer):
    fbar = _normalize(f, ideal, nadir, np.empty(f.shape[0]))
    if scalarizer == SCALARIZER_IPBI:
        return _ipbi(fbar, w, theta)
    return _pbi_diversity(fbar, w, theta)


@njit(cache=True)
def moead_generation(
    evaluate, m, k, sign, lower, upper,
    X, F, W, B, ideal, nadir,
    theta, scalarizer, nr, delta, p_c, eta_c, p_m, eta_m,
    update_refs, rng,
):  # fmt: skip
    N, T = B.shape
    everyone = np.arange(N)
    for i in range(N):
        pool = B[i] if rng.random() < delta else everyone
        size = pool.shape[0]
        a = rng.integers(0, size)
        b = rng.integers(0, size - 1)
        if b >= a:
            b += 1
        child = variation(X[pool[a]], X[pool[b]], lower, upper, p_c, eta_c, p_m, eta_m, rng)
        f = sign * evaluate(child, m, k)
        if update_refs:
            update_ideal(ideal, f)
        replaced = 0
        for r in rng.permutation(size):
            j = pool[r]
            if decomposition_value(f, W[j], ideal, nadir, theta, scalarizer) <= decomposition_value(
                F[j], W[j], ideal, nadir, theta, scalarizer
            ):
                X[j] = child
                F[j] = f
                replaced += 1
                if replaced >= nr:
                    break
