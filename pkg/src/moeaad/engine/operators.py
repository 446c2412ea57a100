"""Simulated binary crossover and polynomial mutation.

The crossover uses a single spread factor per variable, so the two children
stay symmetric around the parents' midpoint until they are clipped to the box.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def sbx(p1, p2, lower, upper, p_c, eta, rng):
    n = p1.shape[0]
    c1 = p1.copy()
    c2 = p2.copy()
    if rng.random() > p_c:
        return c1, c2
    expo = 1.0 / (eta + 1.0)
    for i in range(n):
        if rng.random() > 0.5 or abs(p1[i] - p2[i]) <= 1e-14:
            continue
        u = rng.random()
        if u <= 0.5:
            beta = (2.0 * u) ** expo
        else:
            beta = (1.0 / (2.0 * (1.0 - u))) ** expo
        a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i])
        b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i])
        if rng.random() < 0.5:
            a, b = b, a
        c1[i] = min(max(a, lower[i]), upper[i])
        c2[i] = min(max(b, lower[i]), upper[i])
    return c1, c2


@njit(cache=True)
def polynomial_mutation(x, lower, upper, p_m, eta, rng):
    y = x.copy()
    expo = 1.0 / (eta + 1.0)
    for i in range(y.shape[0]):
        if rng.random() >= p_m:
            continue
        span = upper[i] - lower[i]
        if span <= 0.0:
            continue
        d1 = (y[i] - lower[i]) / span
        d2 = (upper[i] - y[i]) / span
        u = rng.random()
        if u < 0.5:
            val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0)
            dq = val**expo - 1.0
        else:
            val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0)
            dq = 1.0 - val**expo
        y[i] = min(max(y[i] + dq * span, lower[i]), upper[i])
    return y


@njit(cache=True)
def variation(p1, p2, lower, upper, p_c, eta_c, p_m, eta_m, rng):
    """One offspring: SBX, keep one child at random, then polynomial mutation."""
    c1, c2 = sbx(p1, p2, lower, upper, p_c, eta_c, rng)
    child = c1 if rng.random() < 0.5 else c2
    return polynomial_mutation(child, lower, upper, p_m, eta_m, rng)


def random_population(N: int, lower, upper, rng: np.random.Generator) -> np.ndarray:
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape != upper.shape or lower.ndim != 1:
        raise ValueError("lower and upper must be 1-D arrays of equal length")
    return lower + rng.random((N, lower.shape[0])) * (upper - lower)
