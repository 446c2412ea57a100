"""DTLZ1-4 objective kernels.

Decision vectors have ``n = m + k - 1`` entries in [0, 1]; the last ``k`` are
the distance variables. Kernels share the signature ``(x, m, k) -> f`` with
the WFG kernels so the engine can call either through one code path.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _g_rastrigin(x, m):
    n = x.shape[0]
    s = 0.0
    for i in range(m - 1, n):
        t = x[i] - 0.5
        s += t * t - math.cos(20.0 * math.pi * t)
    return 100.0 * ((n - m + 1) + s)


@njit(cache=True)
def _g_sphere(x, m):
    s = 0.0
    for i in range(m - 1, x.shape[0]):
        t = x[i] - 0.5
        s += t * t
    return s


@njit(cache=True)
def _linear_front(x, m, scale):
    f = np.empty(m)
    for i in range(m):
        v = scale
        for j in range(m - 1 - i):
            v *= x[j]
        if i > 0:
            v *= 1.0 - x[m - 1 - i]
        f[i] = v
    return f


@njit(cache=True)
def _spherical_front(x, m, scale, alpha):
    f = np.empty(m)
    for i in range(m):
        v = scale
        for j in range(m - 1 - i):
            v *= math.cos(0.5 * math.pi * x[j] ** alpha)
        if i > 0:
            v *= math.sin(0.5 * math.pi * x[m - 1 - i] ** alpha)
        f[i] = v
    return f


@njit(cache=True)
def dtlz1(x, m, k):
    return _linear_front(x, m, 0.5 * (1.0 + _g_rastrigin(x, m)))


@njit(cache=True)
def dtlz2(x, m, k):
    return _spherical_front(x, m, 1.0 + _g_sphere(x, m), 1.0)


@njit(cache=True)
def dtlz3(x, m, k):
    return _spherical_front(x, m, 1.0 + _g_rastrigin(x, m), 1.0)


@njit(cache=True)
def dtlz4(x, m, k):
    return _spherical_front(x, m, 1.0 + _g_sphere(x, m), 100.0)


KERNELS = {"dtlz1": dtlz1, "dtlz2": dtlz2, "dtlz3": dtlz3, "dtlz4": dtlz4}
DISTANCE_VARS = {"dtlz1": 5, "dtlz2": 10, "dtlz3": 10, "dtlz4": 10}

# t**2 - cos(20*pi*t) on [-0.5, 0.5] peaks just past |t| = 0.45.
RASTRIGIN_PEAK_OFFSET = 0.450228092881036


def g_max(name: str, k: int) -> float:
    """Largest attainable value of the distance function over the unit box."""
    if name in ("dtlz1", "dtlz3"):
        t = RASTRIGIN_PEAK_OFFSET
        return 100.0 * k * (1.0 + t * t - math.cos(20.0 * math.pi * t))
    return 0.25 * k
