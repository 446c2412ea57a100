"""WFG1-9 objective kernels.

Variable ``i`` (0-based) lies in [0, 2(i+1)]. The first ``k`` variables are
position-related, the remaining ``l = n - k`` distance-related. Every kernel
has the signature ``(z, m, k) -> f``; the objective scales are ``S_i = 2i``.
"""

import math

import numpy as np
from numba import njit

_EPS01 = 1e-10


@njit(cache=True)
def _clip01(v):
    if v < 0.0 and v >= -_EPS01:
        return 0.0
    if v > 1.0 and v <= 1.0 + _EPS01:
        return 1.0
    return v


# Transformations ---------------------------------------------------------


@njit(cache=True)
def b_poly(y, alpha):
    return _clip01(y**alpha)


@njit(cache=True)
def b_flat(y, a, b, c):
    v = a + min(0.0, math.floor(y - b)) * a * (b - y) / b - min(0.0, math.floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c)
    return _clip01(v)


@njit(cache=True)
def b_param(y, u, a, b, c):
    v = a - (1.0 - 2.0 * u) * abs(math.floor(0.5 - u) + a)
    return _clip01(y ** (b + (c - b) * v))


@njit(cache=True)
def s_linear(y, a):
    return _clip01(abs(y - a) / abs(math.floor(a - y) + a))


@njit(cache=True)
def s_decept(y, a, b, c):
    t1 = math.floor(y - a + b) * (1.0 - c + (a - b) / b) / (a - b)
    t2 = math.floor(a + b - y) * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b)
    return _clip01(1.0 + (abs(y - a) - b) * (t1 + t2 + 1.0 / b))


@njit(cache=True)
def s_multi(y, a, b, c):
    t = abs(y - c) / (2.0 * (math.floor(c - y) + c))
    v = (1.0 + math.cos((4.0 * a + 2.0) * math.pi * (0.5 - t)) + 4.0 * b * t * t) / (b + 2.0)
    return _clip01(v)


@njit(cache=True)
def r_sum(y, w):
    num = 0.0
    den = 0.0
    for i in range(y.shape[0]):
        num += w[i] * y[i]
        den += w[i]
    return _clip01(num / den)


@njit(cache=True)
def r_nonsep(y, a):
    size = y.shape[0]
    num = 0.0
    for j in range(size):
        num += y[j]
        for q in range(a - 1):
            num += abs(y[j] - y[(1 + j + q) % size])
    half = math.ceil(a / 2.0)
    den = size / a * half * (1.0 + 2.0 * a - 2.0 * half)
    return _clip01(num / den)


@njit(cache=True)
def _mean(y):
    return _clip01(y.sum() / y.shape[0])


# Shapes ------------------------------------------------------------------


@njit(cache=True)
def _linear(x, m):
    M = x.shape[0] + 1
    h = np.empty(M)
    for i in range(M):
        v = 1.0
        for j in range(M - 1 - i):
            v *= x[j]
        if i > 0:
            v *= 1.0 - x[M - 1 - i]
        h[i] = v
    return h


@njit(cache=True)
def _convex(x, m):
    M = x.shape[0] + 1
    h = np.empty(M)
    for i in range(M):
        v = 1.0
        for j in range(M - 1 - i):
            v *= 1.0 - math.cos(0.5 * math.pi * x[j])
        if i > 0:
            v *= 1.0 - math.sin(0.5 * math.pi * x[M - 1 - i])
        h[i] = v
    return h


@njit(cache=True)
def _concave(x, m):
    M = x.shape[0] + 1
    h = np.empty(M)
    for i in range(M):
        v = 1.0
        for j in range(M - 1 - i):
            v *= math.sin(0.5 * math.pi * x[j])
        if i > 0:
            v *= math.cos(0.5 * math.pi * x[M - 1 - i])
        h[i] = v
    return h


@njit(cache=True)
def _mixed(x0, alpha, a):
    return (1.0 - x0 - math.cos(2.0 * a * math.pi * x0 + 0.5 * math.pi) / (2.0 * a * math.pi)) ** alpha


@njit(cache=True)
def _disc(x0, alpha, beta, a):
    c = math.cos(a * x0**beta * math.pi)
    return 1.0 - x0**alpha * c * c


# Helpers -----------------------------------------------------------------


@njit(cache=True)
def _scale_to_unit(z):
    y = np.empty(z.shape[0])
    for i in range(z.shape[0]):
        y[i] = z[i] / (2.0 * (i + 1))
    return y


@njit(cache=True)
def _reduce_groups(y, m, k, weighted):
    """Weighted-sum reduction over the m-1 position groups and the distance block."""
    t = np.empty(m)
    gap = k // (m - 1)
    n = y.shape[0]
    for i in range(m - 1):
        lo, hi = i * gap, (i + 1) * gap
        w = np.empty(hi - lo)
        for j in range(lo, hi):
            w[j - lo] = 2.0 * (j + 1) if weighted else 1.0
        t[i] = r_sum(y[lo:hi], w)
    w = np.empty(n - k)
    for j in range(k, n):
        w[j - k] = 2.0 * (j + 1) if weighted else 1.0
    t[m - 1] = r_sum(y[k:n], w)
    return t


@njit(cache=True)
def _reduce_nonsep(y, m, k):
    t = np.empty(m)
    gap = k // (m - 1)
    n = y.shape[0]
    for i in range(m - 1):
        t[i] = r_nonsep(y[i * gap : (i + 1) * gap], gap)
    t[m - 1] = r_nonsep(y[k:n], n - k)
    return t


@njit(cache=True)
def _objectives(t, h):
    m = t.shape[0]
    f = np.empty(m)
    for i in range(m):
        f[i] = t[m - 1] + 2.0 * (i + 1) * h[i]
    return f


@njit(cache=True)
def _position(t, degenerate):
    # A_1 = 1 always; WFG3 sets the remaining A_i to 0.
    m = t.shape[0]
    x = np.empty(m - 1)
    for i in range(m - 1):
        a = 1.0 if (i == 0 or not degenerate) else 0.0
        x[i] = max(t[m - 1], a) * (t[i] - 0.5) + 0.5
    return x


@njit(cache=True)
def _shift_distance(y, k):
    for i in range(k, y.shape[0]):
        y[i] = s_linear(y[i], 0.35)


# Problems ----------------------------------------------------------------


@njit(cache=True)
def wfg1(z, m, k):
    y = _scale_to_unit(z)
    n = y.shape[0]
    _shift_distance(y, k)
    for i in range(k, n):
        y[i] = b_flat(y[i], 0.8, 0.75, 0.85)
    for i in range(n):
        y[i] = b_poly(y[i], 0.02)
    t = _reduce_groups(y, m, k, True)
    x = _position(t, False)
    h = _convex(x, m)
    h[m - 1] = _mixed(x[0], 1.0, 5.0)
    return _objectives(t, h)


@njit(cache=True)
def _wfg23_reduce(y, m, k):
    n = y.shape[0]
    l = n - k
    y2 = np.empty(k + l // 2)
    y2[:k] = y[:k]
    for i in range(l // 2):
        y2[k + i] = r_nonsep(y[k + 2 * i : k + 2 * i + 2], 2)
    return _reduce_groups(y2, m, k, False)


@njit(cache=True)
def wfg2(z, m, k):
    y = _scale_to_unit(z)
    _shift_distance(y, k)
    t = _wfg23_reduce(y, m, k)
    x = _position(t, False)
    h = _convex(x, m)
    h[m - 1] = _disc(x[0], 1.0, 1.0, 5.0)
    return _objectives(t, h)


@njit(cache=True)
def wfg3(z, m, k):
    y = _scale_to_unit(z)
    _shift_distance(y, k)
    t = _wfg23_reduce(y, m, k)
    x = _position(t, True)
    return _objectives(t, _linear(x, m))


@njit(cache=True)
def wfg4(z, m, k):
    y = _scale_to_unit(z)
    for i in range(y.shape[0]):
        y[i] = s_multi(y[i], 30.0, 10.0, 0.35)
    t = _reduce_groups(y, m, k, False)
    return _objectives(t, _concave(_position(t, False), m))


@njit(cache=True)
def wfg5(z, m, k):
    y = _scale_to_unit(z)
    for i in range(y.shape[0]):
        y[i] = s_decept(y[i], 0.35, 0.001, 0.05)
    t = _reduce_groups(y, m, k, False)
    return _objectives(t, _concave(_position(t, False), m))


@njit(cache=True)
def wfg6(z, m, k):
    y = _scale_to_unit(z)
    _shift_distance(y, k)
    t = _reduce_nonsep(y, m, k)
    return _objectives(t, _concave(_position(t, False), m))


_PARAM_A = 0.98 / 49.98


@njit(cache=True)
def wfg7(z, m, k):
    src = _scale_to_unit(z)
    y = src.copy()
    for i in range(k):
        y[i] = b_param(src[i], _mean(src[i + 1 :]), _PARAM_A, 0.02, 50.0)
    _shift_distance(y, k)
    t = _reduce_groups(y, m, k, False)
    return _objectives(t, _concave(_position(t, False), m))


@njit(cache=True)
def wfg8(z, m, k):
    src = _scale_to_unit(z)
    y = src.copy()
    for i in range(k, y.shape[0]):
        y[i] = b_param(src[i], _mean(src[:i]), _PARAM_A, 0.02, 50.0)
    _shift_distance(y, k)
    t = _reduce_groups(y, m, k, False)
    return _objectives(t, _concave(_position(t, False), m))


@njit(cache=True)
def wfg9(z, m, k):
    src = _scale_to_unit(z)
    n = src.shape[0]
    y = src.copy()
    for i in range(n - 1):
        y[i] = b_param(src[i], _mean(src[i + 1 :]), _PARAM_A, 0.02, 50.0)
    for i in range(n):
        if i < k:
            y[i] = s_decept(y[i], 0.35, 0.001, 0.05)
        else:
            y[i] = s_multi(y[i], 30.0, 95.0, 0.35)
    t = _reduce_nonsep(y, m, k)
    return _objectives(t, _concave(_position(t, False), m))


KERNELS = {
    "wfg1": wfg1,
    "wfg2": wfg2,
    "wfg3": wfg3,
    "wfg4": wfg4,
    "wfg5": wfg5,
    "wfg6": wfg6,
    "wfg7": wfg7,
    "wfg8": wfg8,
    "wfg9": wfg9,
}
