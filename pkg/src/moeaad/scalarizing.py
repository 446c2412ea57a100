"""Scalarizing functions: Tchebycheff, PBI, MA-ASF and inverted PBI.

The engine only uses the normalized forms: ``pbi_diversity`` (reference point
at the origin) for the diversity population and ``maasf_convergence``
(reference point at the all-ones image of the nadir) for the convergence
population. The raw-space forms exist for tests and for completeness.

All functions are minimized. ``ipbi`` is the negation of the usual inverted
PBI so it can share comparators with everything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

WEIGHT_FLOOR = 1e-6


@dataclass(frozen=True)
class ScalarizingParams:
    theta: float = 5.0
    alpha: float = 1e-6
    theta_ipbi: float = 0.1

    def __post_init__(self):
        if self.theta < 0 or self.alpha < 0 or self.theta_ipbi < 0:
            raise ValueError("scalarizing parameters must be non-negative")


def floor_weights(W) -> np.ndarray:
    """Rescale rows to unit sum with every component at least ``WEIGHT_FLOOR``.

    Rows are normalized; rows with a component below the floor are then mapped
    by ``w -> floor + (1 - m * floor) * w``, which keeps the sum at one and
    moves each component by at most ``m * floor``. Rows already at or above the
    floor are left as normalized, so applying this twice changes nothing.
    """
    W = np.maximum(np.asarray(W, dtype=float), 0.0)
    m = W.shape[-1]
    W = W / W.sum(axis=-1, keepdims=True)
    low = W.min(axis=-1, keepdims=True) < WEIGHT_FLOOR * (1.0 - 1e-9)
    return np.where(low, WEIGHT_FLOOR + (1.0 - m * WEIGHT_FLOOR) * W, W)


def weight_vector(w) -> np.ndarray:
    """A valid weight vector from non-negative components (see :func:`floor_weights`)."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or not np.any(w > 0):
        raise ValueError("weight vector needs at least one positive component")
    return floor_weights(w)


# Kernels -------------------------------------------------------------------


@njit(cache=True)
def _tch(f, w, z):
    v = -np.inf
    for i in range(f.shape[0]):
        v = max(v, abs(f[i] - z[i]) / w[i])
    return v


@njit(cache=True)
def _d1_d2(y, w, z):
    # d2 is measured to the line through z, so it does not depend on the sign of w.
    norm_w = 0.0
    proj = 0.0
    for i in range(y.shape[0]):
        norm_w += w[i] * w[i]
        proj += (y[i] - z[i]) * w[i]
    norm_w = math.sqrt(norm_w)
    proj /= norm_w
    d2 = 0.0
    for i in range(y.shape[0]):
        r = y[i] - (z[i] + proj * w[i] / norm_w)
        d2 += r * r
    return abs(proj), math.sqrt(d2)


@njit(cache=True)
def _d2_origin(y, w):
    norm2 = 0.0
    proj = 0.0
    for i in range(y.shape[0]):
        norm2 += w[i] * w[i]
        proj += y[i] * w[i]
    scale = proj / norm2
    d2 = 0.0
    for i in range(y.shape[0]):
        r = y[i] - scale * w[i]
        d2 += r * r
    return math.sqrt(d2)


@njit(cache=True)
def _d2_ones(y, w):
    norm2 = 0.0
    proj = 0.0
    for i in range(y.shape[0]):
        norm2 += w[i] * w[i]
        proj += (y[i] - 1.0) * w[i]
    scale = proj / norm2
    d2 = 0.0
    for i in range(y.shape[0]):
        r = y[i] - 1.0 - scale * w[i]
        d2 += r * r
    return math.sqrt(d2)


@njit(cache=True)
def _pbi_diversity(fbar, w, theta):
    norm2 = 0.0
    proj = 0.0
    for i in range(fbar.shape[0]):
        norm2 += w[i] * w[i]
        proj += fbar[i] * w[i]
    norm_w = math.sqrt(norm2)
    scale = proj / norm2
    d2 = 0.0
    for i in range(fbar.shape[0]):
        r = fbar[i] - scale * w[i]
        d2 += r * r
    return abs(proj) / norm_w + theta * math.sqrt(d2)


@njit(cache=True)
def _maasf_convergence(fbar, w, alpha):
    worst = -np.inf
    total = 0.0
    for i in range(fbar.shape[0]):
        t = (fbar[i] - 1.0) / w[i]
        worst = max(worst, t)
        total += t
    return worst + alpha * total


@njit(cache=True)
def _ipbi(fbar, w, theta):
    norm2 = 0.0
    proj = 0.0
    for i in range(fbar.shape[0]):
        norm2 += w[i] * w[i]
        proj += (1.0 - fbar[i]) * w[i]
    norm_w = math.sqrt(norm2)
    scale = proj / norm2
    d2 = 0.0
    for i in range(fbar.shape[0]):
        r = fbar[i] - (1.0 - scale * w[i])
        d2 += r * r
    return -(abs(proj) / norm_w - theta * math.sqrt(d2))


# Public API ----------------------------------------------------------------


def _vec(v) -> np.ndarray:
    return np.asarray(v, dtype=float)


def tch(f, w, z_star) -> float:
    """Weighted Tchebycheff value ``max_i |f_i - z*_i| / w_i``."""
    return float(_tch(_vec(f), weight_vector(w), _vec(z_star)))


def d1_d2(y, w, z) -> tuple[float, float]:
    """Projection length along ``w`` from ``z`` and distance to that line."""
    d1, d2 = _d1_d2(_vec(y), _vec(w), _vec(z))
    return float(d1), float(d2)


def pbi(f, w, z_star, theta: float = 5.0) -> float:
    """Raw-space PBI with the ideal point as reference."""
    d1, d2 = _d1_d2(_vec(f), weight_vector(w), _vec(z_star))
    return float(d1 + theta * d2)


def maasf(f, w, z_nad, alpha: float = 1e-6) -> float:
    """Raw-space MA-ASF anchored at the nadir point."""
    t = (_vec(f) - _vec(z_nad)) / weight_vector(w)
    return float(t.max() + alpha * t.sum())


def pbi_diversity(f_bar, w, params: ScalarizingParams = ScalarizingParams()) -> float:
    return float(_pbi_diversity(_vec(f_bar), weight_vector(w), params.theta))


def maasf_convergence(f_bar, w, params: ScalarizingParams = ScalarizingParams()) -> float:
    return float(_maasf_convergence(_vec(f_bar), weight_vector(w), params.alpha))


def ipbi(f_bar, w, params: ScalarizingParams = ScalarizingParams()) -> float:
    """Inverted PBI from the all-ones point, negated so that smaller is better."""
    return float(_ipbi(_vec(f_bar), weight_vector(w), params.theta_ipbi))
