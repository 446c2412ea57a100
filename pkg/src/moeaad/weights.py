"""Two-layer simplex-lattice weight vectors and their neighborhoods."""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from math import comb
from pathlib import Path

import numpy as np

from .scalarizing import floor_weights

# (h1, h2, add_centroid) per objective count; totals 91, 210, 157, 276, 136.
DEFAULT_LAYERS = {
    3: (12, 0, False),
    5: (6, 0, False),
    8: (3, 2, True),
    10: (3, 2, True),
    15: (2, 1, True),
}
DEFAULT_TAU = 0.5


@dataclass(frozen=True)
class WeightSet:
    vectors: np.ndarray
    h1: int
    h2: int
    tau: float
    centroid_added: bool

    def __len__(self) -> int:
        return self.vectors.shape[0]

    @property
    def m(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class Neighborhood:
    B: np.ndarray

    @property
    def T(self) -> int:
        return self.B.shape[1]


def simplex_lattice(m: int, h: int) -> np.ndarray:
    """All points of the simplex whose coordinates are multiples of 1/h."""
    # Stars and bars: choose m-1 bar positions among h+m-1 slots.
    points = []
    for bars in itertools.combinations(range(h + m - 1), m - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(h + m - 2 - prev)
        points.append(parts)
    return np.asarray(points, dtype=float) / h


def expected_count(m: int, h1: int, h2: int, add_centroid: bool) -> int:
    return comb(h1 + m - 1, m - 1) + (comb(h2 + m - 1, m - 1) if h2 > 0 else 0) + int(add_centroid)


def _drop_duplicates(W: np.ndarray) -> np.ndarray:
    # Inner-layer points can land on the outer lattice (e.g. m=2, h1=4, h2=2); keep first copies.
    keep = []
    for i, w in enumerate(W):
        if not any(np.allclose(w, W[j], atol=1e-12) for j in keep):
            keep.append(i)
    return W[keep]


def generate_weights(
    m: int,
    h1: int,
    h2: int = 0,
    tau: float = DEFAULT_TAU,
    add_centroid: bool = False,
) -> WeightSet:
    """Outer lattice of ``h1`` divisions, optional shrunken inner lattice and centroid.

    The inner layer maps each lattice point ``w`` to ``tau * w + (1 - tau) / m``;
    inner points that coincide with outer ones are dropped.
    All vectors are then lifted to the weight floor (see ``floor_weights``).
    """
    if m < 2:
        raise ValueError("need at least two objectives")
    if h1 < 1 or h2 < 0:
        raise ValueError("h1 must be >= 1 and h2 >= 0")
    if not 0.0 < tau <= 1.0:
        raise ValueError("tau must lie in (0, 1]")

    layers = [simplex_lattice(m, h1)]
    if h2 > 0:
        layers.append(tau * simplex_lattice(m, h2) + (1.0 - tau) / m)
    W = _drop_duplicates(np.vstack(layers))

    added = False
    if add_centroid:
        centroid = np.full(m, 1.0 / m)
        if not np.any(np.all(np.isclose(W, centroid, atol=1e-12), axis=1)):
            W = np.vstack([W, centroid])
            added = True

    return WeightSet(floor_weights(W), h1, h2, tau, added)


def default_weights(m: int) -> WeightSet:
    """The weight set whose size matches the population sizes used for ``m`` objectives."""
    try:
        h1, h2, centroid = DEFAULT_LAYERS[m]
    except KeyError:
        raise ValueError(f"no default layer setting for m={m}; call generate_weights directly") from None
    return generate_weights(m, h1, h2, DEFAULT_TAU, centroid)


def build_neighborhood(ws: WeightSet | np.ndarray, T: int) -> Neighborhood:
    """Indices of the ``T`` nearest weight vectors (Euclidean), self first, ties by index."""
    W = ws.vectors if isinstance(ws, WeightSet) else np.asarray(ws, dtype=float)
    N = W.shape[0]
    if not 1 <= T <= N:
        raise ValueError(f"neighborhood size T={T} must lie in [1, {N}]")
    dist = np.linalg.norm(W[:, None, :] - W[None, :, :], axis=2)
    order = np.argsort(dist, axis=1, kind="stable")
    return Neighborhood(np.ascontiguousarray(order[:, :T]))


def write_weights_csv(ws: WeightSet, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for w in ws.vectors:
            writer.writerow([repr(float(v)) for v in w])


def read_weights_csv(path: str | Path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)
