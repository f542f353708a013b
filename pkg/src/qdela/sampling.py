"""Latin hypercube and uniform sampling of a bounded genotype box."""

from __future__ import annotations

import numpy as np

from .rng import Rng
from .types import Bounds

__all__ = ["lhs_sample", "uniform_sample"]


def lhs_sample(m: int, bounds: Bounds, rng: Rng) -> np.ndarray:
    """Plain random-permutation Latin hypercube design, shape (m, d).

    Each dimension gets exactly one point per stratum of width 1/m;
    the position within a stratum is uniform and the per-dimension
    permutations are independent.
    """
    if m < 1:
        raise ValueError("sample count must be >= 1")
    d = bounds.dim
    unit = np.empty((m, d))
    for j in range(d):
        perm = rng.gen.permutation(m)
        unit[:, j] = (perm + rng.gen.random(m)) / m
    return bounds.lower + unit * bounds.range


def uniform_sample(m: int, bounds: Bounds, rng: Rng) -> np.ndarray:
    """i.i.d. uniform points inside the bounds, shape (m, d)."""
    if m < 1:
        raise ValueError("sample count must be >= 1")
    unit = rng.gen.random((m, bounds.dim))
    return bounds.lower + unit * bounds.range
