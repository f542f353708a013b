"""Nearest-better-neighbour features (f33-f37).

For every sample: nn is the distance to its nearest other sample, nb
the distance to the nearest sample with strictly greater fitness.
Samples tied for the best fitness have no better neighbour and are
excluded from nb-based aggregates.
"""

from __future__ import annotations

import numpy as np

from ..types import Dataset
from .common import DegenerateData, FeatureVector, InsufficientSamples

__all__ = ["nbc_features", "nearest_better_distances"]


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation; zero-variance arguments give 0 by convention."""
    sa, sb = np.std(a), np.std(b)
    if sa == 0.0 or sb == 0.0:
        return 0.0
    return float(np.mean((a - a.mean()) * (b - b.mean())) / (sa * sb))


def nearest_better_distances(D: Dataset):
    """(nn, nb, nb_index) arrays; nb is NaN and nb_index -1 for best samples.

    Distance ties for the better neighbour resolve to the lowest index,
    making the induced in-degree graph deterministic.
    """
    X, y, m = D.X, D.y, D.m
    # distances from explicit coordinate differences (chunked to bound
    # memory) so results match a plain double loop exactly
    dist = np.empty((m, m))
    chunk = max(1, int(2**22 // (m * X.shape[1] + 1)))
    for start in range(0, m, chunk):
        block = X[start : start + chunk]
        dist[start : start + chunk] = np.sqrt(
            np.sum((block[:, None, :] - X[None, :, :]) ** 2, axis=2)
        )
    np.fill_diagonal(dist, np.inf)
    nn = dist.min(axis=1)

    nb = np.full(m, np.nan)
    nb_index = np.full(m, -1, dtype=int)
    for i in range(m):
        better = np.where(y > y[i])[0]
        if better.size:
            j = better[int(np.argmin(dist[i, better]))]
            nb[i] = dist[i, j]
            nb_index[i] = int(j)
    return nn, nb, nb_index


def nbc_features(D: Dataset) -> FeatureVector:
    """Ratio, correlation, and dispersion statistics of nn vs nb distances."""
    if D.m < 3:
        raise InsufficientSamples("nearest-better features need at least 3 samples")
    if np.all(D.y == D.y[0]):
        raise DegenerateData("constant fitness has no better neighbours")

    nn, nb, nb_index = nearest_better_distances(D)
    has_nb = ~np.isnan(nb)

    fv = FeatureVector()
    ratios = nb[has_nb] / nn[has_nb]
    mean_ratio = float(np.mean(ratios))
    fv.set("f33", 0.0 if mean_ratio == 0.0 else float(np.std(ratios)) / mean_ratio)

    indegree = np.bincount(nb_index[has_nb], minlength=D.m).astype(float)
    fv.set("f34", _pearson(D.y, indegree))
    fv.set("f35", _pearson(nn[has_nb], nb[has_nb]))

    mean_nb = float(np.mean(nb[has_nb]))
    sd_nb = float(np.std(nb[has_nb]))
    fv.set("f36", float(np.mean(nn)) / mean_nb if mean_nb > 0 else 0.0)
    fv.set("f37", float(np.std(nn)) / sd_nb if sd_nb > 0 else 0.0)
    return fv
