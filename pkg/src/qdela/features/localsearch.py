"""Local-search features from restarted simplex descents (f17-f23).

Nelder-Mead runs are started from dataset points and descend the
negated fitness.  The resulting optima are merged by single-linkage
clustering; basin sizes are the fraction of starts that land in each
cluster.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..rng import Rng
from ..types import Bounds, Dataset
from .common import ElaBudget, FeatureVector, InsufficientSamples, STATUS_DEGENERATE

__all__ = ["ela_local", "nelder_mead"]

NM_REFLECTION = 1.0
NM_EXPANSION = 2.0
NM_CONTRACTION = 0.5
NM_SHRINK = 0.5
NM_DIAMETER_TOL = 1e-8
NM_FSPREAD_TOL = 1e-10
NM_INIT_STEP_FRAC = 0.05

CLUSTER_FRAC = 0.01
BASIN_FITNESS_TOL = 1e-8


def nelder_mead(
    f: Callable[[np.ndarray], float],
    x0: np.ndarray,
    bounds: Bounds,
    max_evals: int,
) -> tuple[np.ndarray, float, int]:
    """Minimise f from x0 inside the bounds; returns (x, f(x), evals).

    Standard coefficients (reflect 1, expand 2, contract 0.5, shrink
    0.5) with an axis-aligned initial simplex stepping 5% of the range.
    Stops on simplex diameter < 1e-8, function spread < 1e-10, or the
    evaluation cap.
    """
    d = bounds.dim
    step = NM_INIT_STEP_FRAC * bounds.range
    simplex = np.tile(bounds.clip(np.asarray(x0, dtype=float)), (d + 1, 1))
    for j in range(d):
        v = simplex[j + 1].copy()
        v[j] = v[j] + step[j] if v[j] + step[j] <= bounds.upper[j] else v[j] - step[j]
        simplex[j + 1] = v
    evals = 0

    def call(x):
        nonlocal evals
        evals += 1
        return float(f(x))

    fvals = np.array([call(v) for v in simplex])

    while evals < max_evals:
        order = np.argsort(fvals, kind="stable")
        simplex, fvals = simplex[order], fvals[order]
        diameter = max(
            np.linalg.norm(simplex[i] - simplex[0]) for i in range(1, d + 1)
        )
        if diameter < NM_DIAMETER_TOL or fvals[-1] - fvals[0] < NM_FSPREAD_TOL:
            break
        centroid = simplex[:-1].mean(axis=0)
        xr = bounds.clip(centroid + NM_REFLECTION * (centroid - simplex[-1]))
        fr = call(xr)
        if fr < fvals[0]:
            if evals < max_evals:
                xe = bounds.clip(centroid + NM_EXPANSION * (xr - centroid))
                fe = call(xe)
                if fe < fr:
                    simplex[-1], fvals[-1] = xe, fe
                    continue
            simplex[-1], fvals[-1] = xr, fr
        elif fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
        else:
            if fr < fvals[-1]:
                simplex[-1], fvals[-1] = xr, fr
            xc = bounds.clip(centroid + NM_CONTRACTION * (simplex[-1] - centroid))
            if evals >= max_evals:
                break
            fc = call(xc)
            if fc < fvals[-1]:
                simplex[-1], fvals[-1] = xc, fc
            else:
                for i in range(1, d + 1):
                    if evals >= max_evals:
                        break
                    simplex[i] = simplex[0] + NM_SHRINK * (simplex[i] - simplex[0])
                    fvals[i] = call(simplex[i])

    best = int(np.argmin(fvals))
    return simplex[best], float(fvals[best]), evals


def _single_linkage(points: np.ndarray, threshold: float) -> np.ndarray:
    """Cluster labels from single-linkage cut at the given distance."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        d = np.linalg.norm(points[i + 1 :] - points[i], axis=1)
        for j in np.where(d <= threshold)[0] + i + 1:
            ri, rj = find(i), find(int(j))
            if ri != rj:
                parent[rj] = ri
    roots = [find(i) for i in range(n)]
    _, labels = np.unique(roots, return_inverse=True)
    return labels


def ela_local(
    D: Dataset,
    objective: Callable[[np.ndarray], float],
    bounds: Bounds,
    budget: ElaBudget,
    rng: Rng,
) -> FeatureVector:
    """Basin sizes, optima counts, and best-to-mean contrast features.

    Contrast features (f20, f21) are computed on the negated-fitness
    scale so they are non-negative.
    """
    starts = budget.starts_for(D.dim)
    if starts < 2:
        raise ValueError("local search needs at least 2 starts")

    D = D.canonical_order()
    gen = rng.gen
    replace = starts > D.m
    idx = gen.choice(D.m, size=starts, replace=replace)

    g = lambda x: -float(objective(x))
    optima = np.empty((starts, D.dim))
    values = np.empty(starts)
    total_evals = 0
    for s, i in enumerate(idx):
        x, v, used = nelder_mead(g, D.X[int(i)], bounds, budget.local_max_evals)
        optima[s], values[s] = x, v
        total_evals += used

    labels = _single_linkage(optima, CLUSTER_FRAC * float(np.linalg.norm(bounds.range)))
    n_clusters = int(labels.max()) + 1
    cluster_best = np.array(
        [values[labels == c].min() for c in range(n_clusters)]
    )
    basin = np.array([np.mean(labels == c) for c in range(n_clusters)])

    best_val = cluster_best.min()
    worst_val = cluster_best.max()
    is_best = cluster_best <= best_val + BASIN_FITNESS_TOL
    is_worst = cluster_best >= worst_val - BASIN_FITNESS_TOL
    is_mid = ~(is_best | is_worst)

    fv = FeatureVector()
    fv.set("f17", float(basin[is_best].mean()))
    if is_mid.any():
        fv.set("f18", float(basin[is_mid].mean()))
    else:
        fv.set_undefined("f18", STATUS_DEGENERATE)
    fv.set("f19", float(basin[is_worst].mean()))
    contrast = float(values.mean() - values.min())
    fv.set("f20", contrast)
    spread = float(values.max() - values.min())
    # a spread inside the convergence tolerance is a single fitness level
    fv.set("f21", 0.0 if spread <= BASIN_FITNESS_TOL else contrast / spread)
    fv.set("f22", float(n_clusters))
    fv.set("f23", n_clusters / starts)
    fv.evals_used = total_evals
    return fv
