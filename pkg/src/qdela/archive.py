"""CVT-MAP-Elites: centroid construction, elite archive, variation, main loop.

The archive tessellates the 2-D behaviour space with k centroids from
k-means over a uniform sample of the unit square; each cell keeps the
single best (highest fitness) solution ever assigned to it.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

import numpy as np

from .rng import Rng
from .sampling import uniform_sample
from .types import Bounds, Dataset, Sample
from .problems import Problem

__all__ = [
    "OperatorConfig",
    "Archive",
    "compute_centroids",
    "nearest_centroid",
    "archive_insert",
    "gaussian_variation",
    "isolinedd_variation",
    "run_map_elites",
    "archive_to_dataset",
]

CVT_SAMPLES_PER_CELL = 50
CVT_MAX_SAMPLES = 500_000
CVT_MAX_ITER = 100
CVT_REL_TOL = 1e-9

DEFAULT_GAUSSIAN_SIGMA_FRAC = 0.01  # of the per-dimension range
DEFAULT_ISO_SIGMA1 = 0.01
DEFAULT_ISO_SIGMA2 = 0.2


class EmptyArchive(RuntimeError):
    pass


@dataclass(frozen=True)
class OperatorConfig:
    """Variation operator choice and its noise scales."""

    kind: str = "isolinedd"  # gaussian | isolinedd
    sigma: float | None = None  # gaussian; None -> 0.01 * range per dim
    sigma1: float = DEFAULT_ISO_SIGMA1
    sigma2: float = DEFAULT_ISO_SIGMA2

    def __post_init__(self):
        if self.kind not in ("gaussian", "isolinedd"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        for s in (self.sigma, self.sigma1, self.sigma2):
            if s is not None and s < 0:
                raise ValueError("operator sigmas must be >= 0")


def _kmeans_pp_init(pts: np.ndarray, k: int, gen: np.random.Generator) -> np.ndarray:
    n = pts.shape[0]
    centers = np.empty((k, pts.shape[1]))
    centers[0] = pts[gen.integers(n)]
    d2 = np.sum((pts - centers[0]) ** 2, axis=1)
    for i in range(1, k):
        total = d2.sum()
        if total <= 0:
            centers[i:] = pts[gen.integers(n, size=k - i)]
            break
        probs = d2 / total
        centers[i] = pts[gen.choice(n, p=probs)]
        d2 = np.minimum(d2, np.sum((pts - centers[i]) ** 2, axis=1))
    return centers


def _assign_chunked(pts: np.ndarray, centers: np.ndarray, chunk: int = 4096):
    """Labels and squared distance to the nearest center, chunked over rows."""
    n = pts.shape[0]
    labels = np.empty(n, dtype=np.int64)
    mind2 = np.empty(n)
    for start in range(0, n, chunk):
        block = pts[start : start + chunk]
        d2 = (
            np.sum(block * block, axis=1)[:, None]
            - 2.0 * block @ centers.T
            + np.sum(centers * centers, axis=1)[None, :]
        )
        labels[start : start + chunk] = np.argmin(d2, axis=1)
        mind2[start : start + chunk] = np.maximum(d2[np.arange(len(block)), labels[start : start + chunk]], 0.0)
    return labels, mind2


_centroid_cache: dict[tuple[int, int], np.ndarray] = {}


def compute_centroids(k: int, rng: Rng) -> np.ndarray:
    """k-means centroids of a uniform sample of the unit square, shape (k, 2).

    Uses k-means++ seeding and Lloyd iterations until the relative
    inertia change drops below CVT_REL_TOL or CVT_MAX_ITER iterations.
    The result is memoised on (k, seed): the construction is pure.
    """
    if k < 1:
        raise ValueError("centroid count must be >= 1")
    key = (k, rng.seed)
    cached = _centroid_cache.get(key)
    if cached is not None:
        return cached.copy()
    n = min(CVT_SAMPLES_PER_CELL * k, CVT_MAX_SAMPLES)
    n = max(n, k)
    gen = rng.gen
    pts = gen.random((n, 2))
    centers = _kmeans_pp_init(pts, k, gen)
    prev_inertia = None
    for _ in range(CVT_MAX_ITER):
        labels, mind2 = _assign_chunked(pts, centers)
        inertia = mind2.sum()
        counts = np.bincount(labels, minlength=k)
        sums = np.zeros_like(centers)
        np.add.at(sums, labels, pts)
        nonempty = counts > 0
        centers[nonempty] = sums[nonempty] / counts[nonempty, None]
        if prev_inertia is not None and prev_inertia > 0:
            if (prev_inertia - inertia) / prev_inertia < CVT_REL_TOL:
                break
        prev_inertia = inertia
    _centroid_cache[key] = centers.copy()
    return centers


def nearest_centroid(b: np.ndarray, centroids: np.ndarray) -> int:
    """Index of the closest centroid; distance ties go to the lowest index."""
    d2 = np.sum((centroids - np.asarray(b, dtype=float)) ** 2, axis=1)
    return int(np.argmin(d2))


class Archive:
    """One elite per CVT cell, replaced only on strict fitness improvement."""

    def __init__(self, centroids: np.ndarray):
        self.centroids = np.asarray(centroids, dtype=float)
        self.cells: list[Sample | None] = [None] * len(self.centroids)
        self.eval_count = 0

    @property
    def k(self) -> int:
        return len(self.centroids)

    @property
    def occupied_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.cells) if c is not None]

    @property
    def n_occupied(self) -> int:
        return sum(c is not None for c in self.cells)

    def insert(self, sample: Sample) -> bool:
        return archive_insert(self, sample)

    def snapshot(self) -> "Archive":
        snap = Archive(self.centroids)
        snap.cells = copy.deepcopy(self.cells)
        snap.eval_count = self.eval_count
        return snap


def archive_insert(archive: Archive, sample: Sample) -> bool:
    """Place the sample in its behaviour cell iff it strictly improves it."""
    if sample.behaviour is None:
        raise ValueError("archive candidates need a behaviour descriptor")
    cell = nearest_centroid(sample.behaviour, archive.centroids)
    return _insert_at(archive, cell, sample)


def _insert_at(archive: Archive, cell: int, sample: Sample) -> bool:
    incumbent = archive.cells[cell]
    if incumbent is None or sample.fitness > incumbent.fitness:
        archive.cells[cell] = sample
        return True
    return False


def gaussian_variation(
    parent: np.ndarray, cfg: OperatorConfig, bounds: Bounds, rng: Rng
) -> np.ndarray:
    sigma = cfg.sigma if cfg.sigma is not None else DEFAULT_GAUSSIAN_SIGMA_FRAC * bounds.range
    child = parent + sigma * rng.gen.standard_normal(parent.shape)
    return bounds.clip(child)


def isolinedd_variation(
    p1: np.ndarray, p2: np.ndarray, cfg: OperatorConfig, bounds: Bounds, rng: Rng
) -> np.ndarray:
    """Isotropic noise plus noise along the line between the two parents."""
    gen = rng.gen
    iso = cfg.sigma1 * gen.standard_normal(p1.shape)
    line = cfg.sigma2 * gen.standard_normal() * (p2 - p1)
    return bounds.clip(p1 + iso + line)


def _make_batch(
    archive: Archive, cfg: OperatorConfig, bounds: Bounds, batch: int, gen: np.random.Generator
) -> np.ndarray:
    occupied = archive.occupied_indices
    n = len(occupied)
    children = np.empty((batch, bounds.dim))
    parents_a = gen.integers(n, size=batch)
    if cfg.kind == "gaussian":
        sigma = cfg.sigma if cfg.sigma is not None else DEFAULT_GAUSSIAN_SIGMA_FRAC * bounds.range
        for i in range(batch):
            p = archive.cells[occupied[parents_a[i]]].genotype
            children[i] = p + sigma * gen.standard_normal(bounds.dim)
    else:
        for i in range(batch):
            pa = int(parents_a[i])
            if n >= 2:
                pb = int(gen.integers(n - 1))
                if pb >= pa:
                    pb += 1
            else:
                pb = pa
            p1 = archive.cells[occupied[pa]].genotype
            p2 = archive.cells[occupied[pb]].genotype
            children[i] = (
                p1
                + cfg.sigma1 * gen.standard_normal(bounds.dim)
                + cfg.sigma2 * gen.standard_normal() * (p2 - p1)
            )
    return np.clip(children, bounds.lower, bounds.upper)


def run_map_elites(
    problem: Problem,
    centroids: np.ndarray,
    operator: OperatorConfig,
    budget: int,
    batch: int,
    checkpoints: list[int],
    rng: Rng,
) -> list[tuple[int, Archive]]:
    """Generational CVT-MAP-Elites loop with archive snapshots.

    Generation 0 evaluates `batch` uniform random genotypes; afterwards
    parents are drawn uniformly from the occupied cells.  Snapshots are
    taken right after insertion whenever the running evaluation count
    hits a checkpoint.
    """
    if budget % batch != 0:
        raise ValueError("budget must be a multiple of the batch size")
    bad = [c for c in checkpoints if c % batch != 0 or not (0 < c <= budget)]
    if bad:
        raise ValueError(f"checkpoints must be multiples of batch within budget: {bad}")

    checkpoints = sorted(set(checkpoints))
    gen = rng.gen
    archive = Archive(centroids)
    snapshots: list[tuple[int, Archive]] = []

    while archive.eval_count < budget:
        if archive.eval_count == 0:
            X = uniform_sample(batch, problem.bounds, rng)
        else:
            X = _make_batch(archive, operator, problem.bounds, batch, gen)
        fitness = problem.objective(X)
        behaviour = problem.behaviour(X)
        cells = np.argmin(
            np.sum((behaviour[:, None, :] - centroids[None, :, :]) ** 2, axis=2),
            axis=1,
        )
        for i in range(batch):
            _insert_at(archive, int(cells[i]), Sample(X[i], float(fitness[i]), behaviour[i]))
        archive.eval_count += batch
        if archive.eval_count in checkpoints:
            snapshots.append((archive.eval_count, archive.snapshot()))
    return snapshots


def archive_to_dataset(archive: Archive) -> Dataset:
    """Occupied cells of the archive as a feature-extraction dataset."""
    elites = [c for c in archive.cells if c is not None]
    if not elites:
        raise EmptyArchive("cannot build a dataset from an empty archive")
    return Dataset.from_samples(elites)
