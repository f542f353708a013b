"""Core domain types shared across the package.

Fitness is always maximised; minimisation benchmarks are negated where
they are defined (see qdela.problems).  Behaviours are always 2-D and
live in the unit square.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Bounds", "Sample", "Dataset"]


@dataclass(frozen=True)
class Bounds:
    """Axis-aligned genotype box, lower[i] < upper[i]."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("bounds must be 1-D vectors of equal length")
        if not np.all(lo < hi):
            raise ValueError("every lower bound must be < its upper bound")

    @classmethod
    def cube(cls, lo: float, hi: float, dim: int) -> "Bounds":
        return cls(np.full(dim, float(lo)), np.full(dim, float(hi)))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def range(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)


@dataclass
class Sample:
    """One evaluated genotype: decision vector, fitness, optional behaviour."""

    genotype: np.ndarray
    fitness: float
    behaviour: np.ndarray | None = None

    def __post_init__(self):
        self.genotype = np.asarray(self.genotype, dtype=float)
        self.fitness = float(self.fitness)
        if not np.isfinite(self.fitness):
            raise ValueError("fitness must be finite")
        if self.behaviour is not None:
            self.behaviour = np.asarray(self.behaviour, dtype=float)


@dataclass
class Dataset:
    """A matrix of m genotypes with fitness values (and optional behaviours).

    X has shape (m, d), y shape (m,), behaviours shape (m, 2) or None.
    """

    X: np.ndarray
    y: np.ndarray
    behaviours: np.ndarray | None = None

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=float))
        self.y = np.asarray(self.y, dtype=float).ravel()
        if self.X.shape[0] != self.y.size:
            raise ValueError("X and y row counts disagree")
        if self.X.shape[0] < 1:
            raise ValueError("dataset must contain at least one sample")
        if self.behaviours is not None:
            self.behaviours = np.asarray(self.behaviours, dtype=float)

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    @classmethod
    def from_samples(cls, samples: list[Sample]) -> "Dataset":
        X = np.array([s.genotype for s in samples])
        y = np.array([s.fitness for s in samples])
        if all(s.behaviour is not None for s in samples):
            B = np.array([s.behaviour for s in samples])
        else:
            B = None
        return cls(X, y, B)

    def canonical_order(self) -> "Dataset":
        """Rows sorted lexicographically by (y, x0, x1, ...).

        Feature groups that subsample rows by index work on this order,
        which makes their output invariant to row permutations.
        """
        keys = tuple(self.X[:, j] for j in reversed(range(self.dim))) + (self.y,)
        idx = np.lexsort(keys)
        B = self.behaviours[idx] if self.behaviours is not None else None
        return Dataset(self.X[idx], self.y[idx], B)
