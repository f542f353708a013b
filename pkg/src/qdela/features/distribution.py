"""Fitness-distribution features: skewness, kurtosis, and modality (f5-f7)."""

from __future__ import annotations

import numpy as np

from ..types import Dataset
from .common import FeatureVector, InsufficientSamples, STATUS_DEGENERATE

__all__ = ["ela_distr", "kde_density", "count_modes"]

KDE_GRID_POINTS = 512
MODE_MASS_THRESHOLD = 0.01

_trapezoid = getattr(np, "trapezoid", np.trapz)


def _silverman_bandwidth(y: np.ndarray) -> float:
    sd = float(np.std(y))
    q1, q3 = np.quantile(y, [0.25, 0.75])
    iqr = float(q3 - q1)
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    if spread <= 0:
        spread = sd if sd > 0 else 1.0
    return 0.9 * spread * y.size ** (-0.2)


def kde_density(y: np.ndarray, h: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Gaussian KDE on a 512-point grid spanning [min - 3h, max + 3h]."""
    y = np.asarray(y, dtype=float)
    if h is None:
        h = _silverman_bandwidth(y)
    grid = np.linspace(y.min() - 3 * h, y.max() + 3 * h, KDE_GRID_POINTS)
    z = (grid[:, None] - y[None, :]) / h
    dens = np.exp(-0.5 * z * z).sum(axis=1) / (y.size * h * np.sqrt(2 * np.pi))
    return grid, dens


def count_modes(grid: np.ndarray, dens: np.ndarray) -> int:
    """Number of KDE modes whose basin holds at least 1% of the mass.

    A mode's basin runs between the local minima flanking it (or the
    grid edges); its mass is the trapezoid integral over that stretch.
    """
    n = len(dens)
    interior = np.where((dens[1:-1] > dens[:-2]) & (dens[1:-1] > dens[2:]))[0] + 1
    maxima = list(interior)
    if dens[0] > dens[1]:
        maxima.insert(0, 0)
    if dens[-1] > dens[-2]:
        maxima.append(n - 1)
    if len(maxima) <= 1:
        return 1
    # basin boundaries: the argmin between consecutive maxima
    cuts = [0]
    for a, b in zip(maxima, maxima[1:]):
        cuts.append(a + int(np.argmin(dens[a : b + 1])))
    cuts.append(n - 1)
    total = _trapezoid(dens, grid)
    if total <= 0:
        return 1
    modes = 0
    for lo, hi in zip(cuts, cuts[1:]):
        mass = _trapezoid(dens[lo : hi + 1], grid[lo : hi + 1]) / total
        if mass >= MODE_MASS_THRESHOLD:
            modes += 1
    return max(modes, 1)


def ela_distr(D: Dataset) -> FeatureVector:
    """f5 excess kurtosis, f6 number of KDE peaks, f7 skewness.

    Moments are population central moments.  Constant fitness leaves
    f5/f7 undefined and reports a single peak.
    """
    if D.m < 4:
        raise InsufficientSamples("distribution features need at least 4 samples")
    y = D.y
    fv = FeatureVector()
    m2 = float(np.mean((y - y.mean()) ** 2))
    if m2 == 0.0:
        fv.set_undefined("f5", STATUS_DEGENERATE)
        fv.set_undefined("f7", STATUS_DEGENERATE)
        fv.set("f6", 1.0)
        return fv
    m3 = float(np.mean((y - y.mean()) ** 3))
    m4 = float(np.mean((y - y.mean()) ** 4))
    fv.set("f5", m4 / m2**2 - 3.0)
    fv.set("f7", m3 / m2**1.5)
    grid, dens = kde_density(y)
    fv.set("f6", float(count_modes(grid, dens)))
    return fv
