"""Surrogate-model fit features (f24-f32).

Four least-squares models are fitted to (X, y): linear, linear with
pairwise interactions, quadratic without interactions, and the full
quadratic.  Features report adjusted R^2 values and slope/curvature
coefficient statistics.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..types import Dataset
from .common import (
    FeatureVector,
    InsufficientSamples,
    DegenerateData,
    STATUS_DEGENERATE,
    STATUS_INSUFFICIENT,
)

__all__ = ["ela_meta", "adjusted_r2"]


def _lstsq(design: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, float]:
    """Minimum-norm least squares fit; returns (coefficients, R^2)."""
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    ss_res = float(resid @ resid)
    centered = y - y.mean()
    ss_tot = float(centered @ centered)
    if ss_tot == 0.0:
        raise DegenerateData("constant fitness admits no fit quality measure")
    return coef, 1.0 - ss_res / ss_tot


def adjusted_r2(r2: float, m: int, p: int) -> float:
    return 1.0 - (1.0 - r2) * (m - 1) / (m - p - 1)


def _interactions(X: np.ndarray) -> np.ndarray:
    d = X.shape[1]
    pairs = list(itertools.combinations(range(d), 2))
    if not pairs:
        return np.empty((X.shape[0], 0))
    return np.column_stack([X[:, i] * X[:, j] for i, j in pairs])


def ela_meta(D: Dataset) -> FeatureVector:
    """Adjusted-R^2 and coefficient statistics of four surrogate fits.

    Sub-models with more parameters than samples leave their features
    undefined rather than failing the whole group.
    """
    X, y, m = D.X, D.y, D.m
    d = D.dim
    fv = FeatureVector()
    ones = np.ones((m, 1))

    def fit(parts: list[np.ndarray]) -> tuple[np.ndarray, float] | None:
        design = np.column_stack([ones] + parts)
        p = design.shape[1] - 1
        if m <= p + 1:
            return None
        coef, r2 = _lstsq(design, y)
        return coef, adjusted_r2(r2, m, p)

    # linear: f24 adj-R2, f25/f27 extreme |slopes|, f26 ratio, f28 intercept
    lin = fit([X])
    if lin is None:
        for code in ("f24", "f25", "f26", "f27", "f28"):
            fv.set_undefined(code, STATUS_INSUFFICIENT)
    else:
        coef, adj = lin
        slopes = np.abs(coef[1 : 1 + d])
        fv.set("f24", adj)
        fv.set("f25", float(slopes.max()))
        fv.set("f27", float(slopes.min()))
        if slopes.min() == 0.0:
            fv.set_undefined("f26", STATUS_DEGENERATE)
        else:
            fv.set("f26", float(slopes.max() / slopes.min()))
        fv.set("f28", float(coef[0]))

    inter = _interactions(X)
    lin_i = fit([X, inter]) if inter.shape[1] else lin
    if lin_i is None:
        fv.set_undefined("f29", STATUS_INSUFFICIENT)
    else:
        fv.set("f29", lin_i[1])

    quad = fit([X, X * X])
    if quad is None:
        for code in ("f30", "f31"):
            fv.set_undefined(code, STATUS_INSUFFICIENT)
    else:
        coef, adj = quad
        qcoef = np.abs(coef[1 + d : 1 + 2 * d])
        fv.set("f30", adj)
        if qcoef.min() == 0.0:
            fv.set_undefined("f31", STATUS_DEGENERATE)
        else:
            fv.set("f31", float(qcoef.max() / qcoef.min()))

    quad_i = fit([X, X * X, inter]) if inter.shape[1] else quad
    if quad_i is None:
        fv.set_undefined("f32", STATUS_INSUFFICIENT)
    else:
        fv.set("f32", quad_i[1])

    return fv
