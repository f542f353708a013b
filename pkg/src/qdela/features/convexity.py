"""Convexity features from random-chord probes of the objective (f1-f4).

Each probe interpolates between two dataset points and compares the
objective at the interpolated genotype against the linear interpolation
of the endpoint values.  The comparison runs on the negated (minimised)
fitness scale, so f1 is the classical probability-of-convexity.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..rng import Rng
from ..types import Dataset
from .common import FeatureVector, InsufficientSamples

__all__ = ["ela_conv"]

CONV_EPS = 1e-10


def ela_conv(
    D: Dataset,
    objective: Callable[[np.ndarray], float],
    conv_pairs: int,
    rng: Rng,
) -> FeatureVector:
    """f1 convexity probability, f2/f3 linear deviations, f4 linearity probability.

    Consumes exactly `conv_pairs` extra objective evaluations.
    """
    if conv_pairs < 1:
        raise ValueError("conv_pairs must be >= 1")
    if D.m < 2:
        raise InsufficientSamples("convexity probes need at least 2 samples")

    D = D.canonical_order()
    gen = rng.gen
    m = D.m
    deltas = np.empty(conv_pairs)
    for t in range(conv_pairs):
        i = int(gen.integers(m))
        j = int(gen.integers(m - 1))
        if j >= i:
            j += 1
        w = gen.random()
        x = w * D.X[i] + (1.0 - w) * D.X[j]
        # negated fitness: probe the minimised landscape
        g = -float(objective(x))
        deltas[t] = g - (w * -D.y[i] + (1.0 - w) * -D.y[j])

    fv = FeatureVector()
    fv.set("f1", float(np.mean(deltas < -CONV_EPS)))
    fv.set("f2", float(np.mean(np.abs(deltas))))
    fv.set("f3", float(np.mean(deltas)))
    fv.set("f4", float(np.mean(np.abs(deltas) <= CONV_EPS)))
    fv.evals_used = conv_pairs
    return fv
