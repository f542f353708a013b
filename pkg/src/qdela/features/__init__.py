"""Landscape features f1-f37 computed from an evaluated dataset.

Groups and their codes:

    conv   f1-f4    convexity probes along random chords (needs the objective)
    distr  f5-f7    moments and modality of the fitness distribution
    level  f8-f16   LDA/QDA misclassification at fitness quantile level sets
    local  f17-f23  basins found by restarted simplex search (needs the objective)
    meta   f24-f32  goodness of fit of linear/quadratic surrogate models
    nbc    f33-f37  nearest-better-neighbour distance statistics

Fitness is maximised everywhere in this package; "better" means larger.
Groups that probe the objective directly (conv, local) internally work
on the negated fitness so that their conventions match the classical
minimisation-oriented definitions.
"""

from __future__ import annotations

from .common import (
    ALL_CODES,
    GROUP_CODES,
    GROUPS,
    DegenerateData,
    ElaBudget,
    FeatureError,
    FeatureVector,
    InsufficientSamples,
)
from .convexity import ela_conv
from .distribution import ela_distr
from .levelset import ela_level
from .localsearch import ela_local, nelder_mead
from .metamodel import ela_meta
from .nbc import nbc_features
from .extract import extract_all

__all__ = [
    "ALL_CODES",
    "GROUP_CODES",
    "GROUPS",
    "DegenerateData",
    "ElaBudget",
    "FeatureError",
    "FeatureVector",
    "InsufficientSamples",
    "ela_conv",
    "ela_distr",
    "ela_level",
    "ela_local",
    "ela_meta",
    "nbc_features",
    "nelder_mead",
    "extract_all",
]
