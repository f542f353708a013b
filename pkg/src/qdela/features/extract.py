"""Top-level feature extraction over a selection of groups."""

from __future__ import annotations

from typing import Iterable

from ..rng import Rng
from ..types import Dataset
from ..problems import Problem
from .common import (
    GROUP_CODES,
    ElaBudget,
    FeatureError,
    FeatureVector,
)
from .convexity import ela_conv
from .distribution import ela_distr
from .levelset import ela_level
from .localsearch import ela_local
from .metamodel import ela_meta
from .nbc import nbc_features

__all__ = ["extract_all"]

OBJECTIVE_GROUPS = ("conv", "local")


def extract_all(
    D: Dataset,
    problem: Problem | None,
    budget: ElaBudget,
    selector: Iterable[str],
    rng: Rng,
) -> FeatureVector:
    """Compute the selected feature groups on one dataset.

    Groups probing the objective (conv, local) need a problem and use
    their own derived generator, so group choice never perturbs another
    group's stream.  A failing group marks its own codes undefined and
    the rest still compute.
    """
    selector = list(selector)
    unknown = [g for g in selector if g not in GROUP_CODES]
    if unknown:
        raise ValueError(f"unknown feature groups: {unknown}")
    if problem is None and any(g in OBJECTIVE_GROUPS for g in selector):
        raise ValueError("conv/local feature groups require a problem objective")

    result = FeatureVector()
    for group in selector:
        try:
            if group == "distr":
                fv = ela_distr(D)
            elif group == "meta":
                fv = ela_meta(D)
            elif group == "nbc":
                fv = nbc_features(D)
            elif group == "level":
                fv = ela_level(D, budget.level_folds)
            elif group == "conv":
                fv = ela_conv(
                    D, problem.objective, budget.conv_pairs, rng.derive("conv")
                )
            else:
                fv = ela_local(
                    D, problem.objective, problem.bounds, budget, rng.derive("local")
                )
        except FeatureError as err:
            fv = FeatureVector()
            for code in GROUP_CODES[group]:
                fv.set_undefined(code, err.status)
        result.update(fv)
    return result
