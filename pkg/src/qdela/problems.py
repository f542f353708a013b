"""Benchmark objectives, behaviour descriptors, and problem instances.

All objectives are fitness-maximised: classic minimisation benchmarks
(sphere, rastrigin) are returned negated, so their global optimum has
fitness 0.  Behaviour functions map a genotype to a 2-D descriptor in
[0, 1]^2.

Objective and behaviour functions accept either a single genotype
(shape (d,)) or a batch (shape (n, d)); reductions run over the last
axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .rng import Rng
from .types import Bounds

__all__ = [
    "Problem",
    "sphere_objective",
    "rastrigin_objective",
    "arm_forward_kinematics",
    "arm_objective",
    "behaviour_subset",
    "behaviour_sigmoid",
    "behaviour_sine",
    "behaviour_arm",
    "make_problem",
    "DOMAINS",
    "BEHAVIOURS",
]

DOMAINS = ("sphere", "rastrigin", "arm")
BEHAVIOURS = ("subset", "sigmoid", "sine", "arm")

ARM_REACH = 12.0


class InvalidProblem(ValueError):
    """Raised for incompatible (domain, behaviour) combinations."""


@dataclass(frozen=True)
class Problem:
    """A bound benchmark instance: objective + behaviour + search box."""

    name: str
    behaviour_name: str
    dim: int
    bounds: Bounds
    objective: Callable[[np.ndarray], np.ndarray]
    behaviour: Callable[[np.ndarray], np.ndarray]


def sphere_objective(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return -np.sum(x * x, axis=-1)


def rastrigin_objective(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    d = x.shape[-1]
    return -(10.0 * d + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x), axis=-1))


def arm_forward_kinematics(angles: np.ndarray, link_lengths: np.ndarray) -> np.ndarray:
    """End-effector position of a planar arm, shape (..., 2).

    Joint k contributes link k rotated by the cumulative sum of the
    first k+1 joint angles.
    """
    angles = np.asarray(angles, dtype=float)
    link_lengths = np.asarray(link_lengths, dtype=float)
    cum = np.cumsum(angles, axis=-1)
    ex = np.sum(link_lengths * np.cos(cum), axis=-1)
    ey = np.sum(link_lengths * np.sin(cum), axis=-1)
    return np.stack([ex, ey], axis=-1)


def arm_objective(angles: np.ndarray) -> np.ndarray:
    """Negative population variance of the joint angles (smoothness)."""
    angles = np.asarray(angles, dtype=float)
    return -np.var(angles, axis=-1)


def behaviour_subset(x: np.ndarray, bounds: Bounds) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] < 2:
        raise InvalidProblem("subset behaviour needs at least 2 dimensions")
    lo = bounds.lower[:2]
    rng_ = bounds.range[:2]
    return (x[..., :2] - lo) / rng_


def behaviour_sigmoid(x: np.ndarray, W: np.ndarray) -> np.ndarray:
    z = np.asarray(x, dtype=float) @ W
    return 1.0 / (1.0 + np.exp(-z))


def behaviour_sine(x: np.ndarray, W: np.ndarray) -> np.ndarray:
    z = np.asarray(x, dtype=float) @ W
    return (np.sin(z) + 1.0) / 2.0


def behaviour_arm(angles: np.ndarray, link_lengths: np.ndarray) -> np.ndarray:
    """End-effector position mapped from [-reach, reach]^2 to [0, 1]^2."""
    pos = arm_forward_kinematics(angles, link_lengths)
    b = (pos + ARM_REACH) / (2.0 * ARM_REACH)
    # kinematics can overshoot the reach envelope by rounding only
    return np.clip(b, 0.0, 1.0)


def make_problem(name: str, behaviour_name: str, dim: int, config_rng: Rng) -> Problem:
    """Build a benchmark instance from the experiment grid vocabulary.

    The projection matrix for sigmoid/sine behaviours is drawn once here,
    so every replicate of a configuration solves the same instance.
    """
    if name not in DOMAINS:
        raise InvalidProblem(f"unknown domain {name!r}")
    if dim < 1:
        raise InvalidProblem("dimension must be >= 1")

    if name == "arm":
        if behaviour_name != "arm":
            raise InvalidProblem("the arm domain only supports the arm behaviour")
        bounds = Bounds.cube(-np.pi, np.pi, dim)
        links = np.full(dim, ARM_REACH / dim)
        return Problem(
            name=name,
            behaviour_name="arm",
            dim=dim,
            bounds=bounds,
            objective=arm_objective,
            behaviour=lambda x: behaviour_arm(x, links),
        )

    if behaviour_name not in ("subset", "sigmoid", "sine"):
        raise InvalidProblem(
            f"behaviour {behaviour_name!r} is not valid for domain {name!r}"
        )
    bounds = Bounds.cube(-5.0, 5.0, dim)
    objective = sphere_objective if name == "sphere" else rastrigin_objective

    if behaviour_name == "subset":
        if dim < 2:
            raise InvalidProblem("subset behaviour needs at least 2 dimensions")
        behaviour = lambda x: behaviour_subset(x, bounds)
    else:
        W = config_rng.derive("projection").gen.standard_normal((dim, 2))
        if behaviour_name == "sigmoid":
            behaviour = lambda x: behaviour_sigmoid(x, W)
        else:
            behaviour = lambda x: behaviour_sine(x, W)

    return Problem(
        name=name,
        behaviour_name=behaviour_name,
        dim=dim,
        bounds=bounds,
        objective=objective,
        behaviour=behaviour,
    )
