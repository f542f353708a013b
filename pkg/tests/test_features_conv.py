import numpy as np
import pytest

from qdela import Bounds, Dataset, Rng, lhs_sample
from qdela.features import ela_conv, InsufficientSamples


def linear_fitness(x):
    return 2.0 * np.sum(x, axis=-1) + 1.0


def make_dataset(objective, m=100, d=3, seed=0):
    X = lhs_sample(m, Bounds.cube(-5, 5, d), Rng(seed))
    return Dataset(X, objective(X))


def test_linear_objective_is_fully_linear():
    D = make_dataset(linear_fitness)
    fv = ela_conv(D, linear_fitness, 500, Rng(1))
    assert fv["f4"] == 1
    assert fv["f2"] <= 1e-12
    assert fv.evals_used == 500


def test_sphere_fitness_registers_convex():
    sphere_fitness = lambda x: -np.sum(np.square(x), axis=-1)
    D = make_dataset(sphere_fitness)
    fv = ela_conv(D, sphere_fitness, 1000, Rng(2))
    assert fv["f1"] >= 0.99


def test_deltas_match_brute_force_signs():
    # an objective whose minimised form is strictly concave: every chord
    # probe must report non-convexity
    hill = lambda x: np.sum(np.square(x), axis=-1)  # fitness = +sphere
    D = make_dataset(hill)
    fv = ela_conv(D, hill, 500, Rng(3))
    assert fv["f1"] == 0


def test_zero_pairs_invalid():
    D = make_dataset(linear_fitness)
    with pytest.raises(ValueError):
        ela_conv(D, linear_fitness, 0, Rng(0))


def test_single_sample_insufficient():
    D = Dataset(np.zeros((1, 2)), np.zeros(1))
    with pytest.raises(InsufficientSamples):
        ela_conv(D, linear_fitness, 10, Rng(0))


def test_permutation_invariance():
    sphere_fitness = lambda x: -np.sum(np.square(x), axis=-1)
    D = make_dataset(sphere_fitness, m=50)
    perm = np.random.default_rng(5).permutation(D.m)
    shuffled = Dataset(D.X[perm], D.y[perm])
    a = ela_conv(D, sphere_fitness, 200, Rng(7))
    b = ela_conv(shuffled, sphere_fitness, 200, Rng(7))
    assert a.values == b.values
