import numpy as np
import pytest

from qdela import Dataset
from qdela.features import ela_distr
from qdela.features.common import STATUS_DEGENERATE


def make_dataset(y):
    y = np.asarray(y, dtype=float)
    return Dataset(np.arange(len(y), dtype=float).reshape(-1, 1), y)


def test_symmetric_sample_has_zero_skewness():
    fv = ela_distr(make_dataset([1, 2, 3, 4, 5]))
    assert fv["f7"] == pytest.approx(0)


def test_two_point_mass_kurtosis():
    fv = ela_distr(make_dataset([-1, -1, 1, 1]))
    assert fv["f5"] == pytest.approx(-2)


def test_gaussian_moments():
    gen = np.random.default_rng(0)
    y = gen.normal(size=20000)
    fv = ela_distr(make_dataset(y))
    assert abs(fv["f5"]) < 0.1
    assert abs(fv["f7"]) < 0.1
    assert fv["f6"] == 1


def test_bimodal_mixture_two_peaks():
    gen = np.random.default_rng(1)
    y = np.concatenate([gen.normal(0, 0.5, 500), gen.normal(10, 0.5, 500)])
    fv = ela_distr(make_dataset(y))
    assert fv["f6"] == 2


def test_tiny_outlier_bump_adds_no_mode():
    gen = np.random.default_rng(2)
    base = gen.normal(0, 0.5, 998)
    bump = gen.normal(10, 0.01, 2)  # 0.2% of the mass: below the 1% threshold
    with_bump = ela_distr(make_dataset(np.concatenate([base, bump])))
    without = ela_distr(make_dataset(base))
    assert with_bump["f6"] == without["f6"]


def test_constant_fitness_degenerate():
    fv = ela_distr(make_dataset([3, 3, 3, 3]))
    assert fv.values["f5"] is None
    assert fv.values["f7"] is None
    assert fv.status["f5"] == STATUS_DEGENERATE
    assert fv["f6"] == 1


def test_too_few_samples():
    from qdela.features import InsufficientSamples

    with pytest.raises(InsufficientSamples):
        ela_distr(make_dataset([1, 2, 3]))


def test_skewness_matches_direct_formula():
    gen = np.random.default_rng(3)
    y = gen.exponential(size=500)
    fv = ela_distr(make_dataset(y))
    c = y - y.mean()
    assert fv["f7"] == pytest.approx(np.mean(c**3) / np.mean(c**2) ** 1.5)
    assert fv["f5"] == pytest.approx(np.mean(c**4) / np.mean(c**2) ** 2 - 3)
