"""End-to-end acceptance battery.

Each test prints one CRITERION line so a full run reads as a checklist.
Criteria 5, 6, and 8 share one scaled experiment (sphere, 8 dimensions,
archive 1000, 100k evaluations, 10 replicates) built once per session.
"""

import itertools

import numpy as np
import pytest

from qdela import (
    Archive,
    Bounds,
    Dataset,
    ExperimentConfig,
    Rng,
    Sample,
    compare,
    lhs_sample,
    mann_whitney_u,
    run_experiment,
)
from qdela.features import ela_conv, ela_distr, ela_meta
from qdela.features.nbc import nearest_better_distances
from qdela.harness import read_records_csv


_capsys = None


@pytest.fixture(autouse=True)
def _uncaptured_report(capsys):
    """Route report() past pytest's capture so each criterion line shows."""
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def report(num: int, ok: bool, detail: str = ""):
    line = f"CRITERION {num}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
    if _capsys is not None:
        with _capsys.disabled():
            print(f"\n{line}")
    else:
        print(line)
    assert ok, f"criterion {num} failed: {detail}"


# --- criterion 1: LHS stratification ---------------------------------------


def test_criterion_1_lhs_stratification():
    gen = np.random.default_rng(2024)
    ok = True
    for _ in range(100):
        m = int(gen.integers(1, 2001))
        d = int(gen.integers(1, 33))
        bounds = Bounds.cube(-5, 5, d)
        X = lhs_sample(m, bounds, Rng(int(gen.integers(2**32))))
        unit = (X - bounds.lower) / bounds.range
        strata = np.minimum((unit * m).astype(int), m - 1)
        for j in range(d):
            if not np.array_equal(np.sort(strata[:, j]), np.arange(m)):
                ok = False
    report(1, ok)


# --- criterion 2: archive oracle equivalence --------------------------------


class NaiveArchive:
    def __init__(self, centroids):
        self.centroids = centroids
        self.cells = {}

    def insert(self, s):
        best, best_d = 0, float("inf")
        for i, c in enumerate(self.centroids):
            d = float(np.sqrt(np.sum((s.behaviour - c) ** 2)))
            if d < best_d:
                best, best_d = i, d
        if best not in self.cells or s.fitness > self.cells[best].fitness:
            self.cells[best] = s


def test_criterion_2_archive_oracle():
    ok = True
    for seed in range(50):
        gen = np.random.default_rng(seed)
        k = int(gen.integers(1, 51))
        centroids = gen.random((k, 2))
        fast = Archive(centroids)
        slow = NaiveArchive(centroids)
        for _ in range(1000):
            s = Sample(gen.random(2), float(gen.normal()), gen.random(2))
            fast.insert(s)
            slow.insert(s)
        for i in range(k):
            a = fast.cells[i]
            b = slow.cells.get(i)
            if (a is None) != (b is None) or (a is not None and a is not b):
                ok = False
    report(2, ok)


# --- criterion 3: feature correctness battery --------------------------------


def test_criterion_3_feature_battery():
    checks = []

    X = lhs_sample(200, Bounds.cube(-5, 5, 2), Rng(0))
    fv = ela_meta(Dataset(X, 2 * X[:, 0] + 3 * X[:, 1] + 1))
    checks.append(abs(fv["f24"] - 1) <= 1e-9)

    fv = ela_meta(Dataset(X, np.sum(X * X, axis=1)))
    checks.append(abs(fv["f30"] - 1) <= 1e-9 and abs(fv["f31"] - 1) <= 1e-9)

    y = np.array([-1.0, -1.0, 1.0, 1.0])
    fv = ela_distr(Dataset(np.arange(4, dtype=float).reshape(-1, 1), y))
    checks.append(fv["f5"] == -2)

    gen = np.random.default_rng(1)
    mix = np.concatenate([gen.normal(0, 0.5, 500), gen.normal(10, 0.5, 500)])
    fv = ela_distr(Dataset(np.arange(1000, dtype=float).reshape(-1, 1), mix))
    checks.append(fv["f6"] == 2)

    nb_ok = True
    for seed in range(50):
        g = np.random.default_rng(seed)
        m = int(g.integers(4, 201))
        D = Dataset(g.random((m, 3)), g.normal(size=m))
        _, nb, _ = nearest_better_distances(D)
        for i in range(m):
            better = np.where(D.y > D.y[i])[0]
            expected = (
                min(
                    float(np.sqrt(np.sum((D.X[j] - D.X[i]) ** 2)))
                    for j in better
                )
                if better.size
                else None
            )
            got = None if np.isnan(nb[i]) else nb[i]
            if (expected is None) != (got is None) or (
                expected is not None and got != expected
            ):
                nb_ok = False
    checks.append(nb_ok)

    sphere = lambda x: -np.sum(np.square(x), axis=-1)
    X8 = lhs_sample(300, Bounds.cube(-5, 5, 8), Rng(2))
    fv = ela_conv(Dataset(X8, sphere(X8)), sphere, 1000, Rng(3))
    checks.append(fv["f1"] >= 0.99)

    report(3, all(checks), f"subchecks={checks}")


# --- criterion 4: Mann-Whitney exactness --------------------------------------


def test_criterion_4_mann_whitney_exact():
    simple = mann_whitney_u([1, 2, 3], [4, 5, 6])
    ok = simple.p_value == pytest.approx(0.1) and simple.method == "exact"

    for n_a in range(1, 8):
        for n_b in range(1, 8):
            n = n_a + n_b
            ranks = np.arange(1, n + 1, dtype=float)
            # oracle: full enumeration of the tie-free U distribution
            u_values = [
                sum(subset) - n_a * (n_a + 1) / 2
                for subset in itertools.combinations(ranks, n_a)
            ]
            u_values = np.array(u_values)
            total = len(u_values)
            for subset in itertools.combinations(range(n), n_a):
                mask = np.zeros(n, dtype=bool)
                mask[list(subset)] = True
                a, b = list(ranks[mask]), list(ranks[~mask])
                res = mann_whitney_u(a, b)
                u_lo = min(res.u_statistic, n_a * n_b - res.u_statistic)
                u_hi = n_a * n_b - u_lo
                oracle = min(
                    1.0,
                    (np.sum(u_values <= u_lo) + np.sum(u_values >= u_hi))
                    / total,
                )
                if res.method != "exact" or abs(res.p_value - oracle) > 1e-12:
                    ok = False
    report(4, ok)


# --- criteria 5, 6, 8: scaled reproduction -----------------------------------

FEATURES = ["conv", "distr", "level", "meta", "nbc"]


def milestone_config(sampler):
    return ExperimentConfig(
        domain="sphere",
        behaviour="subset",
        dim=8,
        archive_size=1000,
        sampler=sampler,
        budget=10**5,
        batch=100,
        runs=10,
        base_seed=20240815,
        checkpoints=[10**4, 10**5],
        features=FEATURES,
    )


@pytest.fixture(scope="module")
def milestone_runs(tmp_path_factory):
    root = tmp_path_factory.mktemp("milestone")
    iso_a = root / "iso_a"
    iso_b = root / "iso_b"
    lhs_dir = root / "lhs"
    run_experiment(milestone_config("qd-isolinedd"), iso_a)
    run_experiment(milestone_config("qd-isolinedd"), iso_b)
    lhs_cfg = milestone_config("lhs")
    run_experiment(lhs_cfg, lhs_dir)
    return {
        "iso": read_records_csv(iso_a / "records.csv"),
        "iso_bytes_a": (iso_a / "records.csv").read_bytes(),
        "iso_bytes_b": (iso_b / "records.csv").read_bytes(),
        "lhs": read_records_csv(lhs_dir / "records.csv"),
    }


def test_criterion_5_operator_effect(milestone_runs):
    res = compare(
        milestone_runs["iso"], milestone_runs["lhs"], "f5", 10**5, 1000
    )
    report(5, res.p_value < 0.01, f"f5 IsoLineDD-vs-LHS p={res.p_value:.3g}")


def test_criterion_6_milestone_effect(milestone_runs):
    iso = milestone_runs["iso"]
    codes = sorted({r.code for r in iso}, key=lambda c: int(c[1:]))
    significant = []
    for code in codes:
        early = [
            r.value for r in iso if r.code == code and r.eval_count == 10**4 and r.status == "ok"
        ]
        late = [
            r.value for r in iso if r.code == code and r.eval_count == 10**5 and r.status == "ok"
        ]
        if len(early) < 2 or len(late) < 2:
            continue
        if mann_whitney_u(early, late).p_value < 0.05:
            significant.append(code)
    report(6, len(significant) >= 5, f"significant features: {significant}")


def test_criterion_7_insufficient_samples():
    cfg = ExperimentConfig(
        domain="sphere",
        behaviour="subset",
        dim=8,
        archive_size=100,
        sampler="qd-isolinedd",
        budget=500,
        batch=100,
        runs=2,
        base_seed=3,
        checkpoints=[500],
        features=["distr", "level"],
    )
    records = run_experiment(cfg)
    level_codes = {f"f{i}" for i in range(8, 17)}
    level = [r for r in records if r.code in level_codes]
    completed = len(records) == 2 * 1 * 12
    starved = all(r.status == "insufficient-samples" for r in level)
    report(7, completed and starved, f"rows={len(records)}")


def test_criterion_8_determinism(milestone_runs):
    ok = milestone_runs["iso_bytes_a"] == milestone_runs["iso_bytes_b"]
    report(8, ok)
