import xml.dom.minidom

import numpy as np
import pytest

from qdela import Dataset, Rng, lhs_sample, make_problem
from qdela.cli import main
from qdela.harness import write_dataset_csv

MINIMAL_CONFIG = """\
domain: sphere
behaviour: subset
dim: 2
archive_size: 100
sampler: lhs
budget: 1000
batch: 100
runs: 3
base_seed: 11
features: [distr, meta]
"""


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "cfg.yaml"
    path.write_text(MINIMAL_CONFIG)
    return path


@pytest.fixture
def records_file(tmp_path, config_file):
    out = tmp_path / "out"
    assert main(["run", "--config", str(config_file), "--out", str(out)]) == 0
    return out / "records.csv"


def test_run_writes_records_and_resolved_config(tmp_path, config_file):
    out = tmp_path / "out"
    assert main(["run", "--config", str(config_file), "--out", str(out)]) == 0
    assert (out / "records.csv").exists()
    resolved = (out / "config.resolved.yaml").read_text()
    assert "conv_pairs: 1000" in resolved  # defaults materialised
    assert "base_seed: 11" in resolved


def test_run_unknown_key_exits_2(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text(MINIMAL_CONFIG + "frobnicate: 3\n")
    assert main(["run", "--config", str(path), "--out", str(tmp_path / "o")]) == 2


def test_run_missing_config_exits_3(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.yaml"), "--out", str(tmp_path)]) == 3


def test_run_deterministic_bytes(tmp_path, config_file):
    for name in ("a", "b"):
        assert main(["run", "--config", str(config_file), "--out", str(tmp_path / name)]) == 0
    assert (tmp_path / "a/records.csv").read_bytes() == (tmp_path / "b/records.csv").read_bytes()


@pytest.fixture
def dataset_file(tmp_path):
    problem = make_problem("sphere", "subset", 2, Rng(0))
    X = lhs_sample(150, problem.bounds, Rng(1))
    path = tmp_path / "ds.csv"
    write_dataset_csv(path, Dataset(X, problem.objective(X), problem.behaviour(X)))
    return path


def test_features_distr_lines(dataset_file, capsys):
    assert main(["features", "--dataset", str(dataset_file), "--groups", "distr"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert all(line.count(",") == 2 for line in lines)


def test_features_conv_requires_domain(dataset_file):
    assert main(["features", "--dataset", str(dataset_file), "--groups", "conv"]) == 2


def test_features_meta_on_linear_data(tmp_path, capsys):
    X = lhs_sample(100, make_problem("sphere", "subset", 2, Rng(0)).bounds, Rng(2))
    y = 4 * X[:, 0] - 2 * X[:, 1] + 3
    path = tmp_path / "lin.csv"
    write_dataset_csv(path, Dataset(X, y))
    assert main(["features", "--dataset", str(path), "--groups", "meta"]) == 0
    out = capsys.readouterr().out
    f24 = [line for line in out.splitlines() if line.startswith("f24,")][0]
    assert float(f24.split(",")[1]) == pytest.approx(1, abs=1e-9)


def test_compare_self_p_one(records_file, capsys):
    assert main([
        "compare", "--a", str(records_file), "--b", str(records_file),
        "--feature", "f5", "--at", "100",
    ]) == 0
    fields = capsys.readouterr().out.strip().split(",")
    assert fields[0] == "f5"
    assert float(fields[2]) == pytest.approx(1.0)


def test_compare_disjoint_records(tmp_path, capsys):
    from qdela.harness import RunRecord, write_records_csv

    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    write_records_csv(a, [RunRecord(r, 100, "f5", float(r), "ok") for r in range(3)])
    write_records_csv(b, [RunRecord(r, 100, "f5", float(r) + 9, "ok") for r in range(3)])
    assert main(["compare", "--a", str(a), "--b", str(b), "--feature", "f5", "--at", "100"]) == 0
    fields = capsys.readouterr().out.strip().split(",")
    assert float(fields[2]) == pytest.approx(0.1)


def test_compare_unknown_feature(records_file):
    assert main([
        "compare", "--a", str(records_file), "--b", str(records_file),
        "--feature", "f99", "--at", "100",
    ]) == 2


def test_plot_svg_and_data(tmp_path, records_file):
    out = tmp_path / "plot.svg"
    assert main([
        "plot", "--in", str(records_file), "--feature", "f5",
        "--out", str(out), "--marker", "100",
    ]) == 0
    doc = xml.dom.minidom.parse(str(out))  # well-formed XML
    svg_text = out.read_text()
    assert "stroke-dasharray" in svg_text  # the checkpoint marker line
    assert "<circle" in svg_text

    data = (tmp_path / "plot.csv").read_text().splitlines()
    from qdela.harness import aggregate_csv_lines, read_records_csv

    expected = aggregate_csv_lines(read_records_csv(records_file), "f5")
    assert data[1:] == expected  # first line is the series label comment


def test_plot_missing_feature_values(tmp_path, records_file):
    assert main([
        "plot", "--in", str(records_file), "--feature", "f17",
        "--out", str(tmp_path / "p.svg"),
    ]) == 2
