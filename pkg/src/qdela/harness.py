"""Experiment orchestration: replicated runs, checkpointed feature records,
and tabular persistence.

A records table holds one row per (run, checkpoint, feature code).  It
is written incrementally to per-run staging files and merged, sorted,
into a single records CSV when every run has finished, so a crashed
experiment leaves complete rows behind.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .archive import OperatorConfig, archive_to_dataset, compute_centroids, run_map_elites
from .features import ALL_CODES, ElaBudget, GROUPS, extract_all
from .problems import make_problem
from .rng import Rng
from .sampling import lhs_sample
from .stats import TestResult, mann_whitney_u, median_iqr
from .types import Dataset

__all__ = [
    "ExperimentConfig",
    "RunRecord",
    "run_experiment",
    "aggregate",
    "compare",
    "default_checkpoints",
    "records_to_csv",
    "write_records_csv",
    "read_records_csv",
    "write_dataset_csv",
    "read_dataset_csv",
    "aggregate_csv_lines",
]

SAMPLERS = ("lhs", "qd-gaussian", "qd-isolinedd")
DIMS = (2, 4, 8, 16, 32)
ARCHIVE_SIZES = (100, 1000, 10000)

RECORDS_HEADER = "run_id,eval_count,feature_code,value,status"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunRecord:
    run_id: int
    eval_count: int
    code: str
    value: float | None
    status: str


def default_checkpoints(batch: int, budget: int, archive_size: int) -> list[int]:
    """1-2-5 log ladder from batch to budget, plus the archive size and budget."""
    points = set()
    decade = 1
    while decade <= budget:
        for mult in (1, 2, 5):
            v = mult * decade
            if batch <= v <= budget and v % batch == 0:
                points.add(v)
        decade *= 10
    points.add(budget)
    if batch <= archive_size <= budget and archive_size % batch == 0:
        points.add(archive_size)
    return sorted(points)


@dataclass
class ExperimentConfig:
    domain: str = "sphere"
    behaviour: str = "subset"
    dim: int = 2
    archive_size: int = 100
    sampler: str = "qd-isolinedd"
    budget: int = 10**6
    batch: int = 100
    runs: int = 30
    base_seed: int = 0
    checkpoints: list[int] | None = None
    operator: OperatorConfig = field(default_factory=OperatorConfig)
    ela: ElaBudget = field(default_factory=ElaBudget)
    features: list[str] = field(default_factory=lambda: list(GROUPS))

    def __post_init__(self):
        if self.sampler not in SAMPLERS:
            raise ConfigError(f"unknown sampler {self.sampler!r}")
        if self.dim not in DIMS:
            raise ConfigError(f"dim must be one of {DIMS}")
        if self.archive_size not in ARCHIVE_SIZES:
            raise ConfigError(f"archive_size must be one of {ARCHIVE_SIZES}")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.budget % self.batch != 0:
            raise ConfigError("budget must be a multiple of batch")
        unknown = [g for g in self.features if g not in GROUPS]
        if unknown:
            raise ConfigError(f"unknown feature groups: {unknown}")
        if self.checkpoints is None:
            self.checkpoints = default_checkpoints(
                self.batch, self.budget, self.archive_size
            )
        else:
            self.checkpoints = sorted(set(int(c) for c in self.checkpoints))
            bad = [
                c
                for c in self.checkpoints
                if c % self.batch != 0 or not (self.batch <= c <= self.budget)
            ]
            if bad:
                raise ConfigError(
                    f"checkpoints must be batch multiples in [batch, budget]: {bad}"
                )
        kind = {"qd-gaussian": "gaussian", "qd-isolinedd": "isolinedd"}.get(self.sampler)
        if kind is not None and self.operator.kind != kind:
            self.operator = OperatorConfig(
                kind=kind,
                sigma=self.operator.sigma,
                sigma1=self.operator.sigma1,
                sigma2=self.operator.sigma2,
            )

    @property
    def selected_codes(self) -> list[str]:
        from .features import GROUP_CODES

        codes = []
        for g in self.features:
            codes.extend(GROUP_CODES[g])
        return sorted(codes, key=lambda c: int(c[1:]))


def _format_value(v: float) -> str:
    return format(v, ".17g")


def _record_line(rec: RunRecord) -> str:
    value = _format_value(rec.value) if rec.status == "ok" and rec.value is not None else ""
    return f"{rec.run_id},{rec.eval_count},{rec.code},{value},{rec.status}"


def _dataset_records(
    run_id: int, eval_count: int, D: Dataset, cfg: ExperimentConfig, problem, rng: Rng
) -> list[RunRecord]:
    fv = extract_all(D, problem, cfg.ela, cfg.features, rng)
    records = []
    for code in cfg.selected_codes:
        status = fv.status.get(code, "ok")
        value = fv.values.get(code)
        if value is not None and not np.isfinite(value):
            value, status = None, "degenerate-data"
        records.append(RunRecord(run_id, eval_count, code, value, status))
    return records


def _single_run(cfg: ExperimentConfig, run_id: int, sink=None) -> list[RunRecord]:
    """One replicate; `sink`, when given, receives each checkpoint's rows
    as soon as they exist (crash-safe incremental persistence)."""
    base = Rng(cfg.base_seed)
    problem = make_problem(cfg.domain, cfg.behaviour, cfg.dim, base.derive("problem"))
    run_rng = base.derive(f"run{run_id}")
    ela_rng = run_rng.derive("ela")

    records: list[RunRecord] = []

    def emit(batch: list[RunRecord]):
        records.extend(batch)
        if sink is not None:
            sink(batch)

    if cfg.sampler == "lhs":
        X = lhs_sample(cfg.archive_size, problem.bounds, run_rng.derive("lhs"))
        D = Dataset(X, problem.objective(X), problem.behaviour(X))
        emit(
            _dataset_records(
                run_id, cfg.archive_size, D, cfg, problem, ela_rng.derive("ck")
            )
        )
        return records

    centroids = compute_centroids(cfg.archive_size, base.derive("centroids"))
    snapshots = run_map_elites(
        problem,
        centroids,
        cfg.operator,
        cfg.budget,
        cfg.batch,
        cfg.checkpoints,
        run_rng.derive("qd"),
    )
    for eval_count, archive in snapshots:
        D = archive_to_dataset(archive)
        emit(
            _dataset_records(
                run_id, eval_count, D, cfg, problem, ela_rng.derive(f"ck{eval_count}")
            )
        )
    return records


def _single_run_staged(cfg: ExperimentConfig, run_id: int, staging: str) -> str:
    with open(staging, "w", encoding="utf-8") as fh:
        fh.write(RECORDS_HEADER + "\n")

        def sink(batch):
            for rec in batch:
                fh.write(_record_line(rec) + "\n")
            fh.flush()

        _single_run(cfg, run_id, sink)
    return staging


def _worker_count() -> int:
    env = os.environ.get("QDELA_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_experiment(cfg: ExperimentConfig, out_dir: str | Path | None = None) -> list[RunRecord]:
    """Execute every replicate of the configuration; returns sorted records.

    When out_dir is given, each run appends to its own staging file and
    the merged table lands in out_dir/records.csv.
    """
    staging_dir = None
    if out_dir is not None:
        staging_dir = Path(out_dir)
        staging_dir.mkdir(parents=True, exist_ok=True)

    records: list[RunRecord] = []
    workers = min(_worker_count(), cfg.runs)
    if workers > 1 and staging_dir is not None:
        paths = [str(staging_dir / f"staging_run{r}.csv") for r in range(cfg.runs)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_single_run_staged, cfg, r, paths[r])
                for r in range(cfg.runs)
            ]
            for fut in futures:
                fut.result()
        for p in paths:
            records.extend(read_records_csv(p))
            os.remove(p)
    else:
        for r in range(cfg.runs):
            if staging_dir is not None:
                staging = str(staging_dir / f"staging_run{r}.csv")
                _single_run_staged(cfg, r, staging)
                records.extend(read_records_csv(staging))
            else:
                records.extend(_single_run(cfg, r))

    records.sort(key=lambda r: (r.run_id, r.eval_count, int(r.code[1:])))
    if staging_dir is not None:
        write_records_csv(staging_dir / "records.csv", records)
        for r in range(cfg.runs):
            staging = staging_dir / f"staging_run{r}.csv"
            if staging.exists():
                staging.unlink()
    return records


def records_to_csv(records: list[RunRecord]) -> str:
    lines = [RECORDS_HEADER]
    lines.extend(_record_line(r) for r in records)
    return "\n".join(lines) + "\n"


def write_records_csv(path: str | Path, records: list[RunRecord]):
    Path(path).write_text(records_to_csv(records), encoding="utf-8")


def read_records_csv(path: str | Path) -> list[RunRecord]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != RECORDS_HEADER:
        raise ValueError(f"{path}: not a records CSV")
    records = []
    for line in lines[1:]:
        run_id, eval_count, code, value, status = line.split(",")
        records.append(
            RunRecord(
                int(run_id),
                int(eval_count),
                code,
                float(value) if value else None,
                status,
            )
        )
    return records


def write_dataset_csv(path: str | Path, D: Dataset):
    """Persist a dataset with 17-significant-digit decimals."""
    cols = [f"x{j}" for j in range(D.dim)] + ["fitness"]
    if D.behaviours is not None:
        cols += ["b0", "b1"]
    lines = [",".join(cols)]
    for i in range(D.m):
        row = [_format_value(v) for v in D.X[i]] + [_format_value(D.y[i])]
        if D.behaviours is not None:
            row += [_format_value(v) for v in D.behaviours[i]]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_dataset_csv(path: str | Path) -> Dataset:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty dataset file")
    header = lines[0].split(",")
    x_cols = [c for c in header if c.startswith("x")]
    if "fitness" not in header or len(x_cols) < 1:
        raise ValueError(f"{path}: malformed dataset header")
    has_behaviour = "b0" in header and "b1" in header
    rows = [list(map(float, line.split(","))) for line in lines[1:] if line]
    data = np.asarray(rows)
    d = len(x_cols)
    X = data[:, :d]
    y = data[:, header.index("fitness")]
    B = data[:, [header.index("b0"), header.index("b1")]] if has_behaviour else None
    return Dataset(X, y, B)


def aggregate(records: list[RunRecord], code: str):
    """Per-checkpoint (eval_count, median, q1, q3) rows, sorted by eval_count.

    Checkpoints where every run is undefined produce a None triple.
    """
    relevant = [r for r in records if r.code == code]
    if not relevant:
        raise ValueError(f"no records for feature {code}")
    rows = []
    for eval_count in sorted({r.eval_count for r in relevant}):
        values = [r.value for r in relevant if r.eval_count == eval_count and r.status == "ok"]
        triple = median_iqr(values)
        if triple is None:
            rows.append((eval_count, None, None, None))
        else:
            med, q1, q3 = triple
            rows.append((eval_count, med, q1, q3))
    return rows


def aggregate_csv_lines(records: list[RunRecord], code: str) -> list[str]:
    """Canonical CSV serialisation of aggregate(); shared by plot output."""
    lines = ["eval_count,median,q1,q3"]
    for eval_count, med, q1, q3 in aggregate(records, code):
        if med is None:
            lines.append(f"{eval_count},,,")
        else:
            lines.append(
                f"{eval_count},{_format_value(med)},{_format_value(q1)},{_format_value(q3)}"
            )
    return lines


def compare(
    records_a: list[RunRecord],
    records_b: list[RunRecord],
    code: str,
    at_a: int,
    at_b: int | None = None,
) -> TestResult:
    """Mann-Whitney over per-run feature values at the given checkpoints.

    at_b defaults to at_a; passing both sides from the same table with
    different checkpoints gives the within-sampler milestone test.
    """
    if at_b is None:
        at_b = at_a
    a = [
        r.value
        for r in records_a
        if r.code == code and r.eval_count == at_a and r.status == "ok"
    ]
    b = [
        r.value
        for r in records_b
        if r.code == code and r.eval_count == at_b and r.status == "ok"
    ]
    if not a or not b:
        raise ValueError(
            f"no defined values for {code} at eval counts {at_a}/{at_b}"
        )
    return mann_whitney_u(a, b)
