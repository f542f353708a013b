"""qdela: quality-diversity optimisation with landscape-feature tracking.

Runs CVT-MAP-Elites and Latin-hypercube baselines on benchmark
problems, extracts landscape features (f1-f37) from the elite archive
at evaluation checkpoints, and compares feature trajectories with
rank tests.
"""

from .rng import Rng, derive_rng
from .types import Bounds, Dataset, Sample
from .sampling import lhs_sample, uniform_sample
from .problems import Problem, make_problem
from .archive import (
    Archive,
    OperatorConfig,
    archive_insert,
    archive_to_dataset,
    compute_centroids,
    gaussian_variation,
    isolinedd_variation,
    nearest_centroid,
    run_map_elites,
)
from .features import ALL_CODES, ElaBudget, FeatureVector, extract_all
from .stats import TestResult, mann_whitney_u, median_iqr
from .harness import ExperimentConfig, RunRecord, aggregate, compare, run_experiment

__version__ = "0.1.0"

__all__ = [
    "Rng",
    "derive_rng",
    "Bounds",
    "Dataset",
    "Sample",
    "lhs_sample",
    "uniform_sample",
    "Problem",
    "make_problem",
    "Archive",
    "OperatorConfig",
    "archive_insert",
    "archive_to_dataset",
    "compute_centroids",
    "gaussian_variation",
    "isolinedd_variation",
    "nearest_centroid",
    "run_map_elites",
    "ALL_CODES",
    "ElaBudget",
    "FeatureVector",
    "extract_all",
    "TestResult",
    "mann_whitney_u",
    "median_iqr",
    "ExperimentConfig",
    "RunRecord",
    "aggregate",
    "compare",
    "run_experiment",
]
