"""End-to-end harness demo: run two small experiments, test, and plot.

A QD (IsoLineDD) experiment and an LHS baseline are run on the sphere;
the skewness feature f5 is compared between them with a Mann-Whitney U
test, and its trajectory is written to an SVG plot next to this script.

Run with:  python3 demos/03_experiment_compare_plot.py
"""

from pathlib import Path

from qdela import ExperimentConfig, aggregate, compare, run_experiment
from qdela.svgplot import Series, render_feature_plot


def config(sampler):
    return ExperimentConfig(
        domain="sphere",
        behaviour="subset",
        dim=2,
        archive_size=100,
        sampler=sampler,
        budget=5000,
        batch=100,
        runs=8,
        base_seed=2024,
        checkpoints=[500, 1000, 2000, 5000],
        features=["distr", "meta"],
    )


qd_records = run_experiment(config("qd-isolinedd"))
lhs_records = run_experiment(config("lhs"))

# LHS records sit at eval_count = sample size (one batch, no loop)
result = compare(qd_records, lhs_records, "f5", 5000, 100)
print(
    f"f5, IsoLineDD@5000 vs LHS@100: U={result.u_statistic:.1f} "
    f"p={result.p_value:.4f} ({result.method}, n={result.n_a}+{result.n_b})"
)

series = [
    Series("isolinedd", aggregate(qd_records, "f5")),
    Series("lhs", aggregate(lhs_records, "f5")),
]
out = Path(__file__).with_name("f5_trajectory.svg")
out.write_text(render_feature_plot(series, "f5", marker=1000))
print(f"wrote {out}")
