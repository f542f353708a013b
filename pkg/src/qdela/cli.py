"""Command-line entry point.

Subcommands:

    run       execute an experiment config, writing records.csv
    features  extract feature groups from a dataset CSV
    compare   Mann-Whitney test between two records files
    plot      SVG trajectory chart plus the plotted numbers as CSV

Machine-readable output goes to stdout; summaries to stderr.  Exit
codes: 0 ok, 2 usage/config error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, dump_config, load_config
from .features import ALL_CODES, ElaBudget, GROUPS, extract_all
from .harness import (
    aggregate_csv_lines,
    compare,
    read_dataset_csv,
    read_records_csv,
    run_experiment,
)
from .problems import make_problem
from .rng import Rng
from .stats import median_iqr
from .svgplot import Series, render_feature_plot

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

OBJECTIVE_GROUPS = ("conv", "local")


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
    except FileNotFoundError:
        return _fail(EXIT_IO, f"config file not found: {args.config}")
    except ConfigError as err:
        return _fail(EXIT_USAGE, str(err))
    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "config.resolved.yaml").write_text(dump_config(cfg), encoding="utf-8")
        records = run_experiment(cfg, out)
    except OSError as err:
        return _fail(EXIT_IO, str(err))
    print(f"wrote {len(records)} records to {out / 'records.csv'}", file=sys.stderr)
    return EXIT_OK


def cmd_features(args) -> int:
    groups = [g.strip() for g in args.groups.split(",") if g.strip()]
    unknown = [g for g in groups if g not in GROUPS]
    if unknown:
        return _fail(EXIT_USAGE, f"unknown feature groups: {', '.join(unknown)}")
    needs_problem = any(g in OBJECTIVE_GROUPS for g in groups)
    if needs_problem and (args.domain is None or args.dim is None):
        return _fail(
            EXIT_USAGE, "groups conv/local require --domain and --dim for the objective"
        )
    try:
        dataset = read_dataset_csv(args.dataset)
    except FileNotFoundError:
        return _fail(EXIT_IO, f"dataset file not found: {args.dataset}")
    except ValueError as err:
        return _fail(EXIT_USAGE, str(err))

    problem = None
    if args.domain is not None and args.dim is not None:
        behaviour = "arm" if args.domain == "arm" else "subset"
        try:
            problem = make_problem(args.domain, behaviour, args.dim, Rng(args.seed))
        except ValueError as err:
            return _fail(EXIT_USAGE, str(err))
        if problem.dim != dataset.dim:
            return _fail(EXIT_USAGE, "--dim does not match the dataset dimension")

    fv = extract_all(dataset, problem, ElaBudget(), groups, Rng(args.seed))
    for code in sorted(fv.values, key=lambda c: int(c[1:])):
        value = fv.values[code]
        status = fv.status[code]
        print(f"{code},{'' if value is None else format(value, '.17g')},{status}")
    print(f"evals_used={fv.evals_used}", file=sys.stderr)
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.feature not in ALL_CODES:
        return _fail(EXIT_USAGE, f"unknown feature code {args.feature!r}")
    try:
        rec_a = read_records_csv(args.a)
        rec_b = read_records_csv(args.b)
    except FileNotFoundError as err:
        return _fail(EXIT_IO, str(err))
    except ValueError as err:
        return _fail(EXIT_USAGE, str(err))
    at_b = args.at_b if args.at_b is not None else args.at
    try:
        result = compare(rec_a, rec_b, args.feature, args.at, at_b)
    except ValueError as err:
        return _fail(EXIT_USAGE, str(err))

    def med(records, at):
        vals = [
            r.value
            for r in records
            if r.code == args.feature and r.eval_count == at and r.status == "ok"
        ]
        return median_iqr(vals)[0]

    print(
        f"{args.feature},{result.u_statistic:.17g},{result.p_value:.17g},"
        f"{result.n_a},{result.n_b},"
        f"{med(rec_a, args.at):.17g},{med(rec_b, at_b):.17g}"
    )
    return EXIT_OK


def cmd_plot(args) -> int:
    if args.feature not in ALL_CODES:
        return _fail(EXIT_USAGE, f"unknown feature code {args.feature!r}")
    series = []
    csv_blocks = []
    for path in args.inputs:
        try:
            records = read_records_csv(path)
        except FileNotFoundError as err:
            return _fail(EXIT_IO, str(err))
        except ValueError as err:
            return _fail(EXIT_USAGE, str(err))
        label = Path(path).stem
        try:
            lines = aggregate_csv_lines(records, args.feature)
        except ValueError as err:
            return _fail(EXIT_USAGE, str(err))
        rows = []
        for line in lines[1:]:
            ev, med, q1, q3 = line.split(",")
            rows.append(
                (
                    int(ev),
                    float(med) if med else None,
                    float(q1) if q1 else None,
                    float(q3) if q3 else None,
                )
            )
        series.append(Series(label, rows))
        csv_blocks.append((label, lines))

    try:
        svg = render_feature_plot(series, args.feature, args.marker)
    except ValueError as err:
        return _fail(EXIT_USAGE, str(err))
    out = Path(args.out)
    try:
        out.write_text(svg, encoding="utf-8")
        data_path = out.with_suffix(".csv")
        with open(data_path, "w", encoding="utf-8") as fh:
            for label, lines in csv_blocks:
                fh.write(f"# series: {label}\n")
                fh.write("\n".join(lines) + "\n")
    except OSError as err:
        return _fail(EXIT_IO, str(err))
    print(f"wrote {out} and {data_path}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdela", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute an experiment config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", required=True)
    p_run.set_defaults(func=cmd_run)

    p_feat = sub.add_parser("features", help="extract features from a dataset CSV")
    p_feat.add_argument("--dataset", required=True)
    p_feat.add_argument("--groups", required=True, help="comma-separated group names")
    p_feat.add_argument("--seed", type=int, default=0)
    p_feat.add_argument("--domain", choices=("sphere", "rastrigin", "arm"))
    p_feat.add_argument("--dim", type=int)
    p_feat.set_defaults(func=cmd_features)

    p_cmp = sub.add_parser("compare", help="Mann-Whitney test between records files")
    p_cmp.add_argument("--a", required=True)
    p_cmp.add_argument("--b", required=True)
    p_cmp.add_argument("--feature", required=True)
    p_cmp.add_argument("--at", type=int, required=True)
    p_cmp.add_argument("--at-b", type=int, default=None, dest="at_b",
                       help="checkpoint for side b (defaults to --at)")
    p_cmp.set_defaults(func=cmd_compare)

    p_plot = sub.add_parser("plot", help="emit an SVG trajectory chart")
    p_plot.add_argument("--in", dest="inputs", nargs="+", required=True)
    p_plot.add_argument("--feature", required=True)
    p_plot.add_argument("--out", required=True)
    p_plot.add_argument("--marker", type=int, default=None)
    p_plot.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
