"""Command-line interface.

Subcommands: eval, robustness, separability, consistency, bench, synth.
Usage errors exit with code 2, data/parse errors with code 3; every
error is a single machine-parsable line on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .bench import IMPL_NAMES, run_timing_sweep
from .errors import DataError, ResourceError, UsageError
from .measures import MEASURE_NAMES, evaluate_all
from .perturb import (
    PerturbationSpec,
    perturbed_population,
    rank_entropy,
    robustness_study,
    separability_ztest,
)
from .range_auc import default_buffer_length
from .series import ScoredSeries, normalize_score
from .synth import SynthSpec, generate

PROG = "vusmetrics"


def _parse_measures(text: str | None):
    if text is None or text == "all":
        return None
    names = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [m for m in names if m not in MEASURE_NAMES]
    if unknown:
        raise UsageError(f"unknown measures: {', '.join(unknown)}")
    return names


def _parse_buffer(text: str):
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"--buffer must be an integer or 'auto', got {text!r}") from None
    if value < 0:
        raise UsageError("--buffer must be non-negative")
    return value


def _load_scored(series_path: str, score_path: str):
    record = io.load_series(series_path)
    score = io.align_score(io.load_score(score_path), record.length, Path(score_path).name)
    return record, score


def _score_dir(path: str) -> dict[str, np.ndarray]:
    d = Path(path)
    if not d.is_dir():
        raise DataError(f"{d}: not a directory")
    files = sorted(p for p in d.iterdir() if p.is_file())
    if not files:
        raise DataError(f"{d}: no score files")
    return {p.stem: io.load_score(p) for p in files}


def cmd_eval(args) -> int:
    record, score = _load_scored(args.series, args.score)
    result = evaluate_all(
        score,
        record.labels,
        measures=_parse_measures(args.measures),
        n_thresholds=args.thresholds,
        buffer=_parse_buffer(args.buffer),
        impl=args.impl.replace("-", "_"),
        aggregation=args.aggregation,
        values=record.values,
    )
    payload = {"series_id": record.series_id, **result}
    io.emit(payload, args.out)
    return 0


def cmd_robustness(args) -> int:
    record = io.load_series(args.series)
    scores = {
        name: io.align_score(raw, record.length, name)
        for name, raw in _score_dir(args.scores).items()
    }
    series = ScoredSeries(record.values, record.labels)
    buffer = default_buffer_length(record.labels, record.values)
    specs = []
    if args.kind in ("lag", "all"):
        specs.append(PerturbationSpec.lag_default(buffer, seed=args.seed))
    if args.kind in ("noise", "all"):
        specs.append(PerturbationSpec.noise_default(seed=args.seed))
    if args.kind in ("ratio", "all"):
        specs.append(PerturbationSpec.ratio_default(seed=args.seed))
    reports = robustness_study(
        series,
        scores,
        measures=_parse_measures(args.measures),
        specs=specs,
        n_thresholds=args.thresholds,
        buffer=buffer,
    )
    payload = {
        "series_id": record.series_id,
        "buffer": buffer,
        "reports": [r.to_dict() for r in reports],
    }
    io.emit(payload, args.out)
    return 0


def cmd_separability(args) -> int:
    record = io.load_series(args.series)
    series = ScoredSeries(record.values, record.labels)
    accurate = _score_dir(args.accurate)
    inaccurate = _score_dir(args.inaccurate)
    measures = _parse_measures(args.measures) or list(MEASURE_NAMES)
    buffer = default_buffer_length(record.labels, record.values)
    pairs = {}
    z_sums = {name: 0.0 for name in measures}
    for a_name, a_score in accurate.items():
        a_pop = perturbed_population(
            series,
            io.align_score(a_score, record.length, a_name),
            measures,
            reps=args.reps,
            seed=args.seed,
            buffer_length=buffer,
            n_thresholds=args.thresholds,
            buffer=buffer,
        )
        for i_name, i_score in inaccurate.items():
            i_pop = perturbed_population(
                series,
                io.align_score(i_score, record.length, i_name),
                measures,
                reps=args.reps,
                seed=args.seed + 1,
                buffer_length=buffer,
                n_thresholds=args.thresholds,
                buffer=buffer,
            )
            key = f"{a_name}|{i_name}"
            pairs[key] = {
                name: separability_ztest(a_pop[name], i_pop[name]) for name in measures
            }
            for name in measures:
                z_sums[name] += pairs[key][name]
    n_pairs = max(1, len(pairs))
    payload = {
        "series_id": record.series_id,
        "reps": args.reps,
        "pairs": pairs,
        "mean_z": {name: z_sums[name] / n_pairs for name in measures},
    }
    io.emit(payload, args.out)
    return 0


def cmd_consistency(args) -> int:
    dataset_dir = Path(args.dataset)
    scores_dir = Path(args.scores)
    if not dataset_dir.is_dir():
        raise DataError(f"{dataset_dir}: not a directory")
    if not scores_dir.is_dir():
        raise DataError(f"{scores_dir}: not a directory")
    series_files = sorted(p for p in dataset_dir.iterdir() if p.is_file())
    if not series_files:
        raise DataError(f"{dataset_dir}: no series files")
    methods = sorted(p.name for p in scores_dir.iterdir() if p.is_dir())
    if not methods:
        raise DataError(f"{scores_dir}: no method subdirectories")
    measures = _parse_measures(args.measures) or list(MEASURE_NAMES)
    # ranks[measure][method] = list of ranks across the dataset's series
    ranks = {name: {m: [] for m in methods} for name in measures}
    for series_file in series_files:
        record = io.load_series(series_file)
        per_method = {}
        for method in methods:
            score_file = scores_dir / method / series_file.name
            if not score_file.exists():
                raise DataError(f"{score_file}: missing score for {series_file.name}")
            score = io.align_score(io.load_score(score_file), record.length, method)
            result = evaluate_all(
                score,
                record.labels,
                measures=measures,
                n_thresholds=args.thresholds,
                values=record.values,
            )
            per_method[method] = result["measures"]
        for name in measures:
            # Higher measure value is better; ties break by method name so
            # ranks stay integral and reproducible.
            ordered = sorted(methods, key=lambda m: (-per_method[m][name], m))
            for rank, method in enumerate(ordered, start=1):
                ranks[name][method].append(rank)
    payload = {
        "methods": methods,
        "series_count": len(series_files),
        "rank_entropy": {
            name: {m: rank_entropy(r) for m, r in per.items()}
            for name, per in ranks.items()
        },
    }
    io.emit(payload, args.out)
    return 0


def cmd_bench(args) -> int:
    impls = [t.strip().replace("-", "_") for t in args.impls.split(",") if t.strip()]
    for impl in impls:
        if impl not in IMPL_NAMES:
            raise UsageError(f"unknown impl {impl!r}; choose from {', '.join(IMPL_NAMES)}")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    raw = np.linspace(args.min, args.max, args.steps)
    if args.param == "std_len":
        values = [float(v) for v in raw]
    else:
        values = sorted({int(round(v)) for v in raw})
    result = run_timing_sweep(args.param, values, impls=impls, reps=args.reps, seed=args.seed)
    io.emit(result.to_dict(), args.out)
    return 0


def cmd_synth(args) -> int:
    spec = SynthSpec(
        alpha=args.alpha,
        mean_len=args.mean_len,
        std_len=args.std_len,
        n=args.length,
        seed=args.seed,
    )
    series = generate(spec)
    io.write_series(args.out, series.score, series.labels)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Accuracy measures for time-series anomaly detection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="compute measures for one series and score")
    p.add_argument("--series", required=True)
    p.add_argument("--score", required=True)
    p.add_argument("--measures", default="all", help="comma list or 'all'")
    p.add_argument("--buffer", default="auto", help="integer buffer length or 'auto'")
    p.add_argument("--thresholds", type=int, default=250)
    p.add_argument("--impl", choices=["naive", "opt", "opt-mem"], default="opt-mem")
    p.add_argument("--aggregation", choices=["mean", "trapezoid"], default="mean")
    p.add_argument("--out", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("robustness", help="std of measures under perturbation sweeps")
    p.add_argument("--series", required=True)
    p.add_argument("--scores", required=True, help="directory of per-method score files")
    p.add_argument("--kind", choices=["lag", "noise", "ratio", "all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--measures", default="all")
    p.add_argument("--thresholds", type=int, default=250)
    p.add_argument("--out", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_robustness)

    p = sub.add_parser("separability", help="z-test between accurate and inaccurate scores")
    p.add_argument("--series", required=True)
    p.add_argument("--accurate", required=True, help="directory of accurate score files")
    p.add_argument("--inaccurate", required=True, help="directory of inaccurate score files")
    p.add_argument("--reps", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--measures", default="all")
    p.add_argument("--thresholds", type=int, default=250)
    p.add_argument("--out", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_separability)

    p = sub.add_parser("consistency", help="rank entropy of methods across a dataset")
    p.add_argument("--dataset", required=True, help="directory of series files")
    p.add_argument("--scores", required=True, help="directory of <method>/<series> score files")
    p.add_argument("--measures", default="all")
    p.add_argument("--thresholds", type=int, default=250)
    p.add_argument("--out", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("bench", help="execution-time sweep with regression slopes")
    p.add_argument("--param", required=True, choices=["alpha", "mean_len", "std_len", "n", "L", "N"])
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--impls", default="naive,opt,opt_mem,r_auc,auc")
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("synth", help="write a synthetic series file")
    p.add_argument("--alpha", type=int, default=10)
    p.add_argument("--mean-len", type=float, default=10.0)
    p.add_argument("--std-len", type=float, default=0.0)
    p.add_argument("--length", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{PROG}: usage error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"{PROG}: data error: {exc}", file=sys.stderr)
        return 3
    except ResourceError as exc:
        print(f"{PROG}: resource error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"{PROG}: data error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
