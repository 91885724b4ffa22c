"""Command-line pipeline: preprocess, extract, trend-group, synthesize, bench,
and export model-ready sequence datasets.

Subcommands
-----------
extract     signal CSV (+ sidecar) -> filtered windows -> featmap_v1 CSV
trends      featmap CSV -> trend report CSV (+ optional plot data)
synth       generate a synthetic fatigue recording (CSV + sidecar + labels)
bench       throughput benchmark over thread counts
export-seq  featmap + labels -> sequence dataset CSV for model training

Options may also come from a flat ``key = value`` config file (--config);
command-line flags override file values.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .errors import EmgFatigueError
from .features.bench import benchmark_engine
from .features.config import EngineConfig
from .features.engine import extract_features
from .fileio import (
    export_sequences,
    read_featmap,
    read_labels,
    read_metadata,
    read_signal_csv,
    write_bench_report,
    write_featmap,
    write_labels,
    write_metadata,
    write_signal_csv,
    write_trend_plot_data,
    write_trend_report,
)
from .signals import FilterSpec, WindowPlan, apply_filters, design_filters
from .synth import LabelPolicy, SynthSpec, generate
from .trends import GroupingMode, group_features

logger = logging.getLogger("emgfatigue")


# Built-in defaults for options that may also come from a config file. Options
# are declared with default=None so an explicit flag always wins over the file.
OPTION_DEFAULTS: dict[str, object] = {
    "band": "20:450",
    "notch": 50.0,
    "notch_bw": 2.0,
    "filter_order": 4,
    "window_s": 0.5,
    "stride_s": 0.25,
    "threads": 1,
    "grouping": "empirical",
    "seq_len": 5,
    "duration": 60.0,
    "fs": None,
    "amplitude": 1.0,
    "beta": 0.5,
    "gamma": 0.4,
    "f0": 120.0,
    "bandwidth": 60.0,
    "noise_floor": 0.05,
    "seed": 0,
    "channels": 2,
    "label_policy": "thirds",
    "thread_list": "1,2,8",
    "windows": 10_000,
    "repeats": 3,
}


def _read_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise EmgFatigueError(f"{path}: line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _merge_config(args: argparse.Namespace) -> None:
    """Resolve each option as: explicit flag > config file > built-in default."""
    file_values = (_read_config_file(args.config)
                   if getattr(args, "config", None) else {})
    for dest, default in OPTION_DEFAULTS.items():
        if not hasattr(args, dest):
            continue
        if getattr(args, dest) is not None:
            continue  # explicit flag wins
        key = dest.replace("_", "-")
        raw = file_values.get(dest, file_values.get(key))
        if raw is None:
            setattr(args, dest, default)
            continue
        if isinstance(default, bool):
            setattr(args, dest, raw.lower() in ("1", "true", "yes"))
        elif isinstance(default, int) and not isinstance(default, bool):
            setattr(args, dest, int(raw))
        elif isinstance(default, float):
            setattr(args, dest, float(raw))
        else:
            setattr(args, dest, raw)
    if getattr(args, "zero_phase", None) is False and "zero_phase" in file_values:
        args.zero_phase = file_values["zero_phase"].lower() in ("1", "true", "yes")


def _parse_band(text: str) -> tuple[float, float]:
    lo, _, hi = text.partition(":")
    return float(lo), float(hi)


def _filter_spec(args: argparse.Namespace) -> FilterSpec:
    lo, hi = _parse_band(args.band)
    return FilterSpec(band_low=lo, band_high=hi, notch_freq=args.notch,
                      notch_bandwidth=args.notch_bw, filter_order=args.filter_order)


def _window_plan(args: argparse.Namespace) -> WindowPlan:
    return WindowPlan(window_len_s=args.window_s, stride_s=args.stride_s)


def _engine_config(args: argparse.Namespace) -> EngineConfig:
    lo, hi = _parse_band(args.band)
    return EngineConfig(band_low=lo, band_high=hi, thread_count=args.threads)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--band", help="analysis band, Hz (lo:hi; default 20:450)")
    p.add_argument("--notch", type=float, help="notch frequency, Hz (default 50)")
    p.add_argument("--notch-bw", type=float, help="notch bandwidth, Hz (default 2)")
    p.add_argument("--filter-order", type=int, help="default 4")
    p.add_argument("--window-s", type=float, help="window length, s (default 0.5)")
    p.add_argument("--stride-s", type=float, help="window stride, s (default 0.25)")
    p.add_argument("--threads", type=int, help="worker threads (default 1)")


def cmd_extract(args: argparse.Namespace) -> int:
    meta = read_metadata(args.meta) if args.meta else None
    record = read_signal_csv(args.input, sampling_rate=args.fs, metadata=meta)
    spec = _filter_spec(args)
    chain = design_filters(spec, record.sampling_rate)
    filtered = apply_filters(chain, record, zero_phase=args.zero_phase)
    plan = _window_plan(args)
    cfg = _engine_config(args)
    matrix = extract_features(filtered, plan, cfg)
    if matrix.n_rows == 0:
        print("error: no windows produced (signal shorter than one window)",
              file=sys.stderr)
        return 2
    write_featmap(matrix, args.out)
    per_channel = matrix.n_rows // max(1, record.n_channels)
    flagged = int(np.count_nonzero(matrix.quality))
    print(f"windows per channel: {per_channel}")
    print(f"windows total (all channels): {matrix.n_rows}")
    print(f"rows with degenerate flags: {flagged}")
    print(f"wrote {args.out}")
    return 0


def cmd_trends(args: argparse.Namespace) -> int:
    matrix = read_featmap(args.featmap)
    rpe = None
    if args.labels:
        labels = read_labels(args.labels)
        max_idx = int(matrix.window_index.max())
        rpe = np.array([labels[i].rpe if i in labels else np.nan
                        for i in range(max_idx + 1)])
        if np.any(np.isnan(rpe)):
            print("error: labels do not cover all window indices", file=sys.stderr)
            return 2
    mode = GroupingMode.TABLE if args.grouping == "table" else GroupingMode.EMPIRICAL
    groups = group_features(matrix, rpe_values=rpe, mode=mode)
    if mode is GroupingMode.EMPIRICAL:
        write_trend_report(groups.reports, args.out)
        if args.plot_data:
            write_trend_plot_data(matrix, groups.reports, args.plot_data)
    else:
        from .features.ids import GROUPED_FEATURES
        from .trends import TrendClass, TrendReport

        fixed = [TrendReport(
            feature=f, channel="*", n=0, pearson_r=0.0, slope=0.0,
            intercept=0.0, p_value=0.0,
            trend_class=(TrendClass.INCREASING if f in groups.increasing
                         else TrendClass.DECREASING))
            for f in GROUPED_FEATURES]
        write_trend_report(fixed, args.out)
    print(f"increasing: {' '.join(groups.ordered_increasing())}")
    print(f"decreasing: {' '.join(groups.ordered_decreasing())}")
    nonsig = sorted(groups.nonsignificant)
    print(f"nonsignificant: {' '.join(nonsig) if nonsig else '(none)'}")
    print(f"wrote {args.out}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        duration_s=args.duration,
        sampling_rate=args.fs or 2000.0,
        base_amplitude=args.amplitude,
        amplitude_growth=args.beta,
        center_freq=args.f0,
        freq_compression=args.gamma,
        bandwidth=args.bandwidth,
        noise_floor=args.noise_floor,
        rng_seed=args.seed,
        n_channels=args.channels,
        label_policy=LabelPolicy(args.label_policy),
    )
    plan = _window_plan(args)
    record, labels = generate(spec, plan)
    out = Path(args.out_prefix)
    write_signal_csv(record, out.with_suffix(".csv"))
    write_metadata(out.with_suffix(".meta"), record)
    write_labels(labels, Path(str(out) + "_labels.csv"))
    print(f"wrote {out.with_suffix('.csv')} ({record.n_samples} samples x "
          f"{record.n_channels} channels), {len(labels)} window labels")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    thread_counts = [int(t) for t in str(args.thread_list).split(",")]
    plan = WindowPlan(window_len_s=args.window_s, stride_s=args.stride_s)
    fs = args.fs or 2000.0
    window_len, stride = plan.in_samples(fs)
    n_channels = 2
    per_channel = -(-args.windows // n_channels)
    n_samples = (per_channel - 1) * stride + window_len
    spec = SynthSpec(duration_s=n_samples / fs, sampling_rate=fs,
                     rng_seed=args.seed, n_channels=n_channels)
    record, _ = generate(spec, plan)
    lo, hi = _parse_band(args.band)
    cfg = EngineConfig(band_low=lo, band_high=hi)
    report = benchmark_engine(record, plan, cfg, thread_counts,
                              repeats=args.repeats, min_windows=args.windows)
    write_bench_report(report, args.out, args.out + ".kv")
    for r in report.results:
        print(f"threads={r.threads} windows/s={r.windows_per_sec:.1f} "
              f"speedup={r.speedup:.2f}x" + (" UNSTABLE" if r.unstable else ""))
    print(f"wrote {args.out}")
    return 0


def cmd_export_seq(args: argparse.Namespace) -> int:
    matrix = read_featmap(args.featmap)
    labels = read_labels(args.labels)
    if args.grouping == "table":
        groups = group_features(matrix, mode=GroupingMode.TABLE)
    else:
        groups = group_features(matrix, mode=GroupingMode.EMPIRICAL)
    info = export_sequences(matrix, labels, groups, args.seq_len, args.out)
    n_channels = len(matrix.channel_labels())
    print(f"sequences: {info.n_sequences} total across {n_channels} channels "
          f"({info.n_sequences // max(1, n_channels)} per channel)")
    print(f"group widths: inc={len(info.inc_features)} dec={len(info.dec_features)}")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emgfatigue",
        description="sEMG muscle-fatigue feature pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract features from a signal CSV")
    _add_common(p)
    p.add_argument("--input", required=True, help="signal CSV")
    p.add_argument("--meta", help="metadata sidecar")
    p.add_argument("--fs", type=float, help="sampling rate override, Hz")
    p.add_argument("--zero-phase", action="store_true",
                   help="forward-backward filtering instead of causal")
    p.add_argument("--out", required=True, help="featmap CSV output")
    p.set_defaults(func=cmd_extract, _parser=p)

    p = sub.add_parser("trends", help="trend-significance report from a featmap")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--featmap", required=True)
    p.add_argument("--labels", help="labels CSV; uses RPE as the regressor")
    p.add_argument("--grouping", choices=("empirical", "table"))
    p.add_argument("--plot-data", help="optional per-feature trajectory CSV")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_trends)

    p = sub.add_parser("synth", help="generate a synthetic fatigue recording")
    _add_common(p)
    p.add_argument("--duration", type=float, help="seconds (default 60)")
    p.add_argument("--fs", type=float, help="sampling rate (default 2000)")
    p.add_argument("--amplitude", type=float, help="base amplitude (default 1)")
    p.add_argument("--beta", type=float, help="amplitude growth fraction (default 0.5)")
    p.add_argument("--gamma", type=float,
                   help="frequency compression fraction (default 0.4)")
    p.add_argument("--f0", type=float, help="initial center frequency, Hz (default 120)")
    p.add_argument("--bandwidth", type=float, help="band width, Hz (default 60)")
    p.add_argument("--noise-floor", type=float, help="default 0.05")
    p.add_argument("--seed", type=int, help="rng seed (default 0)")
    p.add_argument("--channels", type=int, help="channel count (default 2)")
    p.add_argument("--label-policy", choices=("thirds", "rpe_ramp"))
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bench", help="engine throughput benchmark")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--band", help="analysis band, Hz (lo:hi; default 20:450)")
    p.add_argument("--window-s", type=float, help="window length, s (default 0.5)")
    p.add_argument("--stride-s", type=float, help="window stride, s (default 0.25)")
    p.add_argument("--threads", dest="thread_list",
                   help="comma-separated thread counts (default 1,2,8)")
    p.add_argument("--windows", type=int, help="minimum workload size (default 10000)")
    p.add_argument("--repeats", type=int, help="timing repeats (default 3)")
    p.add_argument("--fs", type=float, help="sampling rate (default 2000)")
    p.add_argument("--seed", type=int, help="rng seed (default 0)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-seq", help="export sequence dataset for the model")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--featmap", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--seq-len", type=int, help="windows per sequence (default 5)")
    p.add_argument("--grouping", choices=("empirical", "table"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_seq)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args)
        return args.func(args)
    except EmgFatigueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
