"""File formats: signal CSV + metadata sidecar, feature maps, labels, trends,
sequence datasets, and benchmark reports.

All numeric feature values are printed with 17 significant digits so a
round-trip through CSV is lossless and reruns are byte-identical.

Formats
-------
signal CSV       header ``time_s,<ch1>,<ch2>,...``; the time column is
                 optional on read and reconstructed from the sampling rate.
metadata sidecar lines ``key,value`` for sampling_rate / mvc_level /
                 subject_id plus optional ``rpe,<t_seconds>,<value>`` rows.
feature map      ``featmap_v1``: header ``window_index,channel,start_sample,
                 <34 canonical names>,<PKF,DFA>,quality_bitmask``.
labels CSV       ``window_index,rpe,state`` with integer state class.
sequence CSV     ``seq_index,window_offset,inc_<name>...,dec_<name>...,label``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError, UsageError
from .features.engine import FeatureMatrix
from .features.ids import CANONICAL_FEATURES, N_FEATURES
from .signals import FatigueLabel, SignalRecord
from .trends import FeatureGroups, TrendReport

logger = logging.getLogger(__name__)

FEATMAP_VERSION = "featmap_v1"

_FEATMAP_HEADER = (
    ["window_index", "channel", "start_sample"]
    + list(CANONICAL_FEATURES)
    + ["quality_bitmask"]
)


def _fmt(value: float) -> str:
    return f"{value:.17g}"


# ---------------------------------------------------------------- signal csv

def write_signal_csv(record: SignalRecord, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("time_s," + ",".join(record.channels) + "\n")
        fs = record.sampling_rate
        for i in range(record.n_samples):
            row = [_fmt(i / fs)]
            row.extend(_fmt(record.samples[ch, i]) for ch in range(record.n_channels))
            fh.write(",".join(row) + "\n")


def read_signal_csv(path: str | Path, sampling_rate: float | None = None,
                    metadata: "dict | None" = None) -> SignalRecord:
    """Read a signal CSV; sampling rate comes from the argument, the metadata
    dict, or the time column (in that priority order)."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header_line = fh.readline().strip()
        if not header_line:
            raise DataError(f"{path}: no samples (empty file)")
        header = header_line.split(",")
        has_time = header[0] == "time_s"
        channel_names = header[1:] if has_time else header
        if not channel_names:
            raise DataError(f"{path}: header names no channels")
        n_fields = len(header)
        times: list[float] = []
        columns: list[list[float]] = [[] for _ in channel_names]
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != n_fields:
                raise DataError(
                    f"{path}: line {lineno}: expected {n_fields} fields, got {len(parts)}"
                )
            try:
                vals = [float(p) for p in parts]
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from None
            if has_time:
                times.append(vals[0])
                vals = vals[1:]
            for c, v in enumerate(vals):
                columns[c].append(v)

    if not columns[0]:
        raise DataError(f"{path}: no samples")

    fs = sampling_rate
    if fs is None and metadata and "sampling_rate" in metadata:
        fs = float(metadata["sampling_rate"])
    if fs is None and has_time and len(times) > 1:
        fs = 1.0 / (times[1] - times[0])
    if fs is None:
        raise DataError(f"{path}: sampling rate unavailable (no metadata, no time column)")

    meta = metadata or {}
    mvc = meta.get("mvc_level")
    return SignalRecord(
        samples=np.array(columns, dtype=np.float64),
        sampling_rate=float(fs),
        channels=list(channel_names),
        mvc_level=int(mvc) if mvc is not None else None,
        subject_id=meta.get("subject_id"),
    )


# ----------------------------------------------------------- metadata sidecar

def write_metadata(path: str | Path, record: SignalRecord,
                   rpe_annotations: "list[tuple[float, int]] | None" = None) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"sampling_rate,{_fmt(record.sampling_rate)}\n")
        if record.mvc_level is not None:
            fh.write(f"mvc_level,{record.mvc_level}\n")
        if record.subject_id is not None:
            fh.write(f"subject_id,{record.subject_id}\n")
        for t, rpe in rpe_annotations or []:
            fh.write(f"rpe,{_fmt(t)},{rpe}\n")


def read_metadata(path: str | Path) -> dict:
    path = Path(path)
    meta: dict = {"rpe": []}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            key = parts[0]
            try:
                if key == "rpe":
                    if len(parts) != 3:
                        raise DataError(
                            f"{path}: line {lineno}: rpe rows need t and value"
                        )
                    meta["rpe"].append((float(parts[1]), int(parts[2])))
                elif len(parts) == 2:
                    meta[key] = parts[1]
                else:
                    raise DataError(f"{path}: line {lineno}: malformed row")
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from None
    return meta


# ------------------------------------------------------------------- featmap

def write_featmap(matrix: FeatureMatrix, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(_FEATMAP_HEADER) + "\n")
        for i in range(matrix.n_rows):
            row = [
                str(int(matrix.window_index[i])),
                matrix.channels[i],
                str(int(matrix.start_sample[i])),
            ]
            row.extend(_fmt(v) for v in matrix.values[i])
            row.append(str(int(matrix.quality[i])))
            fh.write(",".join(row) + "\n")


def read_featmap(path: str | Path) -> FeatureMatrix:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if header != _FEATMAP_HEADER:
            raise DataError(f"{path}: not a {FEATMAP_VERSION} file (bad header)")
        window_index = []
        channels = []
        start_sample = []
        values = []
        quality = []
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(_FEATMAP_HEADER):
                raise DataError(
                    f"{path}: line {lineno}: expected {len(_FEATMAP_HEADER)} fields, "
                    f"got {len(parts)}"
                )
            try:
                window_index.append(int(parts[0]))
                channels.append(parts[1])
                start_sample.append(int(parts[2]))
                values.append([float(p) for p in parts[3:3 + N_FEATURES]])
                quality.append(int(parts[-1]))
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from None
    if not values:
        raise DataError(f"{path}: no feature rows")
    return FeatureMatrix(
        names=CANONICAL_FEATURES,
        values=np.array(values, dtype=np.float64),
        quality=np.array(quality, dtype=np.int64),
        window_index=np.array(window_index, dtype=np.int64),
        start_sample=np.array(start_sample, dtype=np.int64),
        channels=channels,
        sampling_rate=0.0,
    )


# -------------------------------------------------------------------- labels

def write_labels(labels: list[FatigueLabel], path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("window_index,rpe,state\n")
        for i, label in enumerate(labels):
            fh.write(f"{i},{label.rpe},{label.state.value}\n")


def read_labels(path: str | Path) -> dict[int, FatigueLabel]:
    from .signals import FatigueState

    path = Path(path)
    out: dict[int, FatigueLabel] = {}
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "window_index,rpe,state":
            raise DataError(f"{path}: bad labels header")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise DataError(f"{path}: line {lineno}: expected 3 fields")
            try:
                idx, rpe, state = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from None
            label = FatigueLabel(rpe=rpe, state=FatigueState(state))
            out[idx] = label
    return out


# ------------------------------------------------------------- trend reports

def write_trend_report(reports: "tuple[TrendReport, ...] | list[TrendReport]",
                       path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("feature,channel,r,slope,intercept,p_value,class\n")
        for r in reports:
            fh.write(
                f"{r.feature},{r.channel},{_fmt(r.pearson_r)},{_fmt(r.slope)},"
                f"{_fmt(r.intercept)},{_fmt(r.p_value)},{r.trend_class.value}\n"
            )


def write_trend_plot_data(matrix: FeatureMatrix, reports,
                          path: str | Path) -> None:
    """Per-feature channel-mean trajectory plus the fitted line, for plotting."""
    path = Path(path)
    by_feature: dict[str, list] = {}
    for r in reports:
        by_feature.setdefault(r.feature, []).append(r)
    channels = matrix.channel_labels()
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("feature,window_index,mean_value,fit_value\n")
        for feature, freports in by_feature.items():
            series = []
            for channel in channels:
                rows = matrix.rows_for_channel(channel)
                order = np.argsort(matrix.window_index[rows], kind="stable")
                series.append(matrix.values[rows[order],
                                            matrix.names.index(feature)])
            mean_series = np.mean(series, axis=0)
            slope = float(np.mean([r.slope for r in freports]))
            intercept = float(np.mean([r.intercept for r in freports]))
            for w, v in enumerate(mean_series):
                fh.write(
                    f"{feature},{w},{_fmt(v)},{_fmt(intercept + slope * w)}\n"
                )


# ---------------------------------------------------------- sequence dataset

@dataclass(frozen=True)
class SequenceDatasetInfo:
    n_sequences: int
    seq_len: int
    inc_features: list[str]
    dec_features: list[str]


def export_sequences(matrix: FeatureMatrix, labels: dict[int, FatigueLabel],
                     groups: FeatureGroups, seq_len: int,
                     path: str | Path) -> SequenceDatasetInfo:
    """Emit overlapping windows-of-T sequences with the final window's label.

    Sequences are built independently within each channel (stride 1) and
    stacked with a global running seq_index; the label column is the integer
    fatigue class of the sequence's last window.
    """
    if seq_len < 1:
        raise UsageError("seq_len must be >= 1")
    inc = groups.ordered_increasing()
    dec = groups.ordered_decreasing()
    if not inc or not dec:
        raise UsageError("grouping left an empty increasing or decreasing set")

    inc_idx = [matrix.names.index(f) for f in inc]
    dec_idx = [matrix.names.index(f) for f in dec]

    path = Path(path)
    n_seq = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        header = (["seq_index", "window_offset"]
                  + [f"inc_{f}" for f in inc]
                  + [f"dec_{f}" for f in dec]
                  + ["label"])
        fh.write(",".join(header) + "\n")
        for channel in matrix.channel_labels():
            rows = matrix.rows_for_channel(channel)
            order = np.argsort(matrix.window_index[rows], kind="stable")
            rows = rows[order]
            widx = matrix.window_index[rows]
            n_windows = len(rows)
            if n_windows < seq_len:
                logger.warning(
                    "channel %s has %d windows < seq_len %d; no sequences",
                    channel, n_windows, seq_len,
                )
                continue
            for start in range(n_windows - seq_len + 1):
                final_widx = int(widx[start + seq_len - 1])
                if final_widx not in labels:
                    raise DataError(
                        f"no label for window_index {final_widx} (channel {channel})"
                    )
                label_cls = labels[final_widx].state.value
                for offset in range(seq_len):
                    row_i = rows[start + offset]
                    fields = [str(n_seq), str(offset)]
                    fields.extend(_fmt(matrix.values[row_i, j]) for j in inc_idx)
                    fields.extend(_fmt(matrix.values[row_i, j]) for j in dec_idx)
                    fields.append(str(label_cls))
                    fh.write(",".join(fields) + "\n")
                n_seq += 1
    if n_seq == 0:
        logger.warning("sequence export produced an empty dataset")
    return SequenceDatasetInfo(
        n_sequences=n_seq, seq_len=seq_len, inc_features=inc, dec_features=dec,
    )


# ------------------------------------------------------------ bench report

def write_bench_report(report, path_txt: str | Path, path_kv: str | Path) -> None:
    path_txt = Path(path_txt)
    path_kv = Path(path_kv)
    with path_txt.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"windows: {report.n_windows}\n")
        fh.write(f"checksum: {report.checksum}\n")
        for k, v in report.machine.items():
            fh.write(f"{k}: {v}\n")
        for r in report.results:
            flag = "  [UNSTABLE]" if r.unstable else ""
            fh.write(
                f"threads={r.threads:<3d} windows/s={r.windows_per_sec:12.1f} "
                f"speedup={r.speedup:6.2f}x{flag}\n"
            )
    with path_kv.open("w", encoding="utf-8", newline="\n") as fh:
        for k, v in report.as_key_values():
            fh.write(f"{k}={v}\n")
