"""Parallel sliding-window feature extraction.

Work items are (channel, window) pairs. Each item is pure: it reads a
zero-copy window view, builds the shared spectral cache once, evaluates the
five descriptor families, and writes to a preallocated output slot indexed by
item number. Reduction order therefore never affects the result and the
output is bit-identical for any thread count.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..signals import SignalRecord, WindowPlan, WindowView, segment_windows
from .cache import build_spectral_cache
from .config import EngineConfig
from .ids import CANONICAL_FEATURES, N_FEATURES, feature_index
from .nonlinear import nonlinear_feature_values
from .spectral import frequency_feature_values, tf_feature_values
from .timedomain import time_feature_values
from .wavelet import wavelet_feature_values

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeatureVector:
    """All canonical descriptor values for one window of one channel."""

    window_index: int
    channel: str
    start_sample: int
    values: np.ndarray            # canonical order, length N_FEATURES
    quality_bitmask: int

    def as_dict(self) -> dict[str, float]:
        return dict(zip(CANONICAL_FEATURES, self.values))

    def is_degenerate(self, name: str) -> bool:
        return bool(self.quality_bitmask >> feature_index(name) & 1)


@dataclass
class FeatureMatrix:
    """Stacked per-(channel, window) feature rows in canonical window order."""

    names: tuple[str, ...]
    values: np.ndarray            # (n_rows, N_FEATURES)
    quality: np.ndarray           # (n_rows,) int64 bitmask
    window_index: np.ndarray      # (n_rows,)
    start_sample: np.ndarray      # (n_rows,)
    channels: list[str]           # label per row
    sampling_rate: float

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    def channel_labels(self) -> list[str]:
        seen: list[str] = []
        for label in self.channels:
            if label not in seen:
                seen.append(label)
        return seen

    def rows_for_channel(self, label: str) -> np.ndarray:
        mask = np.array([c == label for c in self.channels])
        return np.flatnonzero(mask)

    def column(self, name: str, channel: str | None = None) -> np.ndarray:
        col = self.values[:, feature_index(name)]
        if channel is None:
            return col
        return col[self.rows_for_channel(channel)]

    def vector(self, row: int) -> FeatureVector:
        return FeatureVector(
            window_index=int(self.window_index[row]),
            channel=self.channels[row],
            start_sample=int(self.start_sample[row]),
            values=self.values[row].copy(),
            quality_bitmask=int(self.quality[row]),
        )

    def equals(self, other: "FeatureMatrix") -> bool:
        return (
            self.names == other.names
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.quality, other.quality)
            and np.array_equal(self.window_index, other.window_index)
            and self.channels == other.channels
        )


def compute_window_row(x: np.ndarray, fs: float,
                       cfg: EngineConfig) -> tuple[np.ndarray, int]:
    """All canonical features for one window of raw samples."""
    row = np.empty(N_FEATURES)
    bitmask = 0

    cache = build_spectral_cache(x, fs, cfg)
    for values, degenerate in (
        time_feature_values(x, fs, cfg),
        frequency_feature_values(cache, cfg),
        tf_feature_values(cache, cfg),
        wavelet_feature_values(cache, cfg),
        nonlinear_feature_values(x, cache, cfg),
    ):
        for name, value in values.items():
            if not np.isfinite(value):
                value = 0.0
                degenerate = set(degenerate) | {name}
            row[feature_index(name)] = value
        for name in degenerate:
            bitmask |= 1 << feature_index(name)
    return row, bitmask


def features_for_window(window: WindowView, cfg: EngineConfig) -> FeatureVector:
    """Convenience single-window entry point."""
    row, bitmask = compute_window_row(window.data, window.sampling_rate, cfg)
    return FeatureVector(
        window_index=window.window_index,
        channel=window.channel,
        start_sample=window.start_sample,
        values=row,
        quality_bitmask=bitmask,
    )


def extract_features(record: SignalRecord, plan: WindowPlan,
                     cfg: EngineConfig) -> FeatureMatrix:
    """Extract every canonical descriptor for every (channel, window) item.

    Deterministic: identical record and config produce bit-identical output
    for any ``cfg.thread_count``.
    """
    views = segment_windows(record, plan)
    n_items = len(views)
    if n_items == 0:
        logger.warning("no windows to extract; returning empty feature matrix")
        return FeatureMatrix(
            names=CANONICAL_FEATURES,
            values=np.empty((0, N_FEATURES)),
            quality=np.empty(0, dtype=np.int64),
            window_index=np.empty(0, dtype=np.int64),
            start_sample=np.empty(0, dtype=np.int64),
            channels=[],
            sampling_rate=record.sampling_rate,
        )

    values = np.empty((n_items, N_FEATURES))
    quality = np.zeros(n_items, dtype=np.int64)
    fs = record.sampling_rate

    def run_slice(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            row, bitmask = compute_window_row(views[i].data, fs, cfg)
            values[i] = row
            quality[i] = bitmask

    threads = cfg.thread_count
    if threads <= 1 or n_items == 1:
        run_slice(0, n_items)
    else:
        n_chunks = min(n_items, threads * 4)
        bounds = np.linspace(0, n_items, n_chunks + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(run_slice, int(bounds[c]), int(bounds[c + 1]))
                for c in range(n_chunks)
            ]
            for future in futures:
                future.result()

    return FeatureMatrix(
        names=CANONICAL_FEATURES,
        values=values,
        quality=quality,
        window_index=np.array([v.window_index for v in views], dtype=np.int64),
        start_sample=np.array([v.start_sample for v in views], dtype=np.int64),
        channels=[v.channel for v in views],
        sampling_rate=record.sampling_rate,
    )


__all__ = [
    "FeatureVector",
    "FeatureMatrix",
    "compute_window_row",
    "features_for_window",
    "extract_features",
]
