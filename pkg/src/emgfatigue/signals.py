"""Signal representation, band-pass/notch preprocessing, and sliding-window segmentation.

Conventions
-----------
Samples are stored channel-major as a float64 array of shape (n_channels, n_samples).
Filtering is causal (single forward pass) by default; an optional zero-phase mode
runs the same cascade forward and backward with reflected edge padding.
Window segmentation produces zero-copy read-only views into the parent record.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import signal as sps

from .errors import ConfigError, FilterDesignError, UsageError

logger = logging.getLogger(__name__)

DEFAULT_SAMPLING_RATE = 2000.0

VALID_MVC_LEVELS = (20, 40, 60, 80)


class FatigueState(Enum):
    RELAXED = 0
    EXERTED = 1
    FATIGUED = 2


def rpe_to_state(rpe: int) -> FatigueState:
    """Total mapping from a Borg RPE score (6..20) to a fatigue state.

    Bins: 6-10 relaxed, 11-15 exerted, 16-20 fatigued.
    """
    if not 6 <= rpe <= 20:
        raise ConfigError(f"RPE must be in 6..20, got {rpe}")
    if rpe <= 10:
        return FatigueState.RELAXED
    if rpe <= 15:
        return FatigueState.EXERTED
    return FatigueState.FATIGUED


@dataclass(frozen=True)
class FatigueLabel:
    rpe: int
    state: FatigueState

    @classmethod
    def from_rpe(cls, rpe: int) -> "FatigueLabel":
        return cls(rpe=rpe, state=rpe_to_state(rpe))


@dataclass
class SignalRecord:
    """Multi-channel sEMG record.

    samples: (n_channels, n_samples) float64
    channels: ordered channel labels, one per row
    """

    samples: np.ndarray
    sampling_rate: float = DEFAULT_SAMPLING_RATE
    channels: list[str] = field(default_factory=list)
    mvc_level: int | None = None
    subject_id: str | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[np.newaxis, :]
        if arr.ndim != 2:
            raise ConfigError(f"samples must be 1-D or 2-D, got ndim={arr.ndim}")
        if arr.shape[1] < 1:
            raise ConfigError("signal must contain at least one sample")
        if self.sampling_rate <= 0:
            raise ConfigError(f"sampling_rate must be > 0, got {self.sampling_rate}")
        if not self.channels:
            self.channels = [f"ch{i + 1}" for i in range(arr.shape[0])]
        if len(self.channels) != arr.shape[0]:
            raise ConfigError(
                f"{len(self.channels)} channel labels for {arr.shape[0]} channel rows"
            )
        if self.mvc_level is not None and self.mvc_level not in VALID_MVC_LEVELS:
            raise ConfigError(f"mvc_level must be one of {VALID_MVC_LEVELS}")
        self.samples = arr

    @property
    def n_channels(self) -> int:
        return self.samples.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

    @property
    def duration_s(self) -> float:
        return self.n_samples / self.sampling_rate


@dataclass(frozen=True)
class FilterSpec:
    """Band-pass + notch preprocessing parameters."""

    band_low: float = 20.0
    band_high: float = 450.0
    notch_freq: float = 50.0
    notch_bandwidth: float = 2.0
    filter_order: int = 4

    def validate(self, sampling_rate: float) -> None:
        nyq = sampling_rate / 2.0
        if not 0 < self.band_low < self.band_high < nyq:
            raise ConfigError(
                f"band edges must satisfy 0 < low < high < fs/2; "
                f"got {self.band_low}-{self.band_high} Hz at fs={sampling_rate}"
            )
        if not 0 < self.notch_freq < nyq:
            raise ConfigError(
                f"notch_freq must lie in (0, fs/2); got {self.notch_freq} Hz"
            )
        if self.notch_bandwidth <= 0:
            raise ConfigError("notch_bandwidth must be > 0")
        if self.filter_order < 1:
            raise ConfigError("filter_order must be a positive integer")


@dataclass(frozen=True)
class FilterChain:
    """Designed filter cascade: Butterworth band-pass sections plus a notch biquad."""

    sos: np.ndarray
    sampling_rate: float
    spec: FilterSpec

    def frequency_response(self, freqs: np.ndarray) -> np.ndarray:
        """Complex response of the full cascade at the given frequencies (Hz)."""
        _, h = sps.sosfreqz(self.sos, worN=np.asarray(freqs, dtype=float),
                            fs=self.sampling_rate)
        return h

    @property
    def order(self) -> int:
        return 2 * self.sos.shape[0]


def design_filters(spec: FilterSpec, sampling_rate: float) -> FilterChain:
    """Design the band-pass + notch cascade for a given sampling rate.

    Returns second-order sections with all poles strictly inside the unit circle.
    """
    spec.validate(sampling_rate)
    nyq = sampling_rate / 2.0
    bp_sos = sps.butter(
        spec.filter_order,
        [spec.band_low / nyq, spec.band_high / nyq],
        btype="bandpass",
        output="sos",
    )
    q = spec.notch_freq / spec.notch_bandwidth
    b, a = sps.iirnotch(spec.notch_freq / nyq, q)
    notch_sos = sps.tf2sos(b, a)
    sos = np.vstack([bp_sos, notch_sos])

    for section in sos:
        poles = np.roots(section[3:])
        if np.any(np.abs(poles) >= 1.0):
            raise FilterDesignError(
                f"unstable section (|pole| >= 1) for spec {spec} at fs={sampling_rate}"
            )
    return FilterChain(sos=sos, sampling_rate=sampling_rate, spec=spec)


def apply_filters(chain: FilterChain, record: SignalRecord,
                  zero_phase: bool = False) -> SignalRecord:
    """Filter every channel of a record through the designed cascade.

    Causal single-pass by default; ``zero_phase=True`` runs forward-backward
    with reflected edge padding of 3x the cascade order.
    """
    if chain.sampling_rate != record.sampling_rate:
        raise UsageError(
            f"filter chain designed for fs={chain.sampling_rate}, "
            f"record has fs={record.sampling_rate}"
        )
    if zero_phase:
        padlen = min(3 * chain.order, record.n_samples - 1)
        out = sps.sosfiltfilt(chain.sos, record.samples, axis=1,
                              padtype="even", padlen=padlen)
    else:
        out = sps.sosfilt(chain.sos, record.samples, axis=1)
    return SignalRecord(
        samples=np.ascontiguousarray(out),
        sampling_rate=record.sampling_rate,
        channels=list(record.channels),
        mvc_level=record.mvc_level,
        subject_id=record.subject_id,
    )


@dataclass(frozen=True)
class WindowPlan:
    """Sliding-window plan in seconds; sample counts derive from the sampling rate."""

    window_len_s: float = 0.5
    stride_s: float = 0.25

    def in_samples(self, sampling_rate: float) -> tuple[int, int]:
        window_len = int(round(self.window_len_s * sampling_rate))
        stride = int(round(self.stride_s * sampling_rate))
        if window_len < 2:
            raise ConfigError(f"window length must be >= 2 samples, got {window_len}")
        if stride < 1:
            raise ConfigError(f"stride must be >= 1 sample, got {stride}")
        if stride > window_len:
            raise ConfigError(
                f"stride ({stride}) must not exceed window length ({window_len})"
            )
        return window_len, stride

    def count_windows(self, n_samples: int, sampling_rate: float) -> int:
        window_len, stride = self.in_samples(sampling_rate)
        if n_samples < window_len:
            return 0
        return (n_samples - window_len) // stride + 1


class WindowView:
    """Zero-copy read-only view of one window of one channel.

    Holds a reference into the parent record; extracting data never copies
    and never allows mutation of the parent samples.
    """

    __slots__ = ("record", "channel_index", "start_sample", "length", "window_index")

    def __init__(self, record: SignalRecord, channel_index: int,
                 start_sample: int, length: int, window_index: int) -> None:
        if start_sample + length > record.n_samples:
            raise UsageError("window extends past the end of the signal")
        self.record = record
        self.channel_index = channel_index
        self.start_sample = start_sample
        self.length = length
        self.window_index = window_index

    @property
    def data(self) -> np.ndarray:
        view = self.record.samples[self.channel_index,
                                   self.start_sample:self.start_sample + self.length]
        view.flags.writeable = False
        return view

    @property
    def sampling_rate(self) -> float:
        return self.record.sampling_rate

    @property
    def channel(self) -> str:
        return self.record.channels[self.channel_index]

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return (f"WindowView(channel={self.channel!r}, window={self.window_index}, "
                f"start={self.start_sample}, len={self.length})")


def segment_windows(record: SignalRecord, plan: WindowPlan) -> list[WindowView]:
    """Segment every channel into sliding windows, channel-major order.

    Window starts are 0, stride, 2*stride, ...; a signal shorter than one
    window yields an empty list (with a log diagnostic).
    """
    window_len, stride = plan.in_samples(record.sampling_rate)
    n = record.n_samples
    if n < window_len:
        logger.warning(
            "signal of %d samples is shorter than one window (%d samples); no windows",
            n, window_len,
        )
        return []
    n_windows = (n - window_len) // stride + 1
    views = []
    for ch in range(record.n_channels):
        for w in range(n_windows):
            views.append(WindowView(record, ch, w * stride, window_len, w))
    return views
