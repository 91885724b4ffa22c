"""Shared per-window spectral state: one full-window FFT, STFT frames, DWT.

Every spectral, time-frequency, and wavelet descriptor reads from this cache,
so the full-window FFT is computed exactly once per window. A module counter
tracks full-window FFT calls so tests can assert the single-FFT guarantee.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field

import numpy as np

from .. import dwt
from .config import EngineConfig

logger = logging.getLogger(__name__)

_fft_calls = 0
_counter_lock = threading.Lock()


def fft_call_count() -> int:
    """Number of full-window FFTs since the last reset."""
    with _counter_lock:
        return _fft_calls


def reset_fft_counter() -> None:
    global _fft_calls
    with _counter_lock:
        _fft_calls = 0


def _count_fft() -> None:
    global _fft_calls
    with _counter_lock:
        _fft_calls += 1


@dataclass
class SpectralCache:
    """Per-window spectral intermediates shared across feature families."""

    fs: float
    n: int
    windowed: np.ndarray          # Hann-tapered samples
    spectrum: np.ndarray          # one-sided complex spectrum of the tapered window
    psd: np.ndarray               # density-scaled periodogram (units^2 / Hz)
    freqs: np.ndarray             # Hz, one per psd bin
    frame_psd: np.ndarray         # (n_frames, n_frame_bins) per-frame periodograms
    frame_freqs: np.ndarray
    dwt_details: list[np.ndarray] = field(default_factory=list)
    dwt_approx: np.ndarray = field(default_factory=lambda: np.empty(0))
    dwt_lengths: list[int] = field(default_factory=list)

    @property
    def df(self) -> float:
        return self.fs / self.n

    def total_power(self) -> float:
        """Integral of the PSD; equals tapered-window power / Hann power gain."""
        return float(np.sum(self.psd) * self.df)


def _hann_periodogram(x: np.ndarray, fs: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hann-tapered periodogram with density scaling.

    Scaled so that sum(psd) * df equals sum((w*x)**2) / sum(w**2), the
    Hann-power-corrected window power (Parseval identity).
    """
    n = len(x)
    w = np.hanning(n)
    xw = x * w
    spec = np.fft.rfft(xw)
    psd = (np.abs(spec) ** 2) * (2.0 / (fs * np.sum(w * w)))
    psd[0] /= 2.0
    if n % 2 == 0:
        psd[-1] /= 2.0
    freqs = np.fft.rfftfreq(n, d=1.0 / fs)
    return xw, spec, psd


def build_spectral_cache(x: np.ndarray, fs: float, cfg: EngineConfig) -> SpectralCache:
    """Build the shared cache for one window of samples."""
    x = np.asarray(x, dtype=np.float64)
    n = len(x)

    _count_fft()
    xw, spec, psd = _hann_periodogram(x, fs)
    freqs = np.fft.rfftfreq(n, d=1.0 / fs)

    frame_len = cfg.stft_frame_len
    if frame_len > n:
        logger.warning(
            "stft_frame_len %d exceeds window length %d; clamping", frame_len, n
        )
        frame_len = n
    hop = max(1, int(round(frame_len * (1.0 - cfg.stft_overlap))))
    n_frames = (n - frame_len) // hop + 1
    frame_w = np.hanning(frame_len)
    frame_scale = 2.0 / (fs * np.sum(frame_w * frame_w))
    starts = np.arange(n_frames) * hop
    frames = x[starts[:, None] + np.arange(frame_len)[None, :]] * frame_w
    fspec = np.fft.rfft(frames, axis=1)
    frame_psd = (np.abs(fspec) ** 2) * frame_scale
    frame_psd[:, 0] /= 2.0
    if frame_len % 2 == 0:
        frame_psd[:, -1] /= 2.0
    frame_freqs = np.fft.rfftfreq(frame_len, d=1.0 / fs)

    details, approx, lengths = dwt.wavedec(x, cfg.wavelet_levels)

    return SpectralCache(
        fs=fs,
        n=n,
        windowed=xw,
        spectrum=spec,
        psd=psd,
        freqs=freqs,
        frame_psd=frame_psd,
        frame_freqs=frame_freqs,
        dwt_details=details,
        dwt_approx=approx,
        dwt_lengths=lengths,
    )
