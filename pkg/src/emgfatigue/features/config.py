"""Engine configuration: thresholds and parameters for every descriptor family.

The literature names most of these descriptors without pinning parameters, so
each default below is the concrete convention this implementation commits to.
They are documented per field and covered by the reference-oracle test suite.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigError


@dataclass(frozen=True)
class EngineConfig:
    # Spectral integration band (Hz); also splits SMR's in-band/below-band power.
    band_low: float = 20.0
    band_high: float = 450.0

    # Time-domain count thresholds. ZC/SSC thresholds are absolute amplitudes;
    # WA's threshold is a fraction of the window's peak |x| so counts are
    # scale-invariant.
    zc_threshold: float = 0.0
    ssc_threshold: float = 0.0
    wa_threshold_fraction: float = 0.05

    # AEMG: rectified signal smoothed by a boxcar of this length before averaging.
    aemg_smooth_ms: float = 50.0

    # STFT framing for the time-frequency group.
    stft_frame_len: int = 128
    stft_overlap: float = 0.5

    # Wavelet decomposition depth (Daubechies-4, symmetric extension).
    wavelet_levels: int = 5

    # Recurrence analysis: embedding dimension, delay, and threshold as a
    # fraction of the maximum phase-space distance.
    rqa_embedding: int = 3
    rqa_delay: int = 2
    rqa_threshold_fraction: float = 0.10

    # Approximate/sample entropy: template length and tolerance as a fraction
    # of the window standard deviation.
    entropy_m: int = 2
    entropy_r_fraction: float = 0.2

    higuchi_kmax: int = 8

    # Permutation entropy (BE): ordinal pattern order and delay.
    pe_order: int = 3
    pe_delay: int = 1

    # DFA: log-spaced integer box sizes between min and max scale.
    dfa_min_scale: int = 4
    dfa_max_scale: int = 64
    dfa_n_scales: int = 10

    thread_count: int = 1

    def __post_init__(self) -> None:
        if not 0 < self.band_low < self.band_high:
            raise ConfigError("need 0 < band_low < band_high")
        for name in ("zc_threshold", "ssc_threshold", "wa_threshold_fraction"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.stft_frame_len < 2:
            raise ConfigError("stft_frame_len must be >= 2")
        if not 0 <= self.stft_overlap < 1:
            raise ConfigError("stft_overlap must be in [0, 1)")
        if self.wavelet_levels < 1:
            raise ConfigError("wavelet_levels must be >= 1")
        if self.rqa_embedding < 2 or self.rqa_delay < 1:
            raise ConfigError("rqa embedding must be >= 2 with delay >= 1")
        if self.entropy_m < 1 or self.entropy_r_fraction <= 0:
            raise ConfigError("entropy parameters out of range")
        if self.higuchi_kmax < 2:
            raise ConfigError("higuchi_kmax must be >= 2")
        if self.pe_order < 2 or self.pe_delay < 1:
            raise ConfigError("permutation entropy parameters out of range")
        if not 2 <= self.dfa_min_scale < self.dfa_max_scale:
            raise ConfigError("need 2 <= dfa_min_scale < dfa_max_scale")
        if self.thread_count < 1:
            raise ConfigError("thread_count must be >= 1")

    @property
    def stft_hop(self) -> int:
        hop = int(round(self.stft_frame_len * (1.0 - self.stft_overlap)))
        return max(1, hop)

    def dfa_scales(self) -> "tuple[int, ...]":
        import numpy as np

        raw = np.logspace(np.log10(self.dfa_min_scale),
                          np.log10(self.dfa_max_scale), self.dfa_n_scales)
        return tuple(int(s) for s in sorted(set(np.round(raw).astype(int))))
