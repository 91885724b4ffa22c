"""Reproducible synthetic sEMG with controllable fatigue dynamics.

The generated record is band-limited Gaussian noise whose center frequency
compresses and whose amplitude grows over the recording:

    x(t) = a(t) * n_band(t) + noise_floor * a0 * white(t)
    a(t)   = a0 * (1 + beta * t / T)
    f_c(t) = f0 * (1 - gamma * t / T)
    bw(t)  = bandwidth * f_c(t) / f0        (the band narrows as it descends,
                                             so spectral spread also shrinks)

Band shaping runs a 2nd-order Butterworth band-pass whose coefficients are
refreshed every 50 ms block (state carried across blocks); each block is
rescaled by the filter's white-noise gain so amplitude tracks a(t) alone.
Two channels share the fatigue trajectories but use independent noise.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import signal as sps

from .errors import ConfigError
from .signals import FatigueLabel, SignalRecord, WindowPlan

BLOCK_S = 0.05
DEFAULT_BAND_LOW = 20.0


class LabelPolicy(Enum):
    THIRDS = "thirds"
    RPE_RAMP = "rpe_ramp"


@dataclass(frozen=True)
class SynthSpec:
    duration_s: float = 60.0
    sampling_rate: float = 2000.0
    base_amplitude: float = 1.0
    amplitude_growth: float = 0.5      # fractional gain over the full duration
    center_freq: float = 120.0
    freq_compression: float = 0.4      # fractional center-frequency drop
    bandwidth: float = 60.0
    noise_floor: float = 0.05          # white-noise amplitude as a fraction of a0
    rng_seed: int = 0
    n_channels: int = 2
    label_policy: LabelPolicy = LabelPolicy.THIRDS

    def validate(self, window_len_s: float = 0.5) -> None:
        if self.duration_s < 3 * window_len_s:
            raise ConfigError(
                f"duration {self.duration_s}s must be >= 3 windows of {window_len_s}s"
            )
        if self.sampling_rate <= 0 or self.base_amplitude <= 0:
            raise ConfigError("sampling_rate and base_amplitude must be > 0")
        if not 0 <= self.freq_compression < 1:
            raise ConfigError("freq_compression must be in [0, 1)")
        if self.amplitude_growth < 0 or self.noise_floor < 0:
            raise ConfigError("amplitude_growth and noise_floor must be >= 0")
        final_fc = self.center_freq * (1 - self.freq_compression)
        final_low_edge = final_fc * (1 - self.bandwidth / self.center_freq / 2)
        if final_low_edge <= DEFAULT_BAND_LOW:
            raise ConfigError(
                f"compressed band bottoms out at {final_low_edge:.1f} Hz; must stay "
                f"above {DEFAULT_BAND_LOW} Hz"
            )
        if self.center_freq + self.bandwidth / 2 >= self.sampling_rate / 2:
            raise ConfigError("initial band exceeds Nyquist")
        if self.n_channels < 1:
            raise ConfigError("n_channels must be >= 1")


def trajectories(spec: SynthSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Per-sample (t, a(t), f_c(t), bw(t)) arrays for the spec."""
    n = int(round(spec.duration_s * spec.sampling_rate))
    t = np.arange(n) / spec.sampling_rate
    frac = t / spec.duration_s
    a = spec.base_amplitude * (1.0 + spec.amplitude_growth * frac)
    fc = spec.center_freq * (1.0 - spec.freq_compression * frac)
    bw = spec.bandwidth * fc / spec.center_freq
    return t, a, fc, bw


def _block_band_noise(spec: SynthSpec, rng: np.random.Generator,
                      fc: np.ndarray, bw: np.ndarray) -> np.ndarray:
    """Unit-variance band noise with per-block coefficient updates."""
    n = len(fc)
    fs = spec.sampling_rate
    block = max(1, int(round(BLOCK_S * fs)))
    white = rng.standard_normal(n)
    out = np.empty(n)
    zi = None
    grid = np.linspace(0.0, fs / 2.0, 1024)
    for start in range(0, n, block):
        stop = min(start + block, n)
        mid = (start + stop) // 2
        lo = fc[mid] - bw[mid] / 2.0
        hi = fc[mid] + bw[mid] / 2.0
        sos = sps.butter(2, [lo / (fs / 2), hi / (fs / 2)],
                         btype="bandpass", output="sos")
        if zi is None:
            zi = np.zeros((sos.shape[0], 2))
        seg, zi = sps.sosfilt(sos, white[start:stop], zi=zi)
        _, h = sps.sosfreqz(sos, worN=grid, fs=fs)
        gain = np.sqrt(np.trapezoid(np.abs(h) ** 2, grid) * 2.0 / fs)
        out[start:stop] = seg / gain
    return out


def generate(spec: SynthSpec,
             plan: WindowPlan | None = None) -> tuple[SignalRecord, list[FatigueLabel]]:
    """Generate a record plus one fatigue label per window of the plan."""
    plan = plan or WindowPlan()
    spec.validate(plan.window_len_s)
    rng = np.random.default_rng(spec.rng_seed)
    _, a, fc, bw = trajectories(spec)
    n = len(a)

    channels = np.empty((spec.n_channels, n))
    for ch in range(spec.n_channels):
        band = _block_band_noise(spec, rng, fc, bw)
        white = rng.standard_normal(n)
        channels[ch] = a * band + spec.noise_floor * spec.base_amplitude * white

    record = SignalRecord(
        samples=channels,
        sampling_rate=spec.sampling_rate,
        channels=[f"ch{i + 1}" for i in range(spec.n_channels)],
    )
    labels = window_labels(spec, plan, n)
    return record, labels


def window_labels(spec: SynthSpec, plan: WindowPlan, n_samples: int) -> list[FatigueLabel]:
    """Label each window start per the spec's label policy."""
    window_len, stride = plan.in_samples(spec.sampling_rate)
    if n_samples < window_len:
        return []
    n_windows = (n_samples - window_len) // stride + 1
    starts = np.arange(n_windows) * stride
    last_start = max(int(starts[-1]), 1)
    labels = []
    for start in starts:
        frac = start / last_start
        if spec.label_policy is LabelPolicy.THIRDS:
            if frac < 1 / 3:
                rpe = 8
            elif frac < 2 / 3:
                rpe = 13
            else:
                rpe = 18
        else:
            rpe = 6 + int(round(14 * frac))
        labels.append(FatigueLabel.from_rpe(rpe))
    return labels
