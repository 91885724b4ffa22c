"""Frequency-domain and time-frequency descriptors computed from the shared cache.

Frequency group (P = PSD restricted to [band_low, band_high], f = bin centers):

  TP   = sum P(f) df
  MPF  = sum f*P / sum P                      (power-weighted mean frequency)
  MF   = sum f*sqrt(P) / sum sqrt(P)          (amplitude-weighted mean frequency)
  MDF  = frequency where cumulative in-band power reaches TP/2, linearly
         interpolated between bins
  IMPF = mean over STFT frames of the frame-wise MPF
  IMF  = mean over STFT frames of the frame-wise MDF
  BSE  = -sum p ln p / ln(n_bins) over p = P / sum P (normalized, in [0, 1])
  SMR  = in-band power / power below band_low
  FSM2 = sum f^-1 P / sum f^2 P               (low/high spectral moment ratio,
         rises as the spectrum compresses toward low frequencies)
  PKF  = in-band frequency of the maximum PSD bin (auxiliary)

Time-frequency group (per-frame PSDs from the cache):

  ERHL = frame-summed energy in 20-80 Hz / frame-summed energy in 150-450 Hz
  IMNF = mean over frames of 1 / MPF_frame   (mean instantaneous period, s)
  IMFB = mean over frames of 1 / MDF_frame

Frames with zero in-band power are excluded from the frame averages; features
whose inputs vanish entirely are stored as 0 with a degenerate flag.
"""
from __future__ import annotations

import numpy as np

from .cache import SpectralCache
from .config import EngineConfig

ERHL_LOW_BAND = (20.0, 80.0)
ERHL_HIGH_BAND = (150.0, 450.0)


def _median_frequency(freqs: np.ndarray, psd: np.ndarray) -> float:
    """Frequency splitting the in-band power in half, interpolated between bins."""
    cum = np.cumsum(psd)
    total = cum[-1]
    if total <= 0:
        return 0.0
    half = total / 2.0
    idx = int(np.searchsorted(cum, half))
    if idx == 0:
        return float(freqs[0])
    prev = cum[idx - 1]
    span = cum[idx] - prev
    if span <= 0:
        return float(freqs[idx])
    frac = (half - prev) / span
    return float(freqs[idx - 1] + frac * (freqs[idx] - freqs[idx - 1]))


def _mean_power_frequency(freqs: np.ndarray, psd: np.ndarray) -> float:
    total = np.sum(psd)
    if total <= 0:
        return 0.0
    return float(np.sum(freqs * psd) / total)


def frequency_feature_values(cache: SpectralCache,
                             cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    freqs = cache.freqs
    psd = cache.psd
    df = cache.df
    band = (freqs >= cfg.band_low) & (freqs <= cfg.band_high)
    below = freqs < cfg.band_low
    fb = freqs[band]
    pb = psd[band]

    degenerate: set[str] = set()
    values: dict[str, float] = {}

    total_in = float(np.sum(pb))
    tp = total_in * df
    values["TP"] = tp

    if total_in <= 0:
        for name in ("MPF", "MF", "MDF", "BSE", "SMR", "FSM2", "PKF"):
            values[name] = 0.0
        degenerate.update({"MPF", "MF", "MDF", "BSE", "SMR", "FSM2", "TP", "PKF"})
    else:
        values["MPF"] = _mean_power_frequency(fb, pb)
        amps = np.sqrt(pb)
        values["MF"] = float(np.sum(fb * amps) / np.sum(amps))
        values["MDF"] = _median_frequency(fb, pb)
        p_norm = pb / total_in
        nz = p_norm[p_norm > 0]
        if len(fb) > 1:
            values["BSE"] = float(-np.sum(nz * np.log(nz)) / np.log(len(fb)))
        else:
            values["BSE"] = 0.0
            degenerate.add("BSE")
        below_power = float(np.sum(psd[below]))
        if below_power > 0:
            values["SMR"] = total_in / below_power
        else:
            values["SMR"] = 0.0
            degenerate.add("SMR")
        m2 = float(np.sum(fb * fb * pb))
        if m2 > 0:
            values["FSM2"] = float(np.sum(pb / fb) / m2)
        else:
            values["FSM2"] = 0.0
            degenerate.add("FSM2")
        values["PKF"] = float(fb[int(np.argmax(pb))])

    impf, imf = _frame_means(cache, cfg, reciprocal=False)
    if impf is None:
        values["IMPF"] = 0.0
        values["IMF"] = 0.0
        degenerate.update({"IMPF", "IMF"})
    else:
        values["IMPF"] = impf
        values["IMF"] = imf
    return values, degenerate


def _frame_stats(cache: SpectralCache, cfg: EngineConfig):
    """Per-frame in-band MPF and MDF; frames with zero in-band power are dropped."""
    band = (cache.frame_freqs >= cfg.band_low) & (cache.frame_freqs <= cfg.band_high)
    fb = cache.frame_freqs[band]
    mpfs = []
    mdfs = []
    for frame in cache.frame_psd:
        pb = frame[band]
        total = np.sum(pb)
        if total <= 0:
            continue
        mpfs.append(_mean_power_frequency(fb, pb))
        mdfs.append(_median_frequency(fb, pb))
    return np.asarray(mpfs), np.asarray(mdfs)


def _frame_means(cache: SpectralCache, cfg: EngineConfig, reciprocal: bool):
    mpfs, mdfs = _frame_stats(cache, cfg)
    if len(mpfs) == 0:
        return None, None
    if reciprocal:
        return float(np.mean(1.0 / mpfs)), float(np.mean(1.0 / mdfs))
    return float(np.mean(mpfs)), float(np.mean(mdfs))


def tf_feature_values(cache: SpectralCache,
                      cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    values: dict[str, float] = {}
    degenerate: set[str] = set()

    freqs = cache.frame_freqs
    low_band = (freqs >= ERHL_LOW_BAND[0]) & (freqs <= ERHL_LOW_BAND[1])
    high_band = (freqs >= ERHL_HIGH_BAND[0]) & (freqs <= ERHL_HIGH_BAND[1])
    e_low = float(np.sum(cache.frame_psd[:, low_band]))
    e_high = float(np.sum(cache.frame_psd[:, high_band]))
    if not np.any(high_band) or e_high <= 0:
        values["ERHL"] = 0.0
        degenerate.add("ERHL")
    else:
        values["ERHL"] = e_low / e_high

    mpfs, mdfs = _frame_stats(cache, cfg)
    valid_mpf = mpfs[mpfs > 0] if len(mpfs) else mpfs
    valid_mdf = mdfs[mdfs > 0] if len(mdfs) else mdfs
    if len(valid_mpf) == 0 or len(valid_mdf) == 0:
        values["IMNF"] = 0.0
        values["IMFB"] = 0.0
        degenerate.update({"IMNF", "IMFB"})
    else:
        values["IMNF"] = float(np.mean(1.0 / valid_mpf))
        values["IMFB"] = float(np.mean(1.0 / valid_mdf))
    return values, degenerate


def compute_frequency_features(cache: SpectralCache,
                               cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    return frequency_feature_values(cache, cfg)


def compute_tf_features(cache: SpectralCache,
                        cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    return tf_feature_values(cache, cfg)
