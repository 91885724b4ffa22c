"""Wavelet descriptors from the 5-level decomposition stored in the cache.

With E_j = sum of squared detail coefficients at level j (1 = finest) and
E_A the approximation energy:

  WIRE51   = E_5 / E_1
  WIRM1551 = sum |c_5| / sum |c_1|
  WIRM1522 = sqrt(E_5) / sqrt(E_2)
  WIRW51   = WL(rec_5) / WL(rec_1), rec_j the single-level reconstructed
             detail signal and WL the waveform length sum |x_{i+1} - x_i|
  WEE      = -sum p_j ln p_j over p_j = E_j / (sum E + E_A), including the
             approximation term

Zero denominator energies flag the affected ratio degenerate (stored 0).
"""
from __future__ import annotations

import numpy as np

from ..dwt import reconstruct_detail
from .cache import SpectralCache
from .config import EngineConfig


def _waveform_length(x: np.ndarray) -> float:
    return float(np.sum(np.abs(np.diff(x))))


def wavelet_feature_values(cache: SpectralCache,
                           cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    details = cache.dwt_details
    energies = np.array([float(np.sum(d * d)) for d in details])
    e_approx = float(np.sum(cache.dwt_approx ** 2))

    values: dict[str, float] = {}
    degenerate: set[str] = set()

    e1, e2, e5 = energies[0], energies[1], energies[4]

    if e1 > 0:
        values["WIRE51"] = e5 / e1
    else:
        values["WIRE51"] = 0.0
        degenerate.add("WIRE51")

    abs1 = float(np.sum(np.abs(details[0])))
    abs5 = float(np.sum(np.abs(details[4])))
    if abs1 > 0:
        values["WIRM1551"] = abs5 / abs1
    else:
        values["WIRM1551"] = 0.0
        degenerate.add("WIRM1551")

    if e2 > 0:
        values["WIRM1522"] = float(np.sqrt(e5) / np.sqrt(e2))
    else:
        values["WIRM1522"] = 0.0
        degenerate.add("WIRM1522")

    total = float(np.sum(energies)) + e_approx
    if total > 0:
        p = np.append(energies, e_approx) / total
        nz = p[p > 0]
        values["WEE"] = float(-np.sum(nz * np.log(nz)))
    else:
        values["WEE"] = 0.0
        degenerate.add("WEE")

    if e1 > 0:
        rec1 = reconstruct_detail(details, cache.dwt_lengths, 1)
        wl1 = _waveform_length(rec1)
        wl5 = (_waveform_length(reconstruct_detail(details, cache.dwt_lengths, 5))
               if e5 > 0 else 0.0)
        if wl1 > 0:
            values["WIRW51"] = wl5 / wl1
        else:
            values["WIRW51"] = 0.0
            degenerate.add("WIRW51")
    else:
        values["WIRW51"] = 0.0
        degenerate.add("WIRW51")

    return values, degenerate


def compute_wavelet_features(cache: SpectralCache,
                             cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    return wavelet_feature_values(cache, cfg)
