"""Time-domain descriptors: amplitude statistics and thresholded event counts.

Definitions (x = window samples, N = window length):

  iEMG  = sum |x_i|
  MAV   = iEMG / N
  RMS   = sqrt(sum x_i^2 / N)
  DASDV = sqrt(sum (x_{i+1} - x_i)^2 / (N - 1))
  MCV   = sum |x_{i+1} - x_i| / (N - 1)
  AEMG  = mean of |x| after boxcar smoothing over aemg_smooth_ms
          ('valid' convolution; falls back to plain MAV when the window is
          shorter than the boxcar)
  ZC    = count of i with x_i * x_{i+1} < 0 and |x_i - x_{i+1}| >= zc_threshold
  SSC   = count of i with (x_i - x_{i-1}) * (x_i - x_{i+1}) > ssc_threshold
  WA    = count of i with |x_{i+1} - x_i| > wa_threshold_fraction * max |x|
"""
from __future__ import annotations

import numpy as np

from .config import EngineConfig


def time_feature_values(x: np.ndarray, fs: float,
                        cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    """Compute the nine time-domain descriptors for one window."""
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    absx = np.abs(x)
    diffs = np.diff(x)

    iemg = float(np.sum(absx))
    mav = iemg / n
    rms = float(np.sqrt(np.sum(x * x) / n))
    dasdv = float(np.sqrt(np.sum(diffs * diffs) / (n - 1)))
    mcv = float(np.sum(np.abs(diffs)) / (n - 1))

    smooth_len = max(1, int(round(cfg.aemg_smooth_ms * 1e-3 * fs)))
    if smooth_len >= n:
        aemg = mav
    else:
        kernel = np.full(smooth_len, 1.0 / smooth_len)
        aemg = float(np.mean(np.convolve(absx, kernel, mode="valid")))

    zc = int(np.count_nonzero(
        (x[:-1] * x[1:] < 0) & (np.abs(diffs) >= cfg.zc_threshold)
    ))
    ssc = int(np.count_nonzero(
        (x[1:-1] - x[:-2]) * (x[1:-1] - x[2:]) > cfg.ssc_threshold
    ))
    wa_threshold = cfg.wa_threshold_fraction * float(np.max(absx))
    wa = int(np.count_nonzero(np.abs(diffs) > wa_threshold))

    values = {
        "AEMG": aemg, "iEMG": iemg, "RMS": rms, "MAV": mav,
        "MCV": mcv, "DASDV": dasdv,
        "ZC": float(zc), "SSC": float(ssc), "WA": float(wa),
    }
    degenerate: set[str] = set()
    if not np.any(x):
        degenerate.update(values)
    return values, degenerate


def compute_time_features(window, cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    """Public wrapper accepting a WindowView."""
    return time_feature_values(window.data, window.sampling_rate, cfg)
