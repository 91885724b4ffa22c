"""Nonlinear and complexity descriptors.

  DET  = fraction of off-diagonal recurrence points lying on diagonal lines of
         length >= 2, for a delay embedding (m, tau) with Euclidean metric and
         threshold rqa_threshold_fraction * max pairwise distance; the main
         diagonal (self-recurrences) is excluded from both counts
  ACC  = lag-1 autocorrelation coefficient
  AE   = approximate entropy (m, r = entropy_r_fraction * std, Chebyshev,
         self-matches included)
  SE   = sample entropy (same m and r, self-matches excluded)
  LZC  = Lempel-Ziv phrase count of the median-binarized window, normalized
         by n / log2(n)
  FD   = Higuchi fractal dimension with k_max curve scales
  BE   = permutation entropy of ordinal patterns (pe_order, pe_delay),
         normalized by ln(order!) to [0, 1]
  WENT = -sum q ln q over normalized squared wavelet coefficients pooled from
         every detail level plus the approximation

Degenerate inputs (zero variance, all-recurrent embeddings, vanishing match
counts) store 0 and set the feature's quality flag.
"""
from __future__ import annotations

import math

import numpy as np

from .cache import SpectralCache
from .config import EngineConfig


def lz76_phrase_count(bits: np.ndarray) -> int:
    """Number of phrases in the Lempel-Ziv 1976 parsing of a binary sequence.

    Kaspar-Schuster scan: each phrase is the shortest extension of previously
    seen material (self-overlap allowed); an exhausted final phrase counts.
    """
    s = bytes(np.asarray(bits, dtype=np.uint8))
    n = len(s)
    if n <= 1:
        return n
    c = 0
    pos = 0
    while pos < n:
        k = 1
        # longest extension reproducible by copying from an earlier start
        # (self-overlap allowed); the phrase is that extension plus one symbol
        while pos + k < n:
            idx = s.find(s[pos:pos + k], 0, pos + k)
            if idx == -1 or idx >= pos:
                break
            k += 1
        c += 1
        pos += k
    return c


def _higuchi_fd(x: np.ndarray, k_max: int) -> float:
    n = len(x)
    ks = np.arange(1, k_max + 1)
    log_lk = np.empty(len(ks))
    for ki, k in enumerate(ks):
        lm = np.empty(k)
        for m in range(k):
            idx = np.arange(m, n, k)
            n_mk = len(idx) - 1
            if n_mk < 1:
                return 0.0
            dist = np.sum(np.abs(np.diff(x[idx])))
            lm[m] = dist * (n - 1) / (n_mk * k) / k
        mean_lm = np.mean(lm)
        if mean_lm <= 0:
            return 0.0
        log_lk[ki] = np.log(mean_lm)
    log_k = np.log(1.0 / ks)
    slope = np.polyfit(log_k, log_lk, 1)[0]
    return float(slope)


def _dfa_exponent(x: np.ndarray, scales: tuple[int, ...]) -> float:
    profile = np.cumsum(x - np.mean(x))
    n = len(profile)
    log_s = []
    log_f = []
    for s in scales:
        n_seg = n // s
        if n_seg < 2:
            continue
        segs = profile[:n_seg * s].reshape(n_seg, s)
        t = np.arange(s, dtype=np.float64)
        t_mean = t.mean()
        t_c = t - t_mean
        denom = np.sum(t_c * t_c)
        slopes = segs @ t_c / denom
        means = segs.mean(axis=1)
        resid = segs - (means[:, None] + slopes[:, None] * t_c[None, :])
        f2 = np.mean(resid * resid)
        if f2 <= 0:
            continue
        log_s.append(np.log(s))
        log_f.append(0.5 * np.log(f2))
    if len(log_s) < 2:
        return 0.0
    return float(np.polyfit(log_s, log_f, 1)[0])


def _permutation_entropy(x: np.ndarray, order: int, delay: int) -> float:
    n = len(x)
    n_patterns = n - (order - 1) * delay
    if n_patterns < 1:
        return 0.0
    emb = np.column_stack([x[i * delay:i * delay + n_patterns] for i in range(order)])
    ranks = np.argsort(emb, axis=1, kind="stable")
    base = np.arange(order) + 1
    codes = ranks @ (base ** np.arange(order))
    _, counts = np.unique(codes, return_counts=True)
    p = counts / n_patterns
    ent = -np.sum(p * np.log(p))
    return float(ent / np.log(math.factorial(order)))


def nonlinear_feature_values(x: np.ndarray, cache: SpectralCache,
                             cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    values: dict[str, float] = {}
    degenerate: set[str] = set()

    std = float(np.std(x))
    xc = x - np.mean(x)
    var_sum = float(np.sum(xc * xc))

    # ACC
    if var_sum > 0:
        values["ACC"] = float(np.sum(xc[:-1] * xc[1:]) / var_sum)
    else:
        values["ACC"] = 0.0
        degenerate.add("ACC")

    # shared pairwise-difference matrix feeds the entropy counts (as |diff|)
    # and the recurrence distances (squared in place afterwards)
    pairdiff = np.subtract(x[:, None], x[None, :])
    np.abs(pairdiff, out=pairdiff)

    m = cfg.entropy_m
    r = cfg.entropy_r_fraction * std
    within = pairdiff <= r
    cheb_m = within[:n - m + 1, :n - m + 1].copy()
    for k in range(1, m):
        cheb_m &= within[k:k + n - m + 1, k:k + n - m + 1]
    cheb_m1 = cheb_m[:n - m, :n - m] & within[m:, m:]

    # AE: self-matches included, template sets of full available length
    counts_m = np.count_nonzero(cheb_m, axis=1)
    counts_m1 = np.count_nonzero(cheb_m1, axis=1)
    phi_m = float(np.mean(np.log(counts_m / (n - m + 1))))
    phi_m1 = float(np.mean(np.log(counts_m1 / (n - m))))
    values["AE"] = phi_m - phi_m1

    # SE: both template lengths restricted to the n-m common range, i != j
    nm = n - m
    b_count = int(np.count_nonzero(cheb_m[:nm, :nm])) - nm
    a_count = int(np.count_nonzero(cheb_m1)) - nm
    if std <= 0 or b_count <= 0 or a_count <= 0:
        values["SE"] = 0.0
        degenerate.add("SE")
    else:
        values["SE"] = float(-np.log(a_count / b_count))

    # DET via the recurrence matrix of the (m, tau) embedding
    m_rqa, tau = cfg.rqa_embedding, cfg.rqa_delay
    n_vec = n - (m_rqa - 1) * tau
    if n_vec < 3:
        values["DET"] = 0.0
        degenerate.add("DET")
    else:
        np.multiply(pairdiff, pairdiff, out=pairdiff)
        d2 = pairdiff[:n_vec, :n_vec].copy()
        for k in range(1, m_rqa):
            d2 += pairdiff[k * tau:k * tau + n_vec, k * tau:k * tau + n_vec]
        eps2 = (cfg.rqa_threshold_fraction ** 2) * float(np.max(d2))
        if eps2 <= 0:
            values["DET"] = 0.0
            degenerate.add("DET")
        else:
            rec = d2 <= eps2
            np.fill_diagonal(rec, False)
            total_rec = int(np.count_nonzero(rec))
            if total_rec == 0:
                values["DET"] = 0.0
                degenerate.add("DET")
            else:
                neighbor = np.zeros_like(rec)
                neighbor[1:, 1:] |= rec[:-1, :-1]
                neighbor[:-1, :-1] |= rec[1:, 1:]
                on_lines = int(np.count_nonzero(rec & neighbor))
                values["DET"] = on_lines / total_rec

    # LZC on the median-binarized sequence
    bits = (x > np.median(x)).astype(np.uint8)
    phrases = lz76_phrase_count(bits)
    values["LZC"] = phrases * math.log2(n) / n if n > 1 else 0.0

    # Higuchi fractal dimension
    if std <= 0:
        values["FD"] = 0.0
        degenerate.add("FD")
    else:
        values["FD"] = _higuchi_fd(x, cfg.higuchi_kmax)

    # permutation entropy
    values["BE"] = _permutation_entropy(x, cfg.pe_order, cfg.pe_delay)

    # wavelet coefficient entropy pooled over all levels + approximation
    coeffs = np.concatenate([c for c in cache.dwt_details] + [cache.dwt_approx])
    sq = coeffs * coeffs
    total = float(np.sum(sq))
    if total > 0:
        q = sq[sq > 0] / total
        values["WENT"] = float(-np.sum(q * np.log(q)))
    else:
        values["WENT"] = 0.0
        degenerate.add("WENT")

    # DFA scaling exponent (auxiliary)
    if std <= 0:
        values["DFA"] = 0.0
        degenerate.add("DFA")
    else:
        values["DFA"] = _dfa_exponent(x, cfg.dfa_scales())

    return values, degenerate


def compute_nonlinear_features(window, cache: SpectralCache,
                               cfg: EngineConfig) -> tuple[dict[str, float], set[str]]:
    """Public wrapper accepting a WindowView."""
    return nonlinear_feature_values(window.data, cache, cfg)
