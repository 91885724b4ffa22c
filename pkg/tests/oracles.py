"""Independent naive reference implementations used to cross-check the engine.

Everything here is written directly from the documented feature definitions,
deliberately avoiding the engine's code paths: plain Python loops, cdist-based
distances, per-diagonal run extraction, exhaustive Lempel-Ziv parsing, and a
separate pure-loop wavelet transform.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial.distance import cdist

# --------------------------------------------------------------- time domain


def time_features(x, fs, zc_threshold=0.0, ssc_threshold=0.0,
                  wa_fraction=0.05, smooth_ms=50.0):
    x = [float(v) for v in x]
    n = len(x)
    iemg = sum(abs(v) for v in x)
    mav = iemg / n
    rms = math.sqrt(sum(v * v for v in x) / n)
    dasdv = math.sqrt(sum((x[i + 1] - x[i]) ** 2 for i in range(n - 1)) / (n - 1))
    mcv = sum(abs(x[i + 1] - x[i]) for i in range(n - 1)) / (n - 1)

    smooth_len = max(1, int(round(smooth_ms * 1e-3 * fs)))
    rect = [abs(v) for v in x]
    if smooth_len >= n:
        aemg = mav
    else:
        smoothed = []
        for i in range(n - smooth_len + 1):
            smoothed.append(sum(rect[i:i + smooth_len]) / smooth_len)
        aemg = sum(smoothed) / len(smoothed)

    zc = 0
    for i in range(n - 1):
        if x[i] * x[i + 1] < 0 and abs(x[i] - x[i + 1]) >= zc_threshold:
            zc += 1
    ssc = 0
    for i in range(1, n - 1):
        if (x[i] - x[i - 1]) * (x[i] - x[i + 1]) > ssc_threshold:
            ssc += 1
    peak = max(abs(v) for v in x)
    wa = 0
    for i in range(n - 1):
        if abs(x[i + 1] - x[i]) > wa_fraction * peak:
            wa += 1
    return {"AEMG": aemg, "iEMG": iemg, "RMS": rms, "MAV": mav, "MCV": mcv,
            "DASDV": dasdv, "ZC": float(zc), "SSC": float(ssc), "WA": float(wa)}


# ------------------------------------------------------------------ spectrum


def symmetric_hann(n):
    return np.array([0.5 * (1.0 - math.cos(2.0 * math.pi * k / (n - 1)))
                     for k in range(n)])


def frequency_features(freqs, psd, band_low=20.0, band_high=450.0):
    """Direct integration over a given PSD (independent of how it was built)."""
    df = freqs[1] - freqs[0]
    in_band = [(f, p) for f, p in zip(freqs, psd) if band_low <= f <= band_high]
    below = [p for f, p in zip(freqs, psd) if f < band_low]
    total = sum(p for _, p in in_band)
    out = {}
    out["TP"] = total * df
    if total <= 0:
        return out
    out["MPF"] = sum(f * p for f, p in in_band) / total
    amp_total = sum(math.sqrt(p) for _, p in in_band)
    out["MF"] = sum(f * math.sqrt(p) for f, p in in_band) / amp_total

    # median frequency with linear interpolation between bins
    half = total / 2.0
    acc = 0.0
    mdf = in_band[0][0]
    for i, (f, p) in enumerate(in_band):
        if acc + p >= half:
            if i == 0:
                mdf = f
            else:
                prev_f = in_band[i - 1][0]
                frac = (half - acc) / p
                mdf = prev_f + frac * (f - prev_f)
            break
        acc += p
    out["MDF"] = mdf

    probs = [p / total for _, p in in_band if p > 0]
    out["BSE"] = -sum(q * math.log(q) for q in probs) / math.log(len(in_band))
    below_power = sum(below)
    if below_power > 0:
        out["SMR"] = total / below_power
    m_neg1 = sum(p / f for f, p in in_band)
    m_2 = sum(f * f * p for f, p in in_band)
    if m_2 > 0:
        out["FSM2"] = m_neg1 / m_2
    peak_i = max(range(len(in_band)), key=lambda i: in_band[i][1])
    out["PKF"] = in_band[peak_i][0]
    return out


def frame_mpf_mdf(frame_freqs, frame_psds, band_low=20.0, band_high=450.0):
    mpfs, mdfs = [], []
    for psd in frame_psds:
        vals = frequency_features(frame_freqs, psd, band_low, band_high)
        if "MPF" in vals:
            mpfs.append(vals["MPF"])
            mdfs.append(vals["MDF"])
    return mpfs, mdfs


def tf_features(frame_freqs, frame_psds, band_low=20.0, band_high=450.0):
    e_low = sum(p for psd in frame_psds
                for f, p in zip(frame_freqs, psd) if 20.0 <= f <= 80.0)
    e_high = sum(p for psd in frame_psds
                 for f, p in zip(frame_freqs, psd) if 150.0 <= f <= 450.0)
    out = {}
    if e_high > 0:
        out["ERHL"] = e_low / e_high
    mpfs, mdfs = frame_mpf_mdf(frame_freqs, frame_psds, band_low, band_high)
    if mpfs:
        out["IMNF"] = sum(1.0 / v for v in mpfs) / len(mpfs)
        out["IMFB"] = sum(1.0 / v for v in mdfs) / len(mdfs)
        out["IMPF"] = sum(mpfs) / len(mpfs)
        out["IMF"] = sum(mdfs) / len(mdfs)
    return out


# ----------------------------------------------------------------- wavelets

DB4 = [0.2303778133088965, 0.7148465705529157, 0.6308807679298589,
       -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
       0.0328830116668852, -0.010597401785069032]


def _oracle_dwt_level(x):
    """One analysis level by explicit loops: symmetric pad, correlate, downsample."""
    L = len(DB4)
    rec_lo = list(DB4)
    rec_hi = [(-1) ** k * DB4[L - 1 - k] for k in range(L)]
    dec_lo = rec_lo[::-1]
    dec_hi = rec_hi[::-1]
    pad = L - 1
    ext = _sym_pad(list(x), pad)
    full_len = len(ext) + L - 1
    conv_lo = [0.0] * full_len
    conv_hi = [0.0] * full_len
    for i, v in enumerate(ext):
        for j in range(L):
            conv_lo[i + j] += v * dec_lo[j]
            conv_hi[i + j] += v * dec_hi[j]
    return conv_lo[1::2], conv_hi[1::2]


def _sym_pad(x, pad):
    left = x[:pad][::-1]
    right = x[-pad:][::-1]
    return left + x + right


def oracle_wavedec(x, levels):
    details = []
    a = list(np.asarray(x, dtype=float))
    for _ in range(levels):
        a, d = _oracle_dwt_level(a)
        details.append(d)
    return details, a


def _oracle_idwt_level(a, d, out_len):
    L = len(DB4)
    rec_lo = list(DB4)
    rec_hi = [(-1) ** k * DB4[L - 1 - k] for k in range(L)]
    up_len = 2 * len(a)
    full = [0.0] * (up_len + L - 1)
    for i, v in enumerate(a):
        for j in range(L):
            full[2 * i + j] += v * rec_lo[j]
    for i, v in enumerate(d):
        for j in range(L):
            full[2 * i + j] += v * rec_hi[j]
    crop = 2 * (L - 1) - 1
    return full[crop:crop + out_len]


def oracle_reconstruct_detail(x, level, levels=5):
    """Signal contribution of one detail band, synthesized by explicit loops."""
    lengths = []
    a = list(np.asarray(x, dtype=float))
    details = []
    for _ in range(levels):
        lengths.append(len(a))
        a, d = _oracle_dwt_level(a)
        details.append(d)
    bands = [list(np.zeros(len(d))) for d in details]
    bands[level - 1] = details[level - 1]
    rec = list(np.zeros(len(a)))
    for j in range(levels - 1, -1, -1):
        rec = _oracle_idwt_level(rec, bands[j], lengths[j])
    return rec


def wirw51(x, levels=5):
    rec5 = oracle_reconstruct_detail(x, 5, levels)
    rec1 = oracle_reconstruct_detail(x, 1, levels)
    wl5 = sum(abs(rec5[i + 1] - rec5[i]) for i in range(len(rec5) - 1))
    wl1 = sum(abs(rec1[i + 1] - rec1[i]) for i in range(len(rec1) - 1))
    if wl1 <= 0:
        return None
    return wl5 / wl1


def wavelet_features(x, levels=5):
    details, approx = oracle_wavedec(x, levels)
    energies = [sum(c * c for c in d) for d in details]
    e_a = sum(c * c for c in approx)
    out = {}
    if energies[0] > 0:
        out["WIRE51"] = energies[4] / energies[0]
    abs1 = sum(abs(c) for c in details[0])
    abs5 = sum(abs(c) for c in details[4])
    if abs1 > 0:
        out["WIRM1551"] = abs5 / abs1
    if energies[1] > 0:
        out["WIRM1522"] = math.sqrt(energies[4]) / math.sqrt(energies[1])
    total = sum(energies) + e_a
    if total > 0:
        ps = [e / total for e in energies + [e_a] if e > 0]
        out["WEE"] = -sum(p * math.log(p) for p in ps)
    return out


def went_entropy(x, levels=5):
    details, approx = oracle_wavedec(x, levels)
    coeffs = [c for d in details for c in d] + list(approx)
    total = sum(c * c for c in coeffs)
    if total <= 0:
        return 0.0
    qs = [c * c / total for c in coeffs if c * c > 0]
    return -sum(q * math.log(q) for q in qs)


# ---------------------------------------------------------------- nonlinear


def _embed(x, m, delay=1):
    n = len(x)
    count = n - (m - 1) * delay
    return np.array([[x[i + k * delay] for k in range(m)] for i in range(count)])


def approximate_entropy(x, m=2, r_fraction=0.2):
    x = np.asarray(x, dtype=float)
    n = len(x)
    r = r_fraction * float(np.std(x))

    def phi(mm):
        emb = _embed(x, mm)
        dists = cdist(emb, emb, metric="chebyshev")
        counts = (dists <= r).sum(axis=1)
        return np.mean(np.log(counts / len(emb)))

    return float(phi(m) - phi(m + 1))


def sample_entropy(x, m=2, r_fraction=0.2):
    x = np.asarray(x, dtype=float)
    n = len(x)
    r = r_fraction * float(np.std(x))
    emb_m = _embed(x, m)[:n - m]
    emb_m1 = _embed(x, m + 1)
    d_m = cdist(emb_m, emb_m, metric="chebyshev")
    d_m1 = cdist(emb_m1, emb_m1, metric="chebyshev")
    b = int((d_m <= r).sum()) - len(emb_m)
    a = int((d_m1 <= r).sum()) - len(emb_m1)
    if a <= 0 or b <= 0:
        return None
    return float(-math.log(a / b))


def determinism(x, m=3, delay=2, threshold_fraction=0.10, min_line=2):
    emb = _embed(np.asarray(x, dtype=float), m, delay)
    dists = cdist(emb, emb, metric="euclidean")
    eps = threshold_fraction * float(dists.max())
    if eps <= 0:
        return None
    rec = dists <= eps
    np.fill_diagonal(rec, False)
    total = int(rec.sum())
    if total == 0:
        return None
    nv = rec.shape[0]
    in_lines = 0
    for offset in range(-(nv - 1), nv):
        if offset == 0:
            continue
        diag = np.diag(rec, k=offset)
        run = 0
        for v in diag:
            if v:
                run += 1
            else:
                if run >= min_line:
                    in_lines += run
                run = 0
        if run >= min_line:
            in_lines += run
    return in_lines / total


def lz76_exhaustive(bits):
    s = list(int(b) for b in bits)
    n = len(s)
    if n <= 1:
        return n
    c = 0
    pos = 0
    while pos < n:
        k = 0
        while pos + k < n:
            sub = s[pos:pos + k + 1]
            found = False
            for start in range(pos):
                if s[start:start + len(sub)] == sub:
                    found = True
                    break
            if found:
                k += 1
            else:
                break
        c += 1
        pos += k + 1
    return c


def lz76_string(bits):
    """Same parse via substring containment: an extension of length k is
    reproducible iff it occurs within the first pos+k-1 symbols."""
    s = "".join(str(int(b)) for b in bits)
    n = len(s)
    if n <= 1:
        return n
    c = 0
    pos = 0
    while pos < n:
        k = 1
        while pos + k < n and s[pos:pos + k] in s[:pos + k - 1]:
            k += 1
        c += 1
        pos += k
    return c


def higuchi_fd(x, k_max=8):
    x = [float(v) for v in x]
    n = len(x)
    log_k, log_l = [], []
    for k in range(1, k_max + 1):
        lms = []
        for m in range(k):
            idxs = list(range(m, n, k))
            n_mk = len(idxs) - 1
            if n_mk < 1:
                return None
            dist = sum(abs(x[idxs[i + 1]] - x[idxs[i]]) for i in range(n_mk))
            lms.append(dist * (n - 1) / (n_mk * k) / k)
        log_k.append(math.log(1.0 / k))
        log_l.append(math.log(sum(lms) / len(lms)))
    slope = np.polyfit(log_k, log_l, 1)[0]
    return float(slope)


def dfa_exponent(x, scales):
    x = np.asarray(x, dtype=float)
    profile = np.cumsum(x - x.mean())
    n = len(profile)
    pts = []
    for s in scales:
        n_seg = n // s
        if n_seg < 2:
            continue
        sq = []
        for seg in range(n_seg):
            segment = profile[seg * s:(seg + 1) * s]
            t = np.arange(s, dtype=float)
            coef = np.polyfit(t, segment, 1)
            resid = segment - np.polyval(coef, t)
            sq.extend(resid ** 2)
        f = math.sqrt(sum(sq) / len(sq))
        if f > 0:
            pts.append((math.log(s), math.log(f)))
    if len(pts) < 2:
        return None
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return float(np.polyfit(xs, ys, 1)[0])


def permutation_entropy(x, order=3, delay=1):
    x = list(x)
    n = len(x)
    counts: dict[tuple, int] = {}
    total = 0
    for i in range(n - (order - 1) * delay):
        window = [x[i + k * delay] for k in range(order)]
        pattern = tuple(sorted(range(order), key=lambda k: (window[k], k)))
        counts[pattern] = counts.get(pattern, 0) + 1
        total += 1
    ps = [c / total for c in counts.values()]
    ent = -sum(p * math.log(p) for p in ps)
    return ent / math.log(math.factorial(order))


def lag1_autocorr(x):
    x = [float(v) for v in x]
    n = len(x)
    mean = sum(x) / n
    denom = sum((v - mean) ** 2 for v in x)
    if denom <= 0:
        return None
    num = sum((x[i] - mean) * (x[i + 1] - mean) for i in range(n - 1))
    return num / denom


# --------------------------------------------------------------- statistics


def ols_fit(y, x=None):
    """Closed-form normal-equations OLS with a quadrature-based p-value."""
    y = [float(v) for v in y]
    n = len(y)
    x = list(range(n)) if x is None else [float(v) for v in x]
    sx = sum(x)
    sy = sum(y)
    sxx = sum(v * v for v in x)
    sxy = sum(a * b for a, b in zip(x, y))
    denom = n * sxx - sx * sx
    slope = (n * sxy - sx * sy) / denom
    intercept = (sy - slope * sx) / n
    resid = [yi - (intercept + slope * xi) for xi, yi in zip(x, y)]
    rss = sum(r * r for r in resid)
    sxx_c = sxx - sx * sx / n
    if rss <= 0:
        return slope, intercept, 0.0
    se = math.sqrt(rss / (n - 2) / sxx_c)
    t = slope / se
    p = 2.0 * _t_tail(abs(t), n - 2)
    return slope, intercept, p


def _t_tail(t, dof):
    """Upper-tail probability of Student's t via the regularized incomplete
    beta identity, evaluated in 50-digit arithmetic."""
    from mpmath import mp, mpf, betainc

    mp.dps = 50
    x = mpf(dof) / (mpf(dof) + mpf(t) ** 2)
    return float(0.5 * betainc(mpf(dof) / 2, mpf("0.5"), 0, x,
                               regularized=True))


def pearson_r(x, y):
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    num = sum((a - mx) * (b - my) for a, b in zip(x, y))
    dx = math.sqrt(sum((a - mx) ** 2 for a in x))
    dy = math.sqrt(sum((b - my) ** 2 for b in y))
    return num / (dx * dy)
