"""Pure-numpy implementations of the hot kernels.

Used when the compiled extension is unavailable. Same contracts as
``_core``; results may differ from the compiled path only in final-ulp
rounding (different summation order), never beyond solver/search tolerances.
"""

from __future__ import annotations

import numpy as np


def acf_pitch_search(frames: np.ndarray, lag_min: int, lag_max: int):
    """Exhaustive normalized-autocorrelation search per frame.

    For each frame x of length L and each lag l in [lag_min, lag_max]:
        r(l) = sum(x[:L-l] * x[l:]) / sqrt(sum(x[:L-l]**2) * sum(x[l:]**2))
    with r(l) = 0 when either energy term vanishes.

    Returns (best_lag int64[n], best_r float64[n]); ties resolve to the
    smallest lag.
    """
    frames = np.ascontiguousarray(frames, dtype=np.float64)
    n, L = frames.shape
    if not (0 < lag_min <= lag_max < L):
        raise ValueError(f"lag range [{lag_min}, {lag_max}] invalid for frame length {L}")
    n_lags = lag_max - lag_min + 1
    r = np.zeros((n, n_lags))
    for j in range(n_lags):
        lag = lag_min + j
        a = frames[:, : L - lag]
        b = frames[:, lag:]
        num = np.einsum("ij,ij->i", a, b)
        den = np.sqrt(np.einsum("ij,ij->i", a, a) * np.einsum("ij,ij->i", b, b))
        np.divide(num, den, out=r[:, j], where=den > 0.0)
    best = np.argmax(r, axis=1)
    best_r = r[np.arange(n), best]
    return (best + lag_min).astype(np.int64), best_r


def svc_epoch(X, y, qii, alpha, w, order, c) -> float:
    """One dual-coordinate-descent epoch for L1-loss SVC.

    Dual: min 0.5 a'Qa - e'a, 0 <= a_i <= c, Q_ij = y_i y_j x_i.x_j.
    Maintains w = sum_i a_i y_i x_i in place. Returns the max absolute
    projected gradient seen this epoch.
    """
    max_viol = 0.0
    for i in order:
        xi = X[i]
        g = y[i] * float(np.dot(w, xi)) - 1.0
        a = alpha[i]
        if a <= 0.0:
            pg = min(g, 0.0)
        elif a >= c:
            pg = max(g, 0.0)
        else:
            pg = g
        v = abs(pg)
        if v > max_viol:
            max_viol = v
        if v > 1e-12:
            a_new = min(max(a - g / qii[i], 0.0), c)
            alpha[i] = a_new
            w += (a_new - a) * y[i] * xi
    return max_viol


def svr_epoch(X, y, qii, beta, w, order, c, epsilon) -> float:
    """One dual-coordinate-descent epoch for L1-loss (epsilon-insensitive) SVR.

    Dual variables beta_i in [-c, c]; objective
    0.5 b'Kb - y'b + epsilon*sum|b_i|, K_ij = x_i.x_j, w = sum_i b_i x_i.
    Coordinate minimizer is a soft-threshold step clipped to the box.
    """
    max_viol = 0.0
    for i in order:
        xi = X[i]
        g = float(np.dot(w, xi)) - y[i]
        gp = g + epsilon
        gn = g - epsilon
        b = beta[i]
        if b <= -c:
            pg = min(gn, 0.0)
        elif b >= c:
            pg = max(gp, 0.0)
        elif b < 0.0:
            pg = gn
        elif b > 0.0:
            pg = gp
        else:
            pg = gp if gp < 0.0 else (gn if gn > 0.0 else 0.0)
        v = abs(pg)
        if v > max_viol:
            max_viol = v
        if v > 1e-12:
            z1 = b - gp / qii[i]
            z2 = b - gn / qii[i]
            z = z1 if z1 > 0.0 else (z2 if z2 < 0.0 else 0.0)
            z = min(max(z, -c), c)
            beta[i] = z
            w += (z - b) * xi
    return max_viol
