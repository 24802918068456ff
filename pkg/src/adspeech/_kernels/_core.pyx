# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: autocorrelation pitch search and the dual
coordinate descent epochs for linear SVC/SVR.

Mirrors adspeech._kernels.fallback; see that module for the contracts.
"""

import numpy as np

from libc.math cimport fabs, sqrt


def acf_pitch_search(double[:, ::1] frames, int lag_min, int lag_max):
    cdef Py_ssize_t n = frames.shape[0]
    cdef Py_ssize_t L = frames.shape[1]
    if not (0 < lag_min <= lag_max < L):
        raise ValueError(
            f"lag range [{lag_min}, {lag_max}] invalid for frame length {L}"
        )
    best_lag_arr = np.zeros(n, dtype=np.int64)
    best_r_arr = np.zeros(n, dtype=np.float64)
    cdef long long[::1] best_lag = best_lag_arr
    cdef double[::1] best_r = best_r_arr
    cdef Py_ssize_t i, k
    cdef int lag, bl
    cdef double num, e1, e2, r, br
    for i in range(n):
        br = -2.0
        bl = lag_min
        for lag in range(lag_min, lag_max + 1):
            num = 0.0
            e1 = 0.0
            e2 = 0.0
            for k in range(L - lag):
                num += frames[i, k] * frames[i, k + lag]
                e1 += frames[i, k] * frames[i, k]
                e2 += frames[i, k + lag] * frames[i, k + lag]
            if e1 > 0.0 and e2 > 0.0:
                r = num / sqrt(e1 * e2)
            else:
                r = 0.0
            if r > br:
                br = r
                bl = lag
        best_lag[i] = bl
        best_r[i] = br
    return best_lag_arr, best_r_arr


def svc_epoch(double[:, ::1] X, double[::1] y, double[::1] qii,
              double[::1] alpha, double[::1] w, long long[::1] order,
              double c):
    cdef Py_ssize_t n = order.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t t, j
    cdef Py_ssize_t i
    cdef double g, pg, a, a_new, step, max_viol = 0.0
    for t in range(n):
        i = <Py_ssize_t>order[t]
        g = 0.0
        for j in range(d):
            g += w[j] * X[i, j]
        g = y[i] * g - 1.0
        a = alpha[i]
        if a <= 0.0:
            pg = g if g < 0.0 else 0.0
        elif a >= c:
            pg = g if g > 0.0 else 0.0
        else:
            pg = g
        if fabs(pg) > max_viol:
            max_viol = fabs(pg)
        if fabs(pg) > 1e-12:
            a_new = a - g / qii[i]
            if a_new < 0.0:
                a_new = 0.0
            elif a_new > c:
                a_new = c
            alpha[i] = a_new
            step = (a_new - a) * y[i]
            for j in range(d):
                w[j] += step * X[i, j]
    return max_viol


def svr_epoch(double[:, ::1] X, double[::1] y, double[::1] qii,
              double[::1] beta, double[::1] w, long long[::1] order,
              double c, double epsilon):
    cdef Py_ssize_t n = order.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t t, j
    cdef Py_ssize_t i
    cdef double g, gp, gn, pg, b, z, z1, z2, max_viol = 0.0
    for t in range(n):
        i = <Py_ssize_t>order[t]
        g = 0.0
        for j in range(d):
            g += w[j] * X[i, j]
        g -= y[i]
        gp = g + epsilon
        gn = g - epsilon
        b = beta[i]
        if b <= -c:
            pg = gn if gn < 0.0 else 0.0
        elif b >= c:
            pg = gp if gp > 0.0 else 0.0
        elif b < 0.0:
            pg = gn
        elif b > 0.0:
            pg = gp
        else:
            pg = gp if gp < 0.0 else (gn if gn > 0.0 else 0.0)
        if fabs(pg) > max_viol:
            max_viol = fabs(pg)
        if fabs(pg) > 1e-12:
            z1 = b - gp / qii[i]
            z2 = b - gn / qii[i]
            z = z1 if z1 > 0.0 else (z2 if z2 < 0.0 else 0.0)
            if z < -c:
                z = -c
            elif z > c:
                z = c
            beta[i] = z
            for j in range(d):
                w[j] += (z - b) * X[i, j]
    return max_viol
