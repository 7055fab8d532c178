"""Compiled inner loops for the sampler's likelihood evaluations."""

import math

import numpy as np
from numba import njit, vectorize

_LOG_2PI = math.log(2.0 * math.pi)
_SQRT1_2 = math.sqrt(0.5)


@njit(cache=True)
def log_ndtr(z):
    """log of the standard normal CDF, accurate far into both tails."""
    if z > 0.0:
        return math.log1p(-0.5 * math.erfc(z * _SQRT1_2))
    if z > -20.0:
        return math.log(0.5 * math.erfc(-z * _SQRT1_2))
    # asymptotic expansion of the Mills ratio; relative error < 1e-11 here
    w = 1.0 / (z * z)
    series = 1.0 - w * (1.0 - 3.0 * w * (1.0 - 5.0 * w * (1.0 - 7.0 * w * (1.0 - 9.0 * w))))
    return -0.5 * z * z - math.log(-z) - 0.5 * _LOG_2PI + math.log(series)


@njit(cache=True)
def fw_rows(m2, sigma2, nmax, shift, s2):
    """Fill ``shift[c, 1:nmax+1]`` and ``s2[c, 1:nmax+1]`` for every ``m2[c]``."""
    var = np.empty(nmax)
    pw = np.empty(nmax)
    log2 = math.log(2.0)
    for c in range(m2.size):
        a = m2[c]
        acc = 0.0
        p = 1.0
        for j in range(nmax):
            acc += p
            var[j] = sigma2 * acc
            p *= a * a
        p = 1.0
        for d in range(nmax):
            pw[d] = p
            p *= a
        le1 = -math.inf
        le2 = -math.inf
        for n in range(nmax):
            vn = var[n]
            h = 0.5 * vn
            le1 = h if le1 == -math.inf else max(le1, h) + math.log1p(math.exp(-abs(le1 - h)))
            top = 2.0 * vn
            for k in range(n):
                t = 0.5 * (vn + var[k]) + pw[n - k] * var[k] + log2
                if t > top:
                    top = t
            total = math.exp(2.0 * vn - top)
            for k in range(n):
                total += math.exp(0.5 * (vn + var[k]) + pw[n - k] * var[k] + log2 - top)
            row = top + math.log(total)
            le2 = row if le2 == -math.inf else max(le2, row) + math.log1p(math.exp(-abs(le2 - row)))
            if n == 0:
                s = var[0]
                sh = 0.0
            else:
                s = le2 - 2.0 * le1
                if s < 0.0:
                    s = 0.0
                sh = le1 - 0.5 * s
            shift[c, n + 1] = sh
            s2[c, n + 1] = s


@vectorize(["float64(float64, float64, float64, float64, float64, float64, float64, float64,"
            " float64, float64, float64, float64, float64, float64, float64)"], cache=True)
def loglik(N, log_s, y1, a_cur, b_cur, a_prev, b_prev, cross,
           mu, mu_s, m2, shift, s2, sigma2, eta2):
    surv = -log_s - 0.5 * (_LOG_2PI + math.log(eta2)) - 0.5 * (log_s - mu_s) ** 2 / eta2
    if N <= 0.0:
        return surv
    nm1 = N - 1.0
    mu_sq = mu * mu
    quad = ((y1 - mu) ** 2
            + (a_cur - 2.0 * mu * b_cur + nm1 * mu_sq)
            - 2.0 * m2 * (cross - mu * (b_cur + b_prev) + nm1 * mu_sq)
            + m2 * m2 * (a_prev - 2.0 * mu * b_prev + nm1 * mu_sq))
    gap = -0.5 * N * (_LOG_2PI + math.log(sigma2)) - 0.5 * quad / sigma2
    out = gap + surv - log_ndtr((mu_s - mu - shift) / math.sqrt(s2 + eta2))
    if math.isnan(out):
        return -math.inf
    return out
