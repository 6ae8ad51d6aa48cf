# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Mirrors ``_fallback`` operation for operation.

Floating-point steps are written in the same order as the numpy fallback so
both backends return bit-identical results (the build disables FMA
contraction).
"""

import math

import numpy as np

cimport cython
from cython.parallel cimport prange
from libc.math cimport fabs
from libc.stdint cimport int64_t

# Per-block partials for exact summation. Partials are non-overlapping, so the
# count stays tiny for the bounded-exponent terms summed here.
cdef enum:
    MAXP = 128


cdef inline int _msum_add(double* partials, int count, double x) noexcept nogil:
    """Shewchuk accumulation of x into partials; returns the new count or -1."""
    cdef int i = 0, j
    cdef double y, hi, lo, t
    for j in range(count):
        y = partials[j]
        if fabs(x) < fabs(y):
            t = x
            x = y
            y = t
        hi = x + y
        lo = y - (hi - x)
        if lo != 0.0:
            partials[i] = lo
            i += 1
        x = hi
    if i >= MAXP:
        return -1
    partials[i] = x
    return i + 1


def t_values(int64_t n, kappas, int threads=1):
    """T_N(kappa) for each kappa, Kahan-summed in q order."""
    cdef int nt = max(threads, 1)
    cdef int64_t[::1] ks = np.ascontiguousarray(kappas, dtype=np.int64)
    cdef Py_ssize_t m = ks.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    cdef int64_t half = (n - 1) // 2
    cdef Py_ssize_t i
    cdef int64_t q, r, kappa, a
    cdef double s, c, y, t, term
    for i in prange(m, nogil=True, num_threads=nt, schedule="static"):
        kappa = ks[i]
        r = 0
        s = 0.0
        c = 0.0
        for q in range(1, half + 1):
            r = r + kappa
            if r > half:
                r = r - n
            a = r if r >= 0 else -r
            term = 1.0 / <double>(q * a)
            y = term - c
            t = s + y
            c = (t - s) - y
            s = t
        res[i] = s
    return out


def j_numerators(int64_t n, int threads=1):
    """Integer sums sum_z (2(kz mod N) - N)(2z - N) for k = 0..N-1."""
    cdef int nt = max(threads, 1)
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef int64_t k, z, a, acc
    for k in prange(n, nogil=True, num_threads=nt, schedule="static"):
        acc = 0
        a = 0
        for z in range(1, n):
            a = a + k
            if a >= n:
                a = a - n
            acc = acc + (2 * a - n) * (2 * z - n)
        res[k] = acc
    return out


def wce_product_sum(int64_t n, z, gamma, int threads=1):
    """Exactly rounded sum over all pairs (k, k') of K(t_k, t_k') - 1.

    Product weights. Rows are grouped in fixed blocks whose exact partials are
    merged with ``math.fsum``, so the result does not depend on ``threads``.
    """
    cdef int nt = max(threads, 1)
    cdef int64_t[::1] zz = np.ascontiguousarray(z, dtype=np.int64)
    cdef double[::1] gg = np.ascontiguousarray(gamma, dtype=np.float64)
    cdef Py_ssize_t s = zz.shape[0]
    cdef Py_ssize_t nblocks = min(n, 256)
    parts_arr = np.zeros((nblocks, MAXP), dtype=np.float64)
    counts_arr = np.zeros(nblocks, dtype=np.int32)
    cdef double[:, ::1] parts = parts_arr
    cdef int[::1] counts = counts_arr
    cdef double den = 12.0 * <double>n * <double>n
    cdef Py_ssize_t b, j
    cdef int64_t k, kp, lo_k, hi_k, a, bb, d, num
    cdef double q, x
    cdef int cnt
    for b in prange(nblocks, nogil=True, num_threads=nt, schedule="dynamic"):
        lo_k = (b * n) // nblocks
        hi_k = ((b + 1) * n) // nblocks
        cnt = 0
        for k in range(lo_k, hi_k):
            for kp in range(k, n):
                q = 0.0
                for j in range(s):
                    a = (k * zz[j]) % n
                    bb = (kp * zz[j]) % n
                    d = a - bb if a >= bb else bb - a
                    num = 6 * d * d - 6 * d * n + n * n + 3 * (2 * a - n) * (2 * bb - n)
                    x = gg[j] * (<double>num / den)
                    q = q * (1.0 + x) + x
                if kp != k:
                    q = 2.0 * q
                if cnt >= 0:
                    cnt = _msum_add(&parts[b, 0], cnt, q)
        counts[b] = cnt
    if (counts_arr < 0).any():
        raise OverflowError("exact summation buffer exhausted")
    return math.fsum(
        v for b in range(nblocks) for v in parts_arr[b, : counts_arr[b]].tolist()
    )
