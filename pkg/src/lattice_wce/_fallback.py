"""Pure-Python (numpy) versions of the compiled kernels in ``_kernels.pyx``.

Same signatures, same floating-point operation order, bit-identical results.
Parallelism here is a thread pool over independent slots; numpy releases the
GIL inside the vector operations.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def _chunks(m: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, m))
    return [(i * m // parts, (i + 1) * m // parts) for i in range(parts)]


def _t_block(n: int, kappas: np.ndarray) -> np.ndarray:
    half = (n - 1) // 2
    r = np.zeros(kappas.shape, dtype=np.int64)
    s = np.zeros(kappas.shape, dtype=np.float64)
    c = np.zeros(kappas.shape, dtype=np.float64)
    for q in range(1, half + 1):
        r += kappas
        r[r > half] -= n
        term = 1.0 / (q * np.abs(r)).astype(np.float64)
        y = term - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


def t_values(n: int, kappas, threads: int = 1) -> np.ndarray:
    ks = np.ascontiguousarray(kappas, dtype=np.int64)
    out = np.empty(ks.shape[0], dtype=np.float64)
    if ks.shape[0] == 0:
        return out
    spans = _chunks(ks.shape[0], threads)
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        blocks = pool.map(lambda sp: (sp, _t_block(n, ks[sp[0]:sp[1]])), spans)
        for (lo, hi), vals in blocks:
            out[lo:hi] = vals
    return out


def j_numerators(n: int, threads: int = 1) -> np.ndarray:
    z = np.arange(1, n, dtype=np.int64)
    weight = 2 * z - n
    out = np.empty(n, dtype=np.int64)
    for k in range(n):
        out[k] = int(np.dot(2 * (k * z % n) - n, weight))
    return out


def _wce_row_terms(n: int, z: np.ndarray, gamma: np.ndarray, k: int) -> np.ndarray:
    kp = np.arange(k, n, dtype=np.int64)
    den = 12.0 * float(n) * float(n)
    q = np.zeros(kp.shape[0], dtype=np.float64)
    for j in range(z.shape[0]):
        a = (k * int(z[j])) % n
        b = (kp * z[j]) % n
        d = np.abs(a - b)
        num = 6 * d * d - 6 * d * n + n * n + 3 * (2 * a - n) * (2 * b - n)
        x = gamma[j] * (num.astype(np.float64) / den)
        q = q * (1.0 + x) + x
    q[1:] = 2.0 * q[1:]
    return q


def wce_product_sum(n: int, z, gamma, threads: int = 1) -> float:
    zz = np.ascontiguousarray(z, dtype=np.int64)
    gg = np.ascontiguousarray(gamma, dtype=np.float64)
    rows = (_wce_row_terms(n, zz, gg, k).tolist() for k in range(n))
    return math.fsum(itertools.chain.from_iterable(rows))
