"""Worst-case error of unshifted rank-one lattice rules.

Two routes to the squared worst-case error e^2(N, z):

* :func:`wce_squared_pairwise` sums the reproducing kernel over all point
  pairs and subtracts the constant 1 term by term.
* :func:`wce_squared_subset` evaluates each subset contribution e^2_u with
  the difference form B_2({(k - k') z_j / N}) and combines them with the
  weights.

Pair sums are exactly rounded (``math.fsum`` or the compiled equivalent), so
results do not depend on summation order or thread count.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _backend
from .core import GeneratingVector, RationalPoint, bernoulli2, eta, frac, lattice_numerators
from .errors import DimensionMismatch, DimensionTooLarge, SizeGuard
from .weights import MAX_SUBSET_DIM, WeightScheme, subsets

PAIRWISE_HARD_LIMIT = 100_000
PAIRWISE_WARN_LIMIT = 20_000

# Row chunks for the numpy paths hold at most this many pair entries.
_CHUNK_ENTRIES = 1 << 22


@dataclass(frozen=True)
class WceReport:
    n: int
    z: GeneratingVector
    e2: float
    per_subset: dict[frozenset, float] | None = None

    def to_dict(self) -> dict:
        out = {"n": self.n, "s": self.z.s, "z": list(self.z.z), "e2": self.e2}
        if self.per_subset is not None:
            out["per_subset"] = {
                ",".join(map(str, sorted(u))): v for u, v in self.per_subset.items()
            }
        return out


def _coords(x) -> tuple:
    if isinstance(x, RationalPoint):
        return x.as_fractions()
    return tuple(x)


def kernel_value(x, y, w: WeightScheme) -> float:
    """K_{s,gamma}(x, y) for points given as RationalPoint or real sequences."""
    xs, ys = _coords(x), _coords(y)
    if len(xs) != len(ys) or len(xs) != w.s:
        raise DimensionMismatch(
            f"point dimensions {len(xs)}, {len(ys)} do not match weight dimension {w.s}"
        )
    etas = [float(eta(a, b)) for a, b in zip(xs, ys)]
    if w.kind == "product":
        return math.prod(1.0 + g * e for g, e in zip(w.product_weights, etas))
    total = [1.0]
    for u, g in w.explicit_weights.items():
        total.append(g * math.prod(etas[j - 1] for j in u))
    return math.fsum(total)


def _check_pairwise_size(n: int, override: bool) -> None:
    if n > PAIRWISE_HARD_LIMIT and not override:
        raise SizeGuard(
            f"pairwise error for N = {n} exceeds the limit {PAIRWISE_HARD_LIMIT}"
        )
    if n > PAIRWISE_WARN_LIMIT:
        warnings.warn(f"pairwise error for N = {n} costs O(s N^2) work", stacklevel=3)


def _row_chunks(n: int):
    rows = max(1, _CHUNK_ENTRIES // n)
    for lo in range(0, n, rows):
        yield lo, min(n, lo + rows)


def _explicit_pair_terms(nums: np.ndarray, n: int, w: WeightScheme):
    """Yield per-row lists of K - 1 over k' >= k, off-diagonal entries doubled."""
    den = 12.0 * n * n
    weighted = [(sorted(u), g) for u, g in w.explicit_weights.items() if g != 0.0]
    for k in range(n):
        a = nums[k]
        b = nums[k:]
        d = np.abs(a[None, :] - b)
        num = 6 * d * d - 6 * d * n + n * n + 3 * (2 * a[None, :] - n) * (2 * b - n)
        etas = num.astype(np.float64) / den
        terms = np.zeros(b.shape[0], dtype=np.float64)
        for u, g in weighted:
            p = np.full(b.shape[0], g)
            for j in u:
                p = p * etas[:, j - 1]
            terms = terms + p
        terms[1:] = 2.0 * terms[1:]
        yield terms.tolist()


def wce_squared_pairwise(
    z: GeneratingVector,
    w: WeightScheme,
    threads: int | None = None,
    override_size_guard: bool = False,
) -> WceReport:
    """e^2(N, z) = N^-2 sum_{k,k'} K(t_k, t_k') - 1, via the kernel double sum."""
    if z.s != w.s:
        raise DimensionMismatch(f"z has {z.s} components but weights have s = {w.s}")
    n = z.n
    _check_pairwise_size(n, override_size_guard)
    threads = threads or _backend.default_threads()
    if w.kind == "product":
        total = _backend.kernels.wce_product_sum(
            n, z.as_array(), np.asarray(w.product_weights, dtype=np.float64), threads
        )
    else:
        nums = lattice_numerators(z)
        total = math.fsum(itertools.chain.from_iterable(_explicit_pair_terms(nums, n, w)))
    return WceReport(n=n, z=z, e2=total / (n * n))


def _bracket_rows(nums: np.ndarray, zj: int, n: int, j: int, lo: int, hi: int) -> np.ndarray:
    """Rows lo..hi of the per-coordinate factor in the difference form.

    Entry (k, k') is B_2({(k-k') z_j / N}) / 2 + (a - 1/2)(b - 1/2), computed
    from its exact integer numerator over 12 N^2.
    """
    k = np.arange(lo, hi, dtype=np.int64)[:, None]
    kp = np.arange(n, dtype=np.int64)[None, :]
    d = ((k - kp) * zj) % n
    a = nums[lo:hi, j][:, None]
    b = nums[:, j][None, :]
    num = 6 * d * d - 6 * d * n + n * n + 3 * (2 * a - n) * (2 * b - n)
    return num.astype(np.float64) / (12.0 * n * n)


def eu2_values(z: GeneratingVector, subset_list: Sequence[frozenset]) -> dict[frozenset, float]:
    """e^2_u(N, z_u) for each requested nonempty subset u."""
    n = z.n
    nums = lattice_numerators(z)
    dims = sorted(set().union(*subset_list)) if subset_list else []
    acc: dict[frozenset, list[float]] = {u: [] for u in subset_list}
    for lo, hi in _row_chunks(n):
        mats = {j: _bracket_rows(nums, z.z[j - 1], n, j - 1, lo, hi) for j in dims}
        for u in subset_list:
            idx = sorted(u)
            p = mats[idx[0]]
            for j in idx[1:]:
                p = p * mats[j]
            # One chunk (N <= 2048) keeps the sum exactly rounded.
            acc[u].append(math.fsum(p.ravel().tolist()))
    return {u: math.fsum(vals) / (n * n) for u, vals in acc.items()}


def wce_squared_subset(z: GeneratingVector, w: WeightScheme) -> WceReport:
    """e^2(N, z) as sum over nonempty u of gamma_u e^2_u(N, z_u).

    The empty-set weight cancels the -1 exactly, so it is never added.
    """
    if z.s != w.s:
        raise DimensionMismatch(f"z has {z.s} components but weights have s = {w.s}")
    if w.s > MAX_SUBSET_DIM:
        raise DimensionTooLarge(f"subset decomposition needs s <= {MAX_SUBSET_DIM}")
    us = list(subsets(w.s))
    per = eu2_values(z, us)
    e2 = math.fsum(w.gamma(u) * per[u] for u in us)
    return WceReport(n=z.n, z=z, e2=e2, per_subset=per)


def eu2_exact(z: Sequence[int], n: int) -> Fraction:
    """Exact e^2_u for u = all coordinates of ``z``, straight from the definition.

    Uses |{k z_j/N} - {k' z_j/N}| inside B_2 and Fraction arithmetic; meant as
    an oracle for small N only.
    """
    pts = [[Fraction(k * zj % n, n) for zj in z] for k in range(n)]
    total = Fraction(0)
    for x in pts:
        for y in pts:
            total += math.prod((eta(a, b) for a, b in zip(x, y)), start=Fraction(1))
    return total / (n * n)


def fractional_identity_check(a, b) -> bool:
    """Whether B_2(|{a} - {b}|) == B_2({a - b}) holds exactly for a, b >= 0."""
    a, b = Fraction(a), Fraction(b)
    return bernoulli2(abs(frac(a) - frac(b))) == bernoulli2(frac(a - b))
