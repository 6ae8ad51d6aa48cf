"""T_N(kappa) profiles and the numerical check of the T_N conjecture.

T_N(kappa) = sum_{q=1}^{(N-1)/2} 1 / (q |r(q kappa, N)|), r the signed
residue. The conjecture asks that, after sorting the values non-increasingly,
all but the first C2 (ln N)^alpha of them are at most C1 (ln N)^alpha / N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .average import ConjectureConstants
from .core import PrimeModulus, as_modulus, mulmod, signed_residue
from .errors import OutOfRange, SizeGuard

PROFILE_SIZE_LIMIT = 200_000
PI2_OVER_6 = math.pi ** 2 / 6


def _kahan_t(terms) -> float:
    s = 0.0
    c = 0.0
    for term in terms:
        y = term - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


def t_n(kappa: int, m: PrimeModulus | int, full_range: bool = False) -> float:
    """T_N(kappa) with the residue r(q kappa, N) updated incrementally.

    kappa must lie in {1, ..., (N-1)/2}; ``full_range`` admits 1..N-1 (the
    upper half repeats the lower one, T_N(N - kappa) = T_N(kappa)).
    """
    m = as_modulus(m)
    n, half = m.n, m.half
    top = n - 1 if full_range else half
    if not 1 <= kappa <= top:
        raise OutOfRange(f"kappa = {kappa} outside 1..{top}")

    def terms():
        r = 0
        for q in range(1, half + 1):
            r += kappa
            if r > half:
                r -= n
            yield 1.0 / float(q * abs(r))

    return _kahan_t(terms())


def t_n_direct(kappa: int, m: PrimeModulus | int) -> float:
    """Same sum with every residue recomputed from scratch via mulmod."""
    m = as_modulus(m)
    return _kahan_t(
        1.0 / float(q * abs(signed_residue(mulmod(q, kappa, m), m)))
        for q in range(1, m.half + 1)
    )


def t_values(m: PrimeModulus | int, kappas=None, threads: int | None = None) -> np.ndarray:
    """Vectorised T_N over ``kappas`` (default 1..(N-1)/2), any kappa in 1..N-1."""
    m = as_modulus(m)
    if kappas is None:
        kappas = np.arange(1, m.half + 1, dtype=np.int64)
    kappas = np.asarray(kappas, dtype=np.int64)
    if kappas.size and (kappas.min() < 1 or kappas.max() > m.n - 1):
        raise OutOfRange("kappa values must lie in 1..N-1")
    return _backend.kernels.t_values(m.n, kappas, threads or _backend.default_threads())


@dataclass(frozen=True)
class TnProfile:
    """T_N values sorted non-increasingly; ties go to the smaller kappa."""

    n: int
    kappas: np.ndarray
    values: np.ndarray
    alpha: float = 2.0

    @property
    def log_scale(self) -> float:
        return math.log(self.n) ** self.alpha

    def __len__(self) -> int:
        return len(self.values)


def t_profile(
    m: PrimeModulus | int,
    alpha: float = 2.0,
    threads: int | None = None,
    override_size_guard: bool = False,
) -> TnProfile:
    m = as_modulus(m)
    if m.n > PROFILE_SIZE_LIMIT and not override_size_guard:
        raise SizeGuard(f"T_N profile for N = {m.n} exceeds the limit {PROFILE_SIZE_LIMIT}")
    kappas = np.arange(1, m.half + 1, dtype=np.int64)
    vals = t_values(m, kappas, threads)
    order = np.lexsort((kappas, -vals))
    return TnProfile(m.n, kappas[order], vals[order], alpha)


def scaled_series(profile: TnProfile, alpha: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(j / (ln N)^alpha, T_N(kappa_j) N / (ln N)^alpha) for j = 1..(N-1)/2."""
    a = profile.alpha if alpha is None else alpha
    scale = math.log(profile.n) ** a
    j = np.arange(1, len(profile) + 1, dtype=np.float64)
    return j / scale, profile.values * profile.n / scale


@dataclass(frozen=True)
class ConjectureCheckResult:
    n: int
    alpha: float
    c1: float
    c2: float
    c1_star: float
    threshold_index: int
    max_t: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "c1": self.c1,
            "c2": self.c2,
            "c1_star": self.c1_star,
            "threshold_index": self.threshold_index,
            "max_t": self.max_t,
            "pass": self.passed,
        }


def check_conjecture(profile: TnProfile, cc: ConjectureConstants) -> ConjectureCheckResult:
    """Test T_N(kappa_j) <= C1 (ln N)^alpha / N for every j > C2 (ln N)^alpha.

    The comparison is made on the scaled values T_N N / (ln N)^alpha, so
    passing ``c1_star`` back in as C1 always passes.
    """
    _, y = scaled_series(profile, cc.alpha)
    threshold = cc.c2 * math.log(profile.n) ** cc.alpha
    first = math.floor(threshold)  # 0-based index of the first j > threshold
    tail = y[first:]
    c1_star = float(tail.max()) if tail.size else 0.0
    return ConjectureCheckResult(
        n=profile.n,
        alpha=cc.alpha,
        c1=cc.c1,
        c2=cc.c2,
        c1_star=c1_star,
        threshold_index=first,
        max_t=float(profile.values[0]) if len(profile) else 0.0,
        passed=bool(tail.size == 0 or c1_star <= cc.c1),
    )
