"""Generating-vector-averaged worst-case error and its bounds.

Averaging e^2_u(N, z_u) over all z in {1, ..., N-1}^|u| gives

    ebar^2_u(N) = N^-2 sum_{k,k'} (X_{k,k'} + J_{k,k'})^|u|

with X the averaged Bernoulli term and J the averaged product of centred
fractional parts. X and J are exact rationals here; J has denominator
dividing 4 N^2 (N-1). For k, k' >= 1, J_{k,k'} only depends on
kappa = k k'^{-1} mod N, which turns the O(N^3) double sum into O(N^2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import _backend
from .core import GeneratingVector, PrimeModulus, as_modulus, mod_inverse, signed_residue
from .errors import BadTolerance, OutOfRange, SizeGuard, ZeroIndex
from .wce import eu2_exact, eu2_values, wce_squared_pairwise
from .weights import WeightScheme

AVERAGE_SIZE_LIMIT = 10_000

_PI2 = math.pi ** 2


@dataclass(frozen=True)
class ConjectureConstants:
    """Exponent alpha and constants C1, C2 of the T_N conjecture."""

    alpha: float = 2.0
    c1: float = 20.0
    c2: float = 10.0

    def __post_init__(self) -> None:
        if self.alpha < 2:
            raise OutOfRange(f"alpha must be >= 2, got {self.alpha}")
        if self.c1 < 0 or self.c2 < 0:
            raise OutOfRange("C1 and C2 must be nonnegative")


@dataclass(frozen=True)
class AveragedErrorReport:
    n: int
    subset_size: int
    ebar2_u: float
    bound_prop2: float
    bound_kappa: float
    bound_theorem1: float
    theorem1_hypothesis: bool
    ebar2_total: float | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "subset_size": self.subset_size,
            "ebar2_u": self.ebar2_u,
            "bound_prop2": self.bound_prop2,
            "bound_kappa": self.bound_kappa,
            "bound_theorem1": self.bound_theorem1,
            "theorem1_hypothesis": self.theorem1_hypothesis,
        }


# -- X --------------------------------------------------------------------


def x_closed_form(k: int, kp: int, m: PrimeModulus | int) -> Fraction:
    m = as_modulus(m)
    return Fraction(1, 12) if k == kp else Fraction(-1, 12 * m.n)


def x_definition_oracle(k: int, kp: int, m: PrimeModulus | int) -> Fraction:
    """X straight from its defining sum over z, in exact integer arithmetic.

    B_2(d/N) = (6 d^2 - 6 d N + N^2) / (6 N^2) with d = (k - k') z mod N.
    """
    n = as_modulus(m).n
    diff = k - kp
    total = 0
    for z in range(1, n):
        d = diff * z % n
        total += 6 * d * d - 6 * d * n + n * n
    return Fraction(total, 12 * n * n * (n - 1))


# -- J --------------------------------------------------------------------


def j_numerator(k: int, kp: int, n: int) -> int:
    return sum((2 * (k * z % n) - n) * (2 * (kp * z % n) - n) for z in range(1, n))


def j_definition(k: int, kp: int, m: PrimeModulus | int) -> Fraction:
    """Exact J_{N;k,k'} from its defining sum over z."""
    n = as_modulus(m).n
    return Fraction(j_numerator(k, kp, n), 4 * n * n * (n - 1))


class KappaReduction(NamedTuple):
    kappa: int
    """k * k'^{-1} mod N; J_{N;k,k'} = J_{N;kappa,1}."""
    folded: int
    """Representative of kappa in {1, ..., (N-1)/2}."""
    sign: int
    """+1 or -1 with J_{N;kappa,1} = sign * J_{N;folded,1}."""


def j_kappa_reduce(k: int, kp: int, m: PrimeModulus | int) -> KappaReduction:
    m = as_modulus(m)
    if k % m.n == 0 or kp % m.n == 0:
        raise ZeroIndex("kappa reduction needs k, k' in 1..N-1")
    kappa = k * mod_inverse(kp, m) % m.n
    if kappa <= m.half:
        return KappaReduction(kappa, kappa, 1)
    return KappaReduction(kappa, m.n - kappa, -1)


def j_table(m: PrimeModulus | int, threads: int | None = None) -> np.ndarray:
    """Integer numerators of J_{N;kappa,1} for kappa = 0, ..., N-1.

    Divide by 4 N^2 (N-1) to get J. Exact: every value fits in int64 for the
    supported N.
    """
    m = as_modulus(m)
    return _backend.kernels.j_numerators(m.n, threads or _backend.default_threads())


def p_series(q: int, n: int, terms: int) -> float:
    """Truncated P_N(q) = 1/q - sum_{l>=1} 2q / ((lN)^2 - q^2).

    The l^-2 part of each summand is summed in closed form (q pi^2 / (3 N^2));
    the remaining l^-4 series is truncated after ``terms`` terms, leaving a
    tail of at most 8|q|^3 / (9 N^4 terms^3) for |q| <= N/2.
    """
    q3 = 2 * q ** 3
    rest = math.fsum(
        q3 / ((ell * n) ** 2 * ((ell * n) ** 2 - q * q)) for ell in range(1, terms + 1)
    )
    return 1.0 / q - q * _PI2 / (3.0 * n * n) - rest


def p_tail_bound(q: int, n: int, terms: int) -> float:
    return 8.0 * abs(q) ** 3 / (9.0 * n ** 4 * terms ** 3)


def _series_terms(m: PrimeModulus, tail_eps: float) -> int:
    """Smallest L whose truncation error in the J sum stays below tail_eps / 2."""
    n, half = m.n, m.half
    c = n / (2.0 * _PI2 * (n - 1))
    harmonic = math.fsum(1.0 / q for q in range(1, half + 1))
    # per-factor error delta gives total <= c (2 H delta + half delta^2)
    delta = min(tail_eps / (2.0 * c * (2.0 * harmonic + 1.0)), 1.0 / half)
    terms = math.ceil((8.0 * half ** 3 / (9.0 * n ** 4 * delta)) ** (1.0 / 3.0))
    return max(1, terms)


def _rounding_floor(m: PrimeModulus) -> float:
    return 1e-15 * (m.half + 10)


def p_table(m: PrimeModulus, terms: int) -> np.ndarray:
    """P_N(q) for q = 0..(N-1)/2 (entry 0 unused)."""
    out = np.zeros(m.half + 1)
    for q in range(1, m.half + 1):
        out[q] = p_series(q, m.n, terms)
    return out


def j_series(kappa: int, m: PrimeModulus | int, tail_eps: float = 1e-10) -> float:
    """J_{N;kappa,1} from the P_N product series, accurate to ``tail_eps``."""
    m = as_modulus(m)
    if not 1 <= kappa <= m.n - 1:
        raise OutOfRange(f"kappa = {kappa} outside 1..{m.n - 1}")
    if not tail_eps > 2.0 * _rounding_floor(m):
        raise BadTolerance(f"tail_eps = {tail_eps} is not attainable for N = {m.n}")
    table = p_table(m, _series_terms(m, tail_eps))
    return _j_from_table(kappa, m, table)


def _j_from_table(kappa: int, m: PrimeModulus, table: np.ndarray) -> float:
    terms = []
    for q in range(1, m.half + 1):
        r = signed_residue(q * kappa, m)
        pr = table[r] if r > 0 else -table[-r]
        terms.append(table[q] * pr)
    return m.n / (2.0 * _PI2 * (m.n - 1)) * math.fsum(terms)


def j_series_all(m: PrimeModulus | int, tail_eps: float = 1e-10) -> np.ndarray:
    """j_series for kappa = 1..N-1 sharing one P_N table (index 0 unused)."""
    m = as_modulus(m)
    if not tail_eps > 2.0 * _rounding_floor(m):
        raise BadTolerance(f"tail_eps = {tail_eps} is not attainable for N = {m.n}")
    table = p_table(m, _series_terms(m, tail_eps))
    out = np.zeros(m.n)
    for kappa in range(1, m.n):
        out[kappa] = _j_from_table(kappa, m, table)
    return out


def j_cotangent(kappa: int, m: PrimeModulus | int) -> float:
    """J_{N;kappa,1} via P_N(q) = (pi/N) cot(pi q / N); an independent check."""
    m = as_modulus(m)
    n = m.n
    s = math.fsum(
        1.0 / (math.tan(math.pi * q / n) * math.tan(math.pi * (q * kappa % n) / n))
        for q in range(1, m.half + 1)
    )
    return s / (2.0 * n * (n - 1))


def j_series_truncated_raw(kappa: int, m: PrimeModulus | int, big_m: int, big_mp: int) -> float:
    """Scaled partial double sum S(M, M') restricted to h not divisible by N.

    Sums 1/(h h') over 0 < |h| <= M, 0 < |h'| <= M' with h' = h kappa (mod N),
    times N / (4 pi^2 (N-1)). Tends to J_{N;kappa,1} as M, M' grow.
    """
    m = as_modulus(m)
    n = m.n
    if big_m < n or big_mp < n:
        raise OutOfRange("truncation levels must satisfy M, M' >= N")
    hp = np.concatenate([np.arange(-big_mp, 0), np.arange(1, big_mp + 1)])
    # g[c] = sum of 1/h' over the residue class c of h'
    g = np.bincount(hp % n, weights=1.0 / hp, minlength=n)
    h = np.concatenate([np.arange(-big_m, 0), np.arange(1, big_m + 1)])
    h = h[h % n != 0]
    s = math.fsum((g[(h * kappa) % n] / h).tolist())
    return n / (4.0 * _PI2 * (n - 1)) * s


# -- averaged error -------------------------------------------------------


def c_u_constant(u_size: int) -> float:
    return 2.0 / 3.0 ** u_size + 1.0 / 4.0 ** u_size


def theorem1_constant(u_size: int, cc: ConjectureConstants = ConjectureConstants()) -> float:
    """C_u with ebar_u(N) <= C_u (ln N)^(alpha/2) / sqrt(N) under the conjecture."""
    return math.sqrt(
        c_u_constant(u_size)
        + 2.0 * cc.c2 * (23.0 / 24.0) ** u_size
        + (3.0 * cc.c1 / (4.0 * _PI2) + 5.0 / 6.0) ** u_size
    )


def theorem1_hypothesis(m: PrimeModulus | int, alpha: float) -> bool:
    m = as_modulus(m)
    return m.log_n ** alpha / m.n <= 1.0


def j_bound_lemma5(kappa: int, m: PrimeModulus | int, t_value: float) -> float:
    """Upper bound on |J_{N;kappa,1}| in terms of T_N(kappa)."""
    m = as_modulus(m)
    n = m.n
    return n / (2.0 * _PI2 * (n - 1)) * (t_value + 10.0 * _PI2 * m.log_n / (9.0 * n))


class _JData(NamedTuple):
    j: np.ndarray  # float J_{N;kappa,1}, kappa = 0..N-1
    j00: Fraction
    j01: Fraction
    j10: Fraction


def _j_data(m: PrimeModulus, threads: int | None, override: bool) -> _JData:
    if m.n > AVERAGE_SIZE_LIMIT and not override:
        raise SizeGuard(f"averaged error for N = {m.n} exceeds the limit {AVERAGE_SIZE_LIMIT}")
    den = 4 * m.n * m.n * (m.n - 1)
    nums = j_table(m, threads)
    j = np.array([Fraction(int(v), den) for v in nums], dtype=object).astype(np.float64)
    return _JData(j, j_definition(0, 0, m), j_definition(0, 1, m), j_definition(1, 0, m))


def _ebar2_from(m: PrimeModulus, data: _JData, d: int) -> float:
    n = m.n
    x_off = -1.0 / (12.0 * n)
    # rows/columns with a zero index: J_{0,k'} and J_{k,0} do not depend on the
    # nonzero index (multiplying z by a unit permutes the z-sum)
    edge = [
        float((Fraction(1, 12) + data.j00) ** d),
        (n - 1) * (x_off + float(data.j01)) ** d,
        (n - 1) * (x_off + float(data.j10)) ** d,
    ]
    x = np.full(n, x_off)
    x[1] = 1.0 / 12.0
    block = math.fsum(((x[1:] + data.j[1:]) ** d).tolist())
    return math.fsum(edge + [(n - 1) * block]) / (n * n)


def _report(m: PrimeModulus, data: _JData, d: int, cc: ConjectureConstants) -> AveragedErrorReport:
    n = m.n
    jd = data.j[1:] ** d
    return AveragedErrorReport(
        n=n,
        subset_size=d,
        ebar2_u=_ebar2_from(m, data, d),
        bound_prop2=c_u_constant(d) / n + (n - 1) * math.fsum(jd.tolist()) / (n * n),
        bound_kappa=c_u_constant(d) / n + math.fsum((np.abs(data.j[1:]) ** d).tolist()) / n,
        bound_theorem1=theorem1_constant(d, cc) ** 2 * m.log_n ** cc.alpha / n,
        theorem1_hypothesis=theorem1_hypothesis(m, cc.alpha),
    )


def ebar2_u(
    m: PrimeModulus | int,
    u_size: int,
    cc: ConjectureConstants = ConjectureConstants(),
    threads: int | None = None,
    override_size_guard: bool = False,
) -> AveragedErrorReport:
    """Averaged e^2_u(N) for any u with |u| = u_size, plus its bounds.

    ``bound_prop2`` is c_u/N + N^-2 sum_{k,k'>=1} J^|u|; ``bound_kappa`` the
    coarser c_u/N + N^-1 sum_kappa |J_{kappa,1}|^|u|; ``bound_theorem1`` is
    C_u^2 (ln N)^alpha / N, meaningful only when ``theorem1_hypothesis``.
    """
    if u_size < 1:
        raise OutOfRange("subset size must be at least 1")
    m = as_modulus(m)
    data = _j_data(m, threads, override_size_guard)
    return _report(m, data, u_size, cc)


def ebar2_reports(
    m: PrimeModulus | int,
    max_size: int,
    cc: ConjectureConstants = ConjectureConstants(),
    threads: int | None = None,
    override_size_guard: bool = False,
) -> list[AveragedErrorReport]:
    """Reports for |u| = 1..max_size sharing one J table."""
    m = as_modulus(m)
    data = _j_data(m, threads, override_size_guard)
    return [_report(m, data, d, cc) for d in range(1, max_size + 1)]


def ebar2_total(
    m: PrimeModulus | int,
    w: WeightScheme,
    threads: int | None = None,
    override_size_guard: bool = False,
) -> float:
    """Weighted averaged error sum_u gamma_u ebar^2_u(N), grouped by |u|."""
    m = as_modulus(m)
    sums = w.cardinality_sums()
    if not any(sums):
        return 0.0
    data = _j_data(m, threads, override_size_guard)
    return math.fsum(
        g * _ebar2_from(m, data, d) for d, g in enumerate(sums, start=1) if g != 0.0
    )


def corollary_constant(w: WeightScheme, cc: ConjectureConstants = ConjectureConstants()) -> float:
    """C = sum_u gamma_u C_u^2, so that ebar^2(N) <= C (ln N)^alpha / N."""
    return math.fsum(
        g * theorem1_constant(d, cc) ** 2
        for d, g in enumerate(w.cardinality_sums(), start=1)
        if g != 0.0
    )


def corollary_bound(
    m: PrimeModulus | int, w: WeightScheme, cc: ConjectureConstants = ConjectureConstants()
) -> float:
    m = as_modulus(m)
    return corollary_constant(w, cc) * m.log_n ** cc.alpha / m.n


# -- exact and brute-force oracles ----------------------------------------


def ebar2_u_exact(m: PrimeModulus | int, u_size: int) -> Fraction:
    """Exact ebar^2_u(N) summing (X + J)^|u| over all (k, k') pairs; small N only."""
    m = as_modulus(m)
    n = m.n
    total = Fraction(0)
    for k in range(n):
        for kp in range(n):
            total += (x_closed_form(k, kp, m) + j_definition(k, kp, m)) ** u_size
    return total / (n * n)


def ebar2_u_binomial_exact(m: PrimeModulus | int, u_size: int) -> Fraction:
    """Exact ebar^2_u(N) from the expansion over v subset of u of X^|u\\v| J^|v|."""
    m = as_modulus(m)
    n = m.n
    total = Fraction(0)
    for k in range(n):
        for kp in range(n):
            x = x_definition_oracle(k, kp, m)
            jv = j_definition(k, kp, m)
            for mask in range(1 << u_size):
                v = bin(mask).count("1")
                total += x ** (u_size - v) * jv ** v
    return total / (n * n)


def ebar2_u_brute_force(m: PrimeModulus | int, u_size: int, exact: bool = False):
    """Average of e^2_u(N, z) over every z in {1..N-1}^|u|."""
    m = as_modulus(m)
    n = m.n
    vectors = itertools.product(range(1, n), repeat=u_size)
    if exact:
        total = sum((eu2_exact(z, n) for z in vectors), Fraction(0))
        return total / (n - 1) ** u_size
    full = frozenset(range(1, u_size + 1))
    vals = [eu2_values(GeneratingVector(z, m), [full])[full] for z in vectors]
    return math.fsum(vals) / (n - 1) ** u_size


def ebar2_total_brute_force(m: PrimeModulus | int, w: WeightScheme, threads: int | None = None) -> float:
    """Average of e^2(N, z) over every z in {1..N-1}^s, by the pairwise kernel sum."""
    m = as_modulus(m)
    vals = [
        wce_squared_pairwise(GeneratingVector(z, m), w, threads).e2
        for z in itertools.product(range(1, m.n), repeat=w.s)
    ]
    return math.fsum(vals) / (m.n - 1) ** w.s
