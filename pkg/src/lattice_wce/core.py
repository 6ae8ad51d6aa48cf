"""Exact modular primitives for rank-one lattice rules.

Lattice coordinates are kept as integer numerators over the prime modulus N;
conversion to floating point happens only in the analysis layers above.
Exact rationals are plain :class:`fractions.Fraction` objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Sequence

import numpy as np

from .errors import NotPrime, OutOfRange, TooSmall, ZeroResidue

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_HALF = Fraction(1, 2)
_SIXTH = Fraction(1, 6)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int, start: int = 3) -> list[int]:
    """Primes p with start <= p <= limit."""
    return [p for p in range(max(start, 2), limit + 1) if is_prime(p)]


@dataclass(frozen=True)
class PrimeModulus:
    """A validated odd prime N, the number of lattice points.

    ``half`` is (N-1)/2 and ``log_n`` is ln N.
    """

    n: int
    half: int = field(init=False)
    log_n: float = field(init=False)

    def __post_init__(self) -> None:
        n = self.n
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise TypeError(f"modulus must be an integer, got {n!r}")
        n = int(n)
        if n < 3:
            raise TooSmall(f"N must be an odd prime >= 3, got {n}")
        if not is_prime(n):
            raise NotPrime(f"N = {n} is not prime")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "half", (n - 1) // 2)
        object.__setattr__(self, "log_n", math.log(n))

    def __int__(self) -> int:
        return self.n


def make_prime_modulus(n: int) -> PrimeModulus:
    return PrimeModulus(n)


def as_modulus(m: PrimeModulus | int) -> PrimeModulus:
    return m if isinstance(m, PrimeModulus) else PrimeModulus(m)


def mulmod(a: int, b: int, m: PrimeModulus | int) -> int:
    """a*b mod N. Python integers never overflow, so no splitting is needed."""
    n = m.n if isinstance(m, PrimeModulus) else int(m)
    return (a * b) % n


def mod_inverse(k: int, m: PrimeModulus | int) -> int:
    """Multiplicative inverse of k modulo the prime N, in {1, ..., N-1}."""
    n = m.n if isinstance(m, PrimeModulus) else int(m)
    if k % n == 0:
        raise ZeroResidue(f"{k} is 0 mod {n} and has no inverse")
    return pow(k, -1, n)


def signed_residue(j: int, m: PrimeModulus | int) -> int:
    """Representative of j mod N of smallest magnitude.

    The result lies in {-(N-1)/2, ..., (N-1)/2}; it is N-periodic and odd in j.
    """
    n = m.n if isinstance(m, PrimeModulus) else int(m)
    # Python's % is the Euclidean remainder for a positive modulus.
    r = j % n
    return r - n if r > (n - 1) // 2 else r


@dataclass(frozen=True)
class GeneratingVector:
    """Integer generating vector z with every component in {1, ..., N-1}."""

    z: tuple[int, ...]
    modulus: PrimeModulus

    def __post_init__(self) -> None:
        z = tuple(int(v) for v in self.z)
        if not z:
            raise OutOfRange("generating vector must have at least one component")
        n = self.modulus.n
        for j, v in enumerate(z, start=1):
            if not 1 <= v <= n - 1:
                raise OutOfRange(f"z_{j} = {v} is outside 1..{n - 1}")
        object.__setattr__(self, "z", z)

    @classmethod
    def of(cls, z: Sequence[int], n: PrimeModulus | int) -> "GeneratingVector":
        return cls(tuple(z), as_modulus(n))

    @property
    def s(self) -> int:
        return len(self.z)

    @property
    def n(self) -> int:
        return self.modulus.n

    def scaled(self, c: int) -> "GeneratingVector":
        """The vector c*z mod N (c must be a unit)."""
        n = self.modulus.n
        if c % n == 0:
            raise ZeroResidue(f"multiplier {c} is 0 mod {n}")
        return GeneratingVector(tuple(c * v % n for v in self.z), self.modulus)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.z, dtype=np.int64)


@dataclass(frozen=True)
class RationalPoint:
    """A lattice point stored as integer numerators over the modulus."""

    numerators: tuple[int, ...]
    modulus: PrimeModulus

    def as_fractions(self) -> tuple[Fraction, ...]:
        n = self.modulus.n
        return tuple(Fraction(a, n) for a in self.numerators)

    def as_floats(self) -> tuple[float, ...]:
        n = self.modulus.n
        return tuple(a / n for a in self.numerators)

    def __len__(self) -> int:
        return len(self.numerators)


def lattice_points(z: GeneratingVector) -> list[RationalPoint]:
    """The N points {k z / N}, k = 0, ..., N-1; point 0 is the origin."""
    n = z.modulus.n
    return [RationalPoint(tuple(k * v % n for v in z.z), z.modulus) for k in range(n)]


def lattice_numerators(z: GeneratingVector) -> np.ndarray:
    """Integer array of shape (N, s) holding k*z_j mod N."""
    n = z.modulus.n
    k = np.arange(n, dtype=np.int64)[:, None]
    return (k * z.as_array()[None, :]) % n


def _check_unit_interval(x) -> None:
    if not 0 <= x <= 1:
        raise OutOfRange(f"argument {x} is outside [0, 1]")


def bernoulli2(x):
    """B_2(x) = x^2 - x + 1/6 on [0, 1].

    Exact for Fraction/int input; float input gives a float.
    """
    if not isinstance(x, Real):
        raise TypeError(f"expected a real number, got {x!r}")
    _check_unit_interval(x)
    if isinstance(x, float):
        return x * x - x + 1.0 / 6.0
    x = Fraction(x)
    return x * x - x + _SIXTH


def eta(x, y):
    """One-dimensional unanchored kernel factor.

    ``eta(x, y) = B_2(|x - y|) / 2 + (x - 1/2)(y - 1/2)``
    """
    _check_unit_interval(x)
    _check_unit_interval(y)
    if isinstance(x, float) or isinstance(y, float):
        x, y = float(x), float(y)
        return 0.5 * bernoulli2(abs(x - y)) + (x - 0.5) * (y - 0.5)
    x, y = Fraction(x), Fraction(y)
    return _HALF * bernoulli2(abs(x - y)) + (x - _HALF) * (y - _HALF)


def eta_numerator(a: int, b: int, n: int) -> int:
    """Integer numerator of eta(a/N, b/N) over the denominator 12 N^2."""
    d = abs(a - b)
    return 6 * d * d - 6 * d * n + n * n + 3 * (2 * a - n) * (2 * b - n)


def frac(x: Fraction) -> Fraction:
    """Fractional part {x} in [0, 1)."""
    return x - math.floor(x)
