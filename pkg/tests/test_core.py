from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lattice_wce.core import (
    GeneratingVector,
    PrimeModulus,
    bernoulli2,
    eta,
    is_prime,
    lattice_points,
    lattice_numerators,
    make_prime_modulus,
    mod_inverse,
    mulmod,
    primes_up_to,
    signed_residue,
)
from lattice_wce.errors import NotPrime, OutOfRange, TooSmall, ZeroResidue


def test_prime_modulus_fields():
    m = make_prime_modulus(5)
    assert (m.n, m.half) == (5, 2)
    assert m.log_n > 1


def test_large_sweep_prime_sizes():
    for n in (50021, 74687, 99991):
        assert make_prime_modulus(n).n == n


def test_composite_and_small_rejected():
    with pytest.raises(NotPrime):
        make_prime_modulus(4)
    with pytest.raises(TooSmall):
        make_prime_modulus(2)
    with pytest.raises(NotPrime):
        make_prime_modulus(561)  # Carmichael number


def test_miller_rabin_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))

    assert all(is_prime(n) == slow(n) for n in range(5000))
    # strong pseudoprimes to several small bases
    for n in (3215031751, 3825123056546413051, 318665857834031151167461):
        assert not is_prime(n)
    assert is_prime(2 ** 61 - 1)
    assert is_prime(18446744073709551557)  # largest 64-bit prime


def test_mulmod_examples():
    assert mulmod(3, 4, PrimeModulus(5)) == 2
    assert mulmod(0, 7, PrimeModulus(11)) == 0
    assert mulmod(99990, 99990, PrimeModulus(99991)) == (99990 * 99990) % 99991 == 1


def test_mod_inverse_examples():
    assert mod_inverse(1, 7) == 1
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(2, 5) == 3
    with pytest.raises(ZeroResidue):
        mod_inverse(14, 7)


def test_mod_inverse_round_trip_exhaustive():
    for n in primes_up_to(1000):
        m = PrimeModulus(n)
        for k in range(1, n):
            assert mulmod(k, mod_inverse(k, m), m) == 1


def test_signed_residue_examples():
    m = PrimeModulus(5)
    assert signed_residue(7, m) == 2
    assert signed_residue(3, m) == -2
    assert signed_residue(-3, m) == 2
    assert signed_residue(10, m) == 0


@given(st.integers(-10 ** 12, 10 ** 12), st.sampled_from(primes_up_to(200)))
def test_signed_residue_properties(j, n):
    r = signed_residue(j, n)
    assert (r - j) % n == 0
    assert abs(r) <= (n - 1) // 2
    assert signed_residue(-j, n) == -r
    assert signed_residue(j + n, n) == r
    assert (r == 0) == (j % n == 0)


def test_residue_permutation_property():
    for n in primes_up_to(101):
        half = (n - 1) // 2
        for kappa in range(1, n):
            mags = sorted(abs(signed_residue(q * kappa, n)) for q in range(1, half + 1))
            assert mags == list(range(1, half + 1))


def test_bernoulli2_values():
    assert bernoulli2(0) == Fraction(1, 6)
    assert bernoulli2(Fraction(1, 2)) == Fraction(-1, 12)
    assert bernoulli2(Fraction(1, 3)) == Fraction(1, 9) - Fraction(1, 3) + Fraction(1, 6) == Fraction(-1, 18)
    with pytest.raises(OutOfRange):
        bernoulli2(Fraction(3, 2))


def test_eta_values():
    assert eta(0, 0) == Fraction(1, 3)
    assert eta(Fraction(1, 2), Fraction(1, 2)) == Fraction(1, 12)
    assert eta(Fraction(1, 3), Fraction(2, 3)) == Fraction(-1, 18)
    with pytest.raises(OutOfRange):
        eta(Fraction(-1, 3), 0)


fractions01 = st.fractions(min_value=0, max_value=1, max_denominator=10 ** 6)


@given(fractions01, fractions01)
def test_eta_symmetric(x, y):
    assert eta(x, y) == eta(y, x)


def test_eta_integrates_to_zero():
    # eta is piecewise quadratic with a kink at x = y; Gauss-Legendre with
    # 3 nodes per piece is exact.
    import numpy as np

    nodes, weights = np.polynomial.legendre.leggauss(3)
    for y in (0.0, 0.1, 0.37, 0.5, 0.9, 1.0):
        total = 0.0
        for lo, hi in ((0.0, y), (y, 1.0)):
            if hi <= lo:
                continue
            xs = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
            total += 0.5 * (hi - lo) * sum(w * eta(float(x), y) for x, w in zip(xs, weights))
        assert abs(total) < 1e-15


def test_lattice_points_examples():
    pts = lattice_points(GeneratingVector.of([1], 5))
    assert [p.numerators for p in pts] == [(0,), (1,), (2,), (3,), (4,)]
    pts = lattice_points(GeneratingVector.of([2], 5))
    assert [p.numerators for p in pts] == [(0,), (2,), (4,), (1,), (3,)]
    pts = lattice_points(GeneratingVector.of([1, 2], 3))
    assert [p.as_fractions() for p in pts] == [
        (0, 0),
        (Fraction(1, 3), Fraction(2, 3)),
        (Fraction(2, 3), Fraction(1, 3)),
    ]
    assert pts[0].numerators == (0, 0)


def test_lattice_numerators_match_points():
    z = GeneratingVector.of([3, 5, 7], 11)
    arr = lattice_numerators(z)
    assert [tuple(r) for r in arr.tolist()] == [p.numerators for p in lattice_points(z)]


def test_unit_multiple_permutes_points():
    for n in primes_up_to(13):
        for z1 in range(1, n):
            for z2 in range(1, n):
                z = GeneratingVector.of([z1, z2], n)
                base = sorted(p.numerators for p in lattice_points(z))
                for c in range(2, n):
                    assert sorted(p.numerators for p in lattice_points(z.scaled(c))) == base


def test_generating_vector_validation():
    with pytest.raises(OutOfRange):
        GeneratingVector.of([0], 5)
    with pytest.raises(OutOfRange):
        GeneratingVector.of([5], 5)
    with pytest.raises(OutOfRange):
        GeneratingVector.of([], 5)
