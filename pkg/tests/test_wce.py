import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lattice_wce.core import GeneratingVector, RationalPoint, PrimeModulus, primes_up_to
from lattice_wce.errors import DimensionMismatch, DimensionTooLarge, SizeGuard
from lattice_wce.wce import (
    eu2_exact,
    fractional_identity_check,
    kernel_value,
    wce_squared_pairwise,
    wce_squared_subset,
)
from lattice_wce.weights import WeightScheme, parse_weights, subsets


def gv(z, n):
    return GeneratingVector.of(z, n)


def test_kernel_value_examples():
    half = Fraction(1, 2)
    assert kernel_value([0.3], [0.8], WeightScheme.product([0.0])) == 1.0
    assert kernel_value([half], [half], WeightScheme.product([1.0])) == pytest.approx(13 / 12, abs=1e-15)
    assert kernel_value([half, half], [half, half], WeightScheme.product([1.0, 1.0])) == pytest.approx(
        (13 / 12) ** 2, abs=1e-15
    )


def test_kernel_value_rational_points_and_explicit_agree():
    m = PrimeModulus(7)
    x = RationalPoint((1, 3, 6), m)
    y = RationalPoint((5, 0, 2), m)
    g = [0.7, 0.2, 1.3]
    prod_w = WeightScheme.product(g)
    expl = WeightScheme.explicit(3, {u: math.prod(g[j - 1] for j in u) for u in subsets(3)})
    assert kernel_value(x, y, prod_w) == pytest.approx(kernel_value(x, y, expl), rel=1e-14)


def test_kernel_value_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        kernel_value([0.1, 0.2], [0.3], WeightScheme.product([1.0, 1.0]))


def test_wce_small_case_oracle():
    # brute force of the definition over {0, 1/3, 2/3}
    assert eu2_exact([1], 3) == Fraction(1, 27) == Fraction(1, 108) + Fraction(1, 36)
    w = WeightScheme.product([1.0])
    for z in ([1], [2]):
        assert wce_squared_pairwise(gv(z, 3), w).e2 == pytest.approx(1 / 27, rel=1e-15)
        rep = wce_squared_subset(gv(z, 3), w)
        assert rep.per_subset[frozenset({1})] == pytest.approx(1 / 27, rel=1e-15)


def test_zero_weight_gives_zero_error():
    for n in (3, 5, 11):
        assert wce_squared_pairwise(gv([1], n), WeightScheme.product([0.0])).e2 == 0.0


def test_subset_examples():
    w = WeightScheme.product([1.0])
    a = wce_squared_subset(gv([1], 5), w).per_subset[frozenset({1})]
    b = wce_squared_subset(gv([2], 5), w).per_subset[frozenset({1})]
    assert a == b
    per = wce_squared_subset(gv([1, 1], 3), WeightScheme.product([1.0, 1.0])).per_subset
    assert per[frozenset({1})] == per[frozenset({2})]


def test_subset_values_match_exact_definition():
    for n in (3, 5, 7):
        for z in itertools.product(range(1, n), repeat=2):
            per = wce_squared_subset(gv(z, n), WeightScheme.product([1.0, 1.0])).per_subset
            assert per[frozenset({1, 2})] == pytest.approx(float(eu2_exact(z, n)), rel=1e-14)
            assert per[frozenset({1})] == pytest.approx(float(eu2_exact(z[:1], n)), rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([3, 5, 7]),
    st.integers(1, 3),
    st.lists(st.floats(0.0, 2.0), min_size=3, max_size=3),
    st.randoms(use_true_random=False),
)
def test_decomposition_identity(n, s, gammas, rnd):
    z = gv([rnd.randrange(1, n) for _ in range(s)], n)
    w = WeightScheme.product(gammas[:s])
    pair = wce_squared_pairwise(z, w).e2
    sub = wce_squared_subset(z, w).e2
    assert pair >= -1e-12
    assert pair == pytest.approx(sub, rel=1e-12, abs=1e-300)


def test_explicit_weights_pairwise_matches_subset():
    rng = random.Random(5)
    for n in (5, 7, 11):
        table = {u: rng.uniform(0.0, 1.0) for u in subsets(3) if rng.random() < 0.8}
        w = WeightScheme.explicit(3, table)
        z = gv([rng.randrange(1, n) for _ in range(3)], n)
        pair = wce_squared_pairwise(z, w).e2
        sub = wce_squared_subset(z, w)
        assert pair == pytest.approx(sub.e2, rel=1e-12)
        assert sub.e2 == pytest.approx(math.fsum(w.gamma(u) * v for u, v in sub.per_subset.items()), rel=1e-15)


def test_unit_multiple_invariance_exact():
    w1 = WeightScheme.product([0.9])
    w2 = WeightScheme.product([0.9, 0.35])
    for n in primes_up_to(13):
        for s, w in ((1, w1), (2, w2)):
            for z in itertools.product(range(1, n), repeat=s):
                base = gv(z, n)
                e = wce_squared_pairwise(base, w).e2
                for c in range(2, n):
                    assert wce_squared_pairwise(base.scaled(c), w).e2 == e


def test_weight_monotonicity():
    rng = random.Random(11)
    for n in (5, 7, 13):
        z = gv([rng.randrange(1, n) for _ in range(3)], n)
        table = {u: rng.uniform(0.1, 1.0) for u in subsets(3)}
        base = wce_squared_subset(z, WeightScheme.explicit(3, table))
        assert all(v >= -1e-12 for v in base.per_subset.values())
        for u in table:
            bumped = dict(table)
            bumped[u] += 0.5
            assert wce_squared_subset(z, WeightScheme.explicit(3, bumped)).e2 >= base.e2


def test_fractional_identity_examples():
    assert fractional_identity_check(Fraction(7, 5), Fraction(3, 5))
    assert fractional_identity_check(Fraction(1, 3), Fraction(1, 3))
    assert fractional_identity_check(Fraction(4, 5), Fraction(1, 5))


def test_fractional_identity_random_pairs():
    rng = random.Random(2024)
    for _ in range(10_000):
        a = Fraction(rng.randrange(0, 10 ** 6), rng.randrange(1, 10 ** 3))
        b = Fraction(rng.randrange(0, 10 ** 6), rng.randrange(1, 10 ** 3))
        assert fractional_identity_check(a, b)


def test_size_guard(monkeypatch):
    import lattice_wce.wce as wce_mod

    monkeypatch.setattr(wce_mod, "PAIRWISE_HARD_LIMIT", 10)
    monkeypatch.setattr(wce_mod, "PAIRWISE_WARN_LIMIT", 5)
    with pytest.raises(SizeGuard):
        wce_squared_pairwise(gv([1], 11), WeightScheme.product([1.0]))
    with pytest.warns(UserWarning):
        wce_squared_pairwise(gv([1], 11), WeightScheme.product([1.0]), override_size_guard=True)


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        wce_squared_pairwise(gv([1, 2], 5), WeightScheme.product([1.0]))
    with pytest.raises(DimensionTooLarge):
        wce_squared_subset(gv([1] * 21, 5), WeightScheme.product([1.0] * 21))


def test_weight_parsing(tmp_path):
    assert parse_weights("product:1,0.25", 2).product_weights == (1.0, 0.25)
    assert parse_weights("product:1", 3).product_weights == (1.0, 1.0, 1.0)
    w = parse_weights("product-fill:2,1", 3)
    assert w.product_weights == (2.0, 1.0, 2.0 / 3.0)
    path = tmp_path / "w.json"
    path.write_text('{"1": 0.5, "1,2": 0.25}')
    w = parse_weights(f"explicit:@{path}", 2)
    assert w.gamma(frozenset({1, 2})) == 0.25 and w.gamma(frozenset({2})) == 0.0
    assert w.cardinality_sums() == [0.5, 0.25]


def test_cardinality_sums_product():
    g = [0.5, 2.0, 3.0]
    w = WeightScheme.product(g)
    brute = [sum(math.prod(g[j - 1] for j in u) for u in subsets(3) if len(u) == d) for d in (1, 2, 3)]
    assert w.cardinality_sums() == pytest.approx(brute, rel=1e-15)
