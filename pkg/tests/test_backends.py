"""The compiled kernels and the numpy fallback must agree bit for bit."""

import numpy as np
import pytest

from lattice_wce import _backend, _fallback

compiled = pytest.importorskip("lattice_wce._kernels")

BACKENDS = [compiled, _fallback]


def test_active_backend_is_compiled_when_built():
    assert _backend.BACKEND in ("compiled", "python")
    assert _backend.get_kernels("python") is _fallback


@pytest.mark.parametrize("n", [3, 5, 101, 2003])
def test_t_values_identical(n):
    kappas = np.arange(1, n)
    a = compiled.t_values(n, kappas, 1)
    b = _fallback.t_values(n, kappas, 1)
    assert a.tobytes() == b.tobytes()


@pytest.mark.parametrize("kernels", BACKENDS, ids=["compiled", "python"])
def test_t_values_thread_independent(kernels):
    n = 4001
    kappas = np.arange(1, (n - 1) // 2 + 1)
    ref = kernels.t_values(n, kappas, 1)
    for threads in (2, 3, 8):
        assert kernels.t_values(n, kappas, threads).tobytes() == ref.tobytes()


@pytest.mark.parametrize("n", [3, 7, 211, 1009])
def test_j_numerators_identical(n):
    a = compiled.j_numerators(n, 1)
    assert np.array_equal(a, _fallback.j_numerators(n, 1))
    assert np.array_equal(a, compiled.j_numerators(n, 4))


@pytest.mark.parametrize(
    "n,z,gamma",
    [
        (3, [1], [1.0]),
        (17, [1, 4], [1.0, 0.25]),
        (101, [1, 27, 55], [1.0, 0.5, 0.25]),
        (257, [1, 76, 99, 200], [0.9, 0.8, 0.7, 0.6]),
    ],
)
def test_wce_sum_identical(n, z, gamma):
    a = compiled.wce_product_sum(n, np.array(z), np.array(gamma), 1)
    b = _fallback.wce_product_sum(n, np.array(z), np.array(gamma), 1)
    assert a == b
    for threads in (2, 8):
        assert compiled.wce_product_sum(n, np.array(z), np.array(gamma), threads) == a
