"""Time the compiled kernels against the numpy fallback.

Usage::

    python benchmarks/bench_kernels.py [--n 10007] [--threads 1] [--repeat 3]

Each kernel is run on both backends with identical inputs; the script
also checks that the outputs agree bit for bit.
"""

import argparse
import time

import numpy as np

from lattice_wce import _fallback
from lattice_wce._backend import get_kernels


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, np.ndarray):
        return a.tobytes() == b.tobytes()
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10007, help="prime for t_values")
    ap.add_argument("--wce-n", type=int, default=4001, help="prime for wce_product_sum")
    ap.add_argument("--j-n", type=int, default=2003, help="prime for j_numerators")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    try:
        compiled = get_kernels("compiled")
    except ImportError:
        compiled = None
        print("compiled kernels not built; timing the fallback only")

    z = np.array([1, 1487, 2411, 3001])
    gamma = np.array([1.0, 0.5, 0.25, 0.125])
    cases = [
        ("t_values", f"N={args.n}",
         lambda k: k.t_values(args.n, np.arange(1, (args.n - 1) // 2 + 1), args.threads)),
        ("wce_product_sum", f"N={args.wce_n}, s={len(z)}",
         lambda k: k.wce_product_sum(args.wce_n, z % args.wce_n, gamma, args.threads)),
        ("j_numerators", f"N={args.j_n}",
         lambda k: k.j_numerators(args.j_n, args.threads)),
    ]

    print(f"{'kernel':<16} {'size':<16} {'python [s]':>11} {'compiled [s]':>13} {'speedup':>8}  identical")
    for name, size, call in cases:
        t_py, out_py = best_of(lambda: call(_fallback), args.repeat)
        if compiled is None:
            print(f"{name:<16} {size:<16} {t_py:11.4f} {'-':>13} {'-':>8}  -")
            continue
        t_c, out_c = best_of(lambda: call(compiled), args.repeat)
        print(f"{name:<16} {size:<16} {t_py:11.4f} {t_c:13.4f} {t_py / t_c:8.1f}  {same(out_py, out_c)}")


if __name__ == "__main__":
    main()
