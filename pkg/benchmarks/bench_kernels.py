"""Time the compiled kernels against the pure-Python reference.

Usage: python benchmarks/bench_kernels.py [--points N] [--dim-cap K] [--repeat R]
"""

import argparse
import time

import numpy as np

from curvtopo import kernels
from curvtopo.complexes import FilteredComplex
from curvtopo.persistence import boundary_matrix


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=60, help="cloud size (default: %(default)s)")
    parser.add_argument("--dim-cap", type=int, default=2, help="top simplex dimension (default: %(default)s)")
    parser.add_argument("--t-max", type=float, default=0.5, help="edge cutoff (default: %(default)s)")
    parser.add_argument("--repeat", type=int, default=3, help="timing repeats (default: %(default)s)")
    parser.add_argument("--seed", type=int, default=0, help="cloud seed (default: %(default)s)")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    X = rng.random((args.points, 3))
    E = np.linalg.norm(X[:, None] - X[None], axis=2) / 2

    names = sorted(kernels.BACKENDS)
    if len(names) < 2:
        print("compiled kernels not built; only the Python backend is available")
    results = {}
    for name in names:
        k = kernels.get(name)
        t_flag, simplices = best_of(lambda: k.flag_filtration(E, args.dim_cap, args.t_max), args.repeat)
        cols = boundary_matrix(FilteredComplex(tuple(simplices), tuple(range(args.points)), args.dim_cap))
        t_red, low = best_of(lambda: k.reduce_boundary(*cols), args.repeat)
        results[name] = (t_flag, t_red, simplices, low)
        print(f"{name:>7}: flag {t_flag * 1e3:9.2f} ms   reduce {t_red * 1e3:9.2f} ms   ({len(simplices)} simplices)")

    if len(names) == 2:
        py, cy = results["python"], results["cython"]
        assert py[2] == cy[2] and np.array_equal(py[3], cy[3]), "backends disagree"
        print(f"speedup: flag x{py[0] / cy[0]:.1f}, reduce x{py[1] / cy[1]:.1f} (outputs identical)")


if __name__ == "__main__":
    main()
