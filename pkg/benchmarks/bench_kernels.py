"""Time the compiled and fallback kernels on the workloads the suites run.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from landauqm import kernels
from landauqm.classical import flow_matrix
from landauqm.gauge import Gauge
from landauqm.params import NATURAL


def workloads():
    rng = np.random.default_rng(0)
    field = rng.normal(size=(512, 512)) + 1j * rng.normal(size=(512, 512))
    m = flow_matrix(Gauge.SYMMETRIC, NATURAL)
    s0 = np.array([0.0, 0.0, 1.0, 0.0])
    return {
        "fd_axis 512x512 order 2": lambda b: kernels.fd_axis(field, 0, 2, 0.01, b),
        "rk4_linear 10000 steps": lambda b: kernels.rk4_linear(m, s0, 2 * np.pi / 1000, 10000, b),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    names = sorted(kernels.backends())
    if "cython" not in names:
        print("compiled extension not built; timing the fallback only")
    print(f"{'workload':<28}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in workloads().items():
        best = {n: min(timeit.repeat(lambda: fn(n), number=1, repeat=args.repeat)) for n in names}
        same = len(names) < 2 or np.array_equal(fn("cython"), fn("python"))
        row = f"{label:<28}" + "".join(f"{best[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{best['python'] / best['cython']:>11.1f}x"
        print(row + ("" if same else "   RESULTS DIFFER"))


if __name__ == "__main__":
    main()
