"""Benchmark the measured-information kernel backends.

Runs the same workloads through the compiled extension and the NumPy
fallback and prints a timing table:

    python3 benchmarks/bench_kernel.py [--repeats N]

The discord row exercises the full optimizer (coarse grid plus local
refinement), which is where the kernel dominates the profile.
"""

import argparse
import time

import numpy as np

from qcorr import _kernel
from qcorr import correlations as corr
from qcorr import operators as op


def _random_state(rng):
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _timed(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="best-of repeats")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    states = [_random_state(rng) for _ in range(20)]
    decomps = []
    for rho in states:
        d = op.decompose(rho)
        decomps.append(
            (
                np.ascontiguousarray(d.x),
                np.ascontiguousarray(d.y),
                np.ascontiguousarray(d.t),
            )
        )
    angles = [
        (rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)) for _ in range(500)
    ]
    thetas = np.linspace(0, np.pi, 181)
    phis = np.linspace(0, 2 * np.pi, 360, endpoint=False)
    grid_out = np.empty((181, 360))

    def scalar_workload():
        x, y, t = decomps[0]
        for theta, phi in angles:
            _kernel.measured_info(x, y, t, theta, phi)

    def grid_workload():
        x, y, t = decomps[0]
        _kernel.measured_info_grid(x, y, t, thetas, phis, grid_out)

    def discord_workload():
        for rho in states:
            corr.discord(rho, check=False)

    workloads = [
        ("measured_info x500 (scalar)", scalar_workload),
        ("measured_info_grid 181x360", grid_workload),
        ("discord x20 states", discord_workload),
    ]

    backends = ["numpy"]
    if _kernel.COMPILED_AVAILABLE:
        backends.insert(0, "cython")
    else:
        print("compiled extension unavailable; timing the fallback only\n")

    results = {}
    for backend in backends:
        with _kernel.force_backend(backend):
            for label, fn in workloads:
                results[backend, label] = _timed(fn, args.repeats)

    width = max(len(label) for label, _ in workloads)
    header = f"{'workload':<{width}}" + "".join(f"  {b:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, _ in workloads:
        row = f"{label:<{width}}"
        for backend in backends:
            row += f"  {results[backend, label] * 1e3:>8.2f}ms"
        if len(backends) == 2:
            ratio = results["numpy", label] / results["cython", label]
            row += f"  {ratio:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
