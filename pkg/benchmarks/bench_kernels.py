"""Compare the compiled and pure-Python simplex kernels.

Runs the same batch of exact linear programs through each available
backend and reports the best wall time over several repeats. The workload
is the one that dominates real use: distinguishability searches and
distance programs on small polytopes.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from gptlab import _kernels, cube, polygon, simplex
from gptlab import discrimination as di
from gptlab import metrics as me
from gptlab.verify import random_polytope


def workload(seed: int = 0) -> list:
    rng = np.random.default_rng(seed)
    spaces = [cube(3), simplex(5), polygon(12)]
    spaces += [random_polytope(rng, 3, 8) for _ in range(3)]
    return spaces


def run(spaces, seed: int = 0):
    rng = np.random.default_rng(seed)
    results = []
    for sp in spaces:
        di.distinguishable_families.__wrapped__(sp)
        for _ in range(10):
            s1, s2 = di.sample_state(sp, rng), di.sample_state(sp, rng)
            results.append(me.kolmogorov_distance(sp, s1, s2))
            results.append(me.optimal_success_probability(sp, s1, s2))
    return results


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    spaces = workload()
    timings = {}
    reference = None
    for name in sorted(_kernels.available_backends()):
        with _kernels.use_backend(name):
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                out = run(spaces)
                best = min(best, time.perf_counter() - t0)
        if reference is None:
            reference = out
        elif out != reference:
            raise SystemExit(f"backend {name} disagrees with the others")
        timings[name] = best
        print(f"{name:8s} {best * 1000:9.1f} ms")
    if "cython" in timings:
        print(f"speedup  {timings['python'] / timings['cython']:9.2f}x")
    else:
        print("compiled kernel not built; only the Python kernel was timed")


if __name__ == "__main__":
    main()
