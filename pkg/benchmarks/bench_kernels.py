"""Compare the compiled and pure-Python kernels.

Usage: python3 benchmarks/bench_kernels.py [--samples N] [--depth D] [--repeat R]
"""
import argparse
import time
from fractions import Fraction
from itertools import combinations

import numpy as np

from barytile import kernels
from barytile.complex import standard_simplex
from barytile.hypersurface import BernoulliMeasure, expect_monte_carlo, simplex_carrier
from barytile.subdivision import subdivide_iter


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def boundary_facets(K, p):
    idx = K.index(p - 1)
    return np.array([[idx[f] for f in combinations(s, p)] for s in K.simplices(p)], dtype=np.int64)


def kernel_cases(depth, samples, rng):
    K = subdivide_iter(standard_simplex(2), depth).complex
    facets = boundary_facets(K, 2)
    rows = rng.integers(0, 2, (samples, len(K.simplices(2))), dtype=np.uint8)
    cols = rng.integers(0, 2, (samples, len(K.simplices(1))), dtype=np.uint8)
    edges = boundary_facets(K, 1)
    nodes = rng.integers(0, 2, (samples, K.vertex_count), dtype=np.uint8)
    dense = rng.integers(0, 2**63, (400, 7), dtype=np.uint64)
    return {
        "restricted_ranks": lambda b: b.restricted_ranks(facets, rows, cols),
        "component_labels": lambda b: b.component_labels(K.vertex_count, edges, nodes),
        "gf2_rank": lambda b: b.gf2_rank(dense),
    }


def end_to_end(backend, samples):
    saved = kernels.restricted_ranks, kernels.component_labels
    kernels.restricted_ranks, kernels.component_labels = backend.restricted_ranks, backend.component_labels
    try:
        C, B = simplex_carrier(2, 2)
        m = BernoulliMeasure(Fraction(1, 2))
        return expect_monte_carlo(C, 1, 0, m, "btV", samples, 2024, boundary=B).mean
    finally:
        kernels.restricted_ranks, kernels.component_labels = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--depth", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled_backend is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    backends = {"python": kernels.python_backend, "compiled": kernels.compiled_backend}

    print(f"{'case':<22}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    cases = kernel_cases(args.depth, args.samples, np.random.default_rng(0))
    cases["monte_carlo btV"] = lambda b: end_to_end(b, args.samples)
    for name, fn in cases.items():
        (tp, a), (tc, b) = (best_of(lambda: fn(backends[k]), args.repeat) for k in ("python", "compiled"))
        assert np.array_equal(np.asarray(a), np.asarray(b)), f"{name}: backends disagree"
        print(f"{name:<22}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
