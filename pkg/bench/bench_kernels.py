#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

The workload mirrors the confusability scan: every arrangement of a fixed
symbol content on a 7-vertex tree, fingerprinted and orbit-reduced, plus the
adjacency canonicalization used by the atlas builders.

Usage: python bench/bench_kernels.py [--repeat N]
"""

import argparse
import itertools
import time

import numpy as np

from compograph import catalog
from compograph.graphs import automorphism_group
from compograph.kernels import (
    membership_arrays,
    min_adjacency_code_numpy,
    orbit_min_codes_numpy,
    sorted_composition_codes_numpy,
    sum_vectors_numpy,
)

try:
    from compograph.kernels import (
        _min_adjacency_code_njit,
        _orbit_min_codes_njit,
        _sorted_composition_codes_njit,
        _sum_vectors_njit,
    )

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def scan_workload():
    g = catalog.generate(catalog.substar(1, 2, 3))
    member, sizes = membership_arrays(g)
    perms = np.array(automorphism_group(g), dtype=np.int64)
    content = [0, 0, 0, 1, 1, 2, 2]
    labs = np.array(sorted(set(itertools.permutations(content))), dtype=np.int64)
    return member.astype(np.uint8), sizes, labs, perms, 7


def adjacency_workload():
    graphs = catalog.enumerate_connected_graphs(6)[:40]
    perms = np.array(list(itertools.permutations(range(6))), dtype=np.int64)
    mats = []
    for g in graphs:
        adj = np.zeros((6, 6), dtype=np.uint8)
        for u, v in g.edges:
            adj[u, v] = adj[v, u] = 1
        mats.append(adj)
    return mats, perms


def timeit(fn, repeat):
    fn()  # warm up (and trigger jit compilation)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    member, sizes, labs, perms, k = scan_workload()
    mats, aperms = adjacency_workload()
    rows = []

    cases = [
        ("composition fingerprints",
         lambda: sorted_composition_codes_numpy(member, labs, k),
         (lambda: _sorted_composition_codes_njit(member, labs, k)) if HAVE_NUMBA else None),
        ("per-order sums",
         lambda: sum_vectors_numpy(member, sizes, labs, k),
         (lambda: _sum_vectors_njit(member, sizes, labs, k)) if HAVE_NUMBA else None),
        ("orbit minima",
         lambda: orbit_min_codes_numpy(labs, perms, k),
         (lambda: _orbit_min_codes_njit(labs, perms, k)) if HAVE_NUMBA else None),
        ("adjacency canonical codes",
         lambda: [min_adjacency_code_numpy(m, aperms) for m in mats],
         (lambda: [_min_adjacency_code_njit(m, aperms) for m in mats]) if HAVE_NUMBA else None),
    ]
    print(f"{labs.shape[0]} labelings x {member.shape[0]} subgraphs; "
          f"{len(mats)} graphs x {aperms.shape[0]} permutations")
    print(f"{'kernel':<28} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, numpy_fn, numba_fn in cases:
        t_np = timeit(numpy_fn, args.repeat)
        if numba_fn is None:
            print(f"{name:<28} {t_np * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        t_nb = timeit(numba_fn, args.repeat)
        print(f"{name:<28} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
