#!/usr/bin/env python3
"""Time the reachability kernel: compiled extension vs pure-Python fallback.

Generates random digraphs (cycles included), checks that both kernels return
the same pair set, and prints a timing table.

Usage:
    python3 benchmarks/bench_closure.py
    python3 benchmarks/bench_closure.py --nodes 200 600 1200 --degree 4 --repeats 5
"""

import argparse
import random
import time

from fuzzonto import _closure_py, closure

try:
    from fuzzonto import _closure_cy
except ImportError:  # built without the extension
    _closure_cy = None


def make_graph(rng, nodes, degree):
    edges = set()
    target = int(nodes * degree)
    while len(edges) < target:
        u = rng.randrange(nodes)
        v = rng.randrange(nodes)
        if u != v:
            edges.add((u, v))
    return sorted(edges)


def best_of(fn, repeats):
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        timings.append(time.perf_counter() - start)
    return result, min(timings)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, nargs="+", default=[100, 300, 900])
    parser.add_argument("--degree", type=float, default=3.0)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)

    print(f"active backend: {closure.BACKEND}")
    if _closure_cy is None:
        print("compiled kernel unavailable; timing the fallback only")
    header = f"{'nodes':>7} {'edges':>7} {'pairs':>9} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))

    rng = random.Random(args.seed)
    for nodes in args.nodes:
        edges = make_graph(rng, nodes, args.degree)
        pure, pure_t = best_of(
            lambda: _closure_py.reachable_pairs(nodes, edges), args.repeats
        )
        row = f"{nodes:>7} {len(edges):>7} {len(pure):>9} {pure_t * 1000:>8.1f}ms"
        if _closure_cy is not None:
            fast, fast_t = best_of(
                lambda: _closure_cy.reachable_pairs(nodes, edges), args.repeats
            )
            if sorted(fast) != sorted(pure):
                raise SystemExit(f"kernel mismatch at nodes={nodes}")
            row += f" {fast_t * 1000:>8.1f}ms {pure_t / fast_t:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
