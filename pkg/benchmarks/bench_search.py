#!/usr/bin/env python3
"""Benchmark the compiled isotropic-vector kernel against the pure fallback.

Runs an identical deterministic workload through both backends, checks that
every answer agrees, and reports wall-clock totals plus the speedup.

Usage: python3 benchmarks/bench_search.py [--bound N] [--trials N] [--seed N]
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from quatgenus import _searchpure
from quatgenus.search import compiled_available, isotropic_vector_search

try:
    from quatgenus import _fastkernel
except ImportError:
    _fastkernel = None

POOL = (1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10, 15, -15)


def workload(trials: int, seed: int) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    forms = []
    for _ in range(trials):
        dim = rng.choice((3, 4, 4, 5))
        forms.append(tuple(rng.choice(POOL) for _ in range(dim)))
    return forms


def run(search, forms: list[tuple[int, ...]], bound: int):
    results = []
    start = time.perf_counter()
    for coeffs in forms:
        results.append(search(coeffs, bound))
    return time.perf_counter() - start, results


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=60)
    parser.add_argument("--trials", type=int, default=400)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if _fastkernel is None:
        print("compiled kernel is not built; nothing to compare", file=sys.stderr)
        return 1
    if not compiled_available():
        print("QUATGENUS_PURE is set; unset it to benchmark the compiled kernel",
              file=sys.stderr)
        return 1

    forms = workload(args.trials, args.seed)
    print(f"workload: {len(forms)} forms, search bound {args.bound}, seed {args.seed}")

    pure_seconds, pure_results = run(
        _searchpure.search, forms, args.bound
    )
    fast_seconds, fast_results = run(
        _fastkernel.search, forms, args.bound
    )

    disagreements = [
        (coeffs, a, b)
        for coeffs, a, b in zip(forms, pure_results, fast_results)
        if a != b
    ]
    if disagreements:
        coeffs, a, b = disagreements[0]
        print(f"DISAGREEMENT on {coeffs}: pure={a} compiled={b}", file=sys.stderr)
        return 1

    found = sum(1 for r in pure_results if r is not None)
    print(f"agreement: all {len(forms)} results identical "
          f"({found} isotropic, {len(forms) - found} without witness)")
    print(f"pure:     {pure_seconds:8.3f}s")
    print(f"compiled: {fast_seconds:8.3f}s")
    print(f"speedup:  {pure_seconds / fast_seconds:8.1f}x")

    dispatch_seconds, dispatch_results = run(isotropic_vector_search, forms, args.bound)
    assert dispatch_results == pure_results
    print(f"dispatcher ({'compiled' if compiled_available() else 'pure'} path): "
          f"{dispatch_seconds:.3f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
