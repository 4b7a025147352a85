#!/usr/bin/env python3
"""Compare the compiled and pure-Python labelling search backends.

Usage:
    python3 benchmarks/bench_kernel.py [--graph G4] [--sums 12-18] [--distinct] [--repeat 3]
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from magiclab.enumeration import count_magic
from magiclab.graph import resolve_graph
from magiclab.kernel import BACKENDS


def parse_range(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def time_backend(g, sums, distinct, backend, repeat):
    runs = []
    counts = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        counts = [count_magic(g, s, distinct=distinct, threads=1, backend=backend) for s in sums]
        runs.append(time.perf_counter() - t0)
    return counts, min(runs), statistics.median(runs)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graph", default="G4")
    ap.add_argument("--sums", default="12-18")
    ap.add_argument("--distinct", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    g = resolve_graph(args.graph)
    sums = parse_range(args.sums)
    print(f"graph {g.name}, sums {sums[0]}..{sums[-1]}, distinct={args.distinct}")
    print(f"{'backend':<8} {'best (s)':>10} {'median (s)':>11}  counts")
    results = {}
    for name in sorted(BACKENDS):
        counts, best, med = time_backend(g, sums, args.distinct, name, args.repeat)
        results[name] = (counts, best)
        print(f"{name:<8} {best:>10.4f} {med:>11.4f}  {counts}")
    if len(results) < 2:
        print("compiled backend not built; only the fallback was timed", file=sys.stderr)
        return 0
    if results["cython"][0] != results["python"][0]:
        print("backends disagree", file=sys.stderr)
        return 1
    print(f"speedup {results['python'][1] / results['cython'][1]:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
