"""Exhaustive enumeration and counting of magic labellings.

This is the brute-force oracle the rest of the package is validated
against. The search assigns edges in a static order chosen to close vertex
equations early, bounds every label by the residual sums of its endpoints,
and forces the last free edge at each vertex.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from magiclab import kernel
from magiclab.graph import Graph
from magiclab.series import MultiSeries


def default_threads() -> int:
    env = os.environ.get("MAGICLAB_THREADS")
    if env:
        return max(1, int(env))
    return 1


@lru_cache(maxsize=64)
def search_order(g: Graph) -> tuple[int, ...]:
    """Greedy static edge order (0-indexed edges).

    Repeatedly picks the unassigned edge whose endpoints have the fewest
    unassigned incidences left, so vertex equations close as early as
    possible and the last edge at each vertex becomes forced.
    """
    remaining = [g.degree(v) for v in range(1, g.m + 1)]
    todo = set(range(g.n))
    order = []
    while todo:
        def key(k):
            u, v = g.edges[k]
            a, b = remaining[u - 1], remaining[v - 1]
            return (min(a, b), max(a, b), k)
        k = min(todo, key=key)
        todo.remove(k)
        order.append(k)
        u, v = g.edges[k]
        remaining[u - 1] -= 1
        if v != u:
            remaining[v - 1] -= 1
    return tuple(order)


def _args(g: Graph):
    eu = [u - 1 for u, _ in g.edges]
    ev = [v - 1 for _, v in g.edges]
    return g.m, eu, ev, list(search_order(g))


def _split(g: Graph, s: int, threads: int | None, job):
    """Run ``job(first_value)`` over the first edge's label range."""
    threads = default_threads() if threads is None else threads
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    if threads == 1 or g.n == 0 or s == 0:
        return [job(-1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(job, range(s + 1)))


def enumerate_magic(g: Graph, s: int, *, distinct: bool = False,
                    threads: int | None = None,
                    backend: str | None = None) -> list[tuple[int, ...]]:
    """All magic labellings with magic sum ``s``, lexicographically sorted."""
    if s < 0:
        return []
    impl = kernel.get_backend(backend)
    m, eu, ev, order = _args(g)
    if g.n == 0:
        return [()] if s == 0 else []
    parts = _split(g, s, threads, lambda first: impl.enumerate_labellings(
        m, eu, ev, order, s, distinct, first))
    out = [lab for part in parts for lab in part]
    out.sort()
    return out


def enumerate_distinct(g: Graph, s: int, **kw) -> list[tuple[int, ...]]:
    return enumerate_magic(g, s, distinct=True, **kw)


def count_magic(g: Graph, s: int, *, distinct: bool = False,
                threads: int | None = None, backend: str | None = None) -> int:
    if s < 0:
        return 0
    if g.n == 0:
        return 1 if s == 0 else 0
    impl = kernel.get_backend(backend)
    m, eu, ev, order = _args(g)
    return sum(_split(g, s, threads, lambda first: impl.count(
        m, eu, ev, order, s, distinct, first)))


def count_distinct(g: Graph, s: int, **kw) -> int:
    return count_magic(g, s, distinct=True, **kw)


@dataclass(frozen=True)
class CountVector:
    values: tuple[int, ...]
    flavor: str = "all"

    def __getitem__(self, s):
        return self.values[s]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def count_series(g: Graph, S: int, *, distinct: bool = False,
                 threads: int | None = None,
                 backend: str | None = None) -> CountVector:
    vals = tuple(count_magic(g, s, distinct=distinct, threads=threads,
                             backend=backend) for s in range(S + 1))
    return CountVector(vals, "distinct" if distinct else "all")


def multivariate_truncation(g: Graph, S: int, *, distinct: bool = False,
                            threads: int | None = None) -> MultiSeries:
    """F^G(x, y) truncated to y-degree <= S, one unit term per labelling."""
    if S < 0:
        raise ValueError("truncation bound must be >= 0")
    terms = {}
    for s in range(S + 1):
        for lab in enumerate_magic(g, s, distinct=distinct, threads=threads):
            terms[(s, lab)] = 1
    return MultiSeries(g.n, S, terms)
