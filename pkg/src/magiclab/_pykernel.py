"""Pure-Python depth-first labelling search.

Reference implementation of the kernel contract; ``_ckernel`` must agree
with it call for call.

Arguments shared by both entry points:

``m``         number of vertices
``eu, ev``    0-indexed endpoints of each edge (``eu[k] == ev[k]`` for a loop)
``order``     edge indices in assignment order (a permutation of ``range(n)``)
``s``         target magic sum
``distinct``  require pairwise-distinct labels
``first``     if ``>= 0``, the first edge in ``order`` is fixed to this value
"""

from __future__ import annotations


def _setup(m, eu, ev, s):
    remaining = [0] * m
    for u, v in zip(eu, ev):
        remaining[u] += 1
        if v != u:
            remaining[v] += 1
    if s > 0 and any(r == 0 for r in remaining):
        return None
    return remaining, [s] * m


def _search(m, eu, ev, order, s, distinct, first, emit):
    state = _setup(m, eu, ev, s)
    if state is None:
        return
    remaining, residual = state
    n = len(order)
    values = [0] * len(eu)
    used = [False] * (s + 1)

    def rec(p):
        if p == n:
            emit(values)
            return
        k = order[p]
        u = eu[k]
        v = ev[k]
        ru = residual[u]
        if u == v:
            lo = ru if remaining[u] == 1 else 0
            hi = ru
        else:
            rv = residual[v]
            hi = ru if ru < rv else rv
            lo = 0
            if remaining[u] == 1:
                if ru > hi:
                    return
                lo = hi = ru
            if remaining[v] == 1:
                if rv > hi or rv < lo:
                    return
                lo = hi = rv
        if p == 0 and first >= 0:
            if first < lo or first > hi:
                return
            lo = hi = first
        remaining[u] -= 1
        if v != u:
            remaining[v] -= 1
        for a in range(lo, hi + 1):
            if distinct:
                if used[a]:
                    continue
                used[a] = True
            values[k] = a
            residual[u] -= a
            if v != u:
                residual[v] -= a
            rec(p + 1)
            residual[u] += a
            if v != u:
                residual[v] += a
            if distinct:
                used[a] = False
        remaining[u] += 1
        if v != u:
            remaining[v] += 1

    rec(0)


def count(m, eu, ev, order, s, distinct=False, first=-1):
    total = 0

    def emit(_values):
        nonlocal total
        total += 1

    _search(m, eu, ev, order, s, distinct, first, emit)
    return total


def enumerate_labellings(m, eu, ev, order, s, distinct=False, first=-1):
    out = []
    _search(m, eu, ev, order, s, distinct, first,
            lambda values: out.append(tuple(values)))
    return out
