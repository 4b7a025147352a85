# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled depth-first labelling search; same contract as ``_pykernel``."""

from libc.stdlib cimport malloc, calloc, free

cdef struct Search:
    int n
    int m
    int s
    int distinct
    int first
    int *eu
    int *ev
    int *order
    int *remaining
    long long *residual
    long long *values
    char *used
    long long hits


cdef void _rec(Search *st, int p, list out) except *:
    cdef int k, u, v
    cdef long long ru, rv, lo, hi, a
    if p == st.n:
        st.hits += 1
        if out is not None:
            out.append(tuple([st.values[i] for i in range(st.n)]))
        return
    k = st.order[p]
    u = st.eu[k]
    v = st.ev[k]
    ru = st.residual[u]
    if u == v:
        lo = ru if st.remaining[u] == 1 else 0
        hi = ru
    else:
        rv = st.residual[v]
        hi = ru if ru < rv else rv
        lo = 0
        if st.remaining[u] == 1:
            if ru > hi:
                return
            lo = ru
            hi = ru
        if st.remaining[v] == 1:
            if rv > hi or rv < lo:
                return
            lo = rv
            hi = rv
    if p == 0 and st.first >= 0:
        if st.first < lo or st.first > hi:
            return
        lo = st.first
        hi = st.first
    st.remaining[u] -= 1
    if v != u:
        st.remaining[v] -= 1
    a = lo
    while a <= hi:
        if st.distinct:
            if st.used[a]:
                a += 1
                continue
            st.used[a] = 1
        st.values[k] = a
        st.residual[u] -= a
        if v != u:
            st.residual[v] -= a
        _rec(st, p + 1, out)
        st.residual[u] += a
        if v != u:
            st.residual[v] += a
        if st.distinct:
            st.used[a] = 0
        a += 1
    st.remaining[u] += 1
    if v != u:
        st.remaining[v] += 1


cdef void _rec_count(Search *st, int p) noexcept nogil:
    cdef int k, u, v
    cdef long long ru, rv, lo, hi, a
    if p == st.n:
        st.hits += 1
        return
    k = st.order[p]
    u = st.eu[k]
    v = st.ev[k]
    ru = st.residual[u]
    if u == v:
        lo = ru if st.remaining[u] == 1 else 0
        hi = ru
    else:
        rv = st.residual[v]
        hi = ru if ru < rv else rv
        lo = 0
        if st.remaining[u] == 1:
            if ru > hi:
                return
            lo = ru
            hi = ru
        if st.remaining[v] == 1:
            if rv > hi or rv < lo:
                return
            lo = rv
            hi = rv
    if p == 0 and st.first >= 0:
        if st.first < lo or st.first > hi:
            return
        lo = st.first
        hi = st.first
    st.remaining[u] -= 1
    if v != u:
        st.remaining[v] -= 1
    a = lo
    while a <= hi:
        if st.distinct:
            if st.used[a]:
                a += 1
                continue
            st.used[a] = 1
        st.residual[u] -= a
        if v != u:
            st.residual[v] -= a
        _rec_count(st, p + 1)
        st.residual[u] += a
        if v != u:
            st.residual[v] += a
        if st.distinct:
            st.used[a] = 0
        a += 1
    st.remaining[u] += 1
    if v != u:
        st.remaining[v] += 1


cdef int _init(Search *st, int m, eu, ev, order, long long s, int distinct,
               long long first) except -1:
    cdef int i, n = len(order)
    st.n = n
    st.m = m
    st.s = <int>s
    st.distinct = distinct
    st.first = <int>first
    st.hits = 0
    st.eu = <int *>malloc(max(n, 1) * sizeof(int))
    st.ev = <int *>malloc(max(n, 1) * sizeof(int))
    st.order = <int *>malloc(max(n, 1) * sizeof(int))
    st.remaining = <int *>calloc(m, sizeof(int))
    st.residual = <long long *>malloc(m * sizeof(long long))
    st.values = <long long *>calloc(max(n, 1), sizeof(long long))
    st.used = <char *>calloc(s + 1, sizeof(char))
    if (not st.eu or not st.ev or not st.order or not st.remaining
            or not st.residual or not st.values or not st.used):
        _release(st)
        raise MemoryError()
    for i in range(n):
        st.eu[i] = eu[i]
        st.ev[i] = ev[i]
        st.order[i] = order[i]
        st.remaining[st.eu[i]] += 1
        if st.ev[i] != st.eu[i]:
            st.remaining[st.ev[i]] += 1
    for i in range(m):
        st.residual[i] = s
    return 0


cdef void _release(Search *st) noexcept:
    free(st.eu)
    free(st.ev)
    free(st.order)
    free(st.remaining)
    free(st.residual)
    free(st.values)
    free(st.used)


cdef bint _isolated_blocks(Search *st) noexcept:
    cdef int i
    if st.s == 0:
        return False
    for i in range(st.m):
        if st.remaining[i] == 0:
            return True
    return False


def count(int m, eu, ev, order, long long s, bint distinct=False,
          long long first=-1):
    cdef Search st
    _init(&st, m, eu, ev, order, s, distinct, first)
    try:
        if not _isolated_blocks(&st):
            with nogil:
                _rec_count(&st, 0)
        # one increment per solution: 2**63 hits is out of reach in practice
        return int(st.hits)
    finally:
        _release(&st)


def enumerate_labellings(int m, eu, ev, order, long long s,
                         bint distinct=False, long long first=-1):
    cdef Search st
    cdef list out = []
    _init(&st, m, eu, ev, order, s, distinct, first)
    try:
        if not _isolated_blocks(&st):
            _rec(&st, 0, out)
        return out
    finally:
        _release(&st)
