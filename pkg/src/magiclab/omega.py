"""MacMahon partition analysis on exponent-bounded series.

The crude form of ``F^G(x, y)`` puts one ``lambda_v`` per vertex::

    F^G = Omega_=  prod_v lambda_v
                   / ( prod_k (1 - lambda_u lambda_v x_k) * (prod_v lambda_v - y) )

Instead of eliminating the ``lambda``'s symbolically, :func:`expand_bounded`
expands every factor as a series truncated at ``y^S`` with per-lambda
exponent caps that keep every retained coefficient exact, and
:func:`omega_eq` / :func:`omega_geq` then act termwise.

``diag_eq`` and ``diag_gt`` are exponent filters on a :class:`MultiSeries`;
with ``check=True`` they are recomputed through their Omega realizations
(tag with ``lambda``, substitute ``x_i -> lambda x_i``, ``x_j -> x_j / lambda``)
and the two results must agree.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from magiclab.enumeration import enumerate_magic, multivariate_truncation
from magiclab.graph import Graph
from magiclab.series import MultiSeries

# (lambda exponents, x exponents, y exponent)
Mono = tuple[tuple[int, ...], tuple[int, ...], int]


class OmegaError(ValueError):
    pass


class CapOverflow(OmegaError):
    pass


class LaurentSeriesBounded:
    __slots__ = ("k", "n", "bound", "cap", "terms", "pruned")

    def __init__(self, k: int, n: int, bound: int, cap: int,
                 terms: dict[Mono, int] | None = None, pruned: bool = False):
        self.k, self.n, self.bound, self.cap = k, n, bound, cap
        self.pruned = pruned
        self.terms = {}
        for key, c in (terms or {}).items():
            if c == 0:
                continue
            lam, _, s = key
            if s > bound or any(abs(e) > cap for e in lam):
                raise CapOverflow(f"term {key} violates caps (y <= {bound}, |lambda| <= {cap})")
            self.terms[key] = c

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return (f"LaurentSeriesBounded(lambdas={self.k}, n={self.n}, bound={self.bound}, "
                f"cap={self.cap}, terms={len(self.terms)})")


@dataclass(frozen=True)
class CrudeForm:
    """``numerator * prod 1/(1 - g) * prod 1/(L - h)`` over lambda, x, y."""
    k: int
    n: int
    numerator: Mono
    geometric: tuple[Mono, ...]
    special: tuple[tuple[Mono, Mono], ...]

    def describe(self) -> str:
        def mono(m: Mono) -> str:
            lam, x, s = m
            parts = []
            for name, exps in (("lambda", lam), ("x", x)):
                for i, e in enumerate(exps, 1):
                    if e:
                        parts.append(f"{name}{i}" + (f"^{e}" if e != 1 else ""))
            if s:
                parts.append("y" + (f"^{s}" if s != 1 else ""))
            return "*".join(parts) or "1"
        den = [f"(1 - {mono(g)})" for g in self.geometric]
        den += [f"({mono(L)} - {mono(h)})" for L, h in self.special]
        return f"{mono(self.numerator)} / (" + " ".join(den) + ")"


def crude_form(g: Graph) -> CrudeForm:
    """One lambda per vertex, one geometric factor per edge, one special factor.

    A loop contributes ``lambda_v`` once, matching its single incidence.
    """
    m, n = g.m, g.n
    ones = (1,) * m
    zero_x = (0,) * n
    geo = []
    for k, (u, v) in enumerate(g.edges):
        lam = [0] * m
        lam[u - 1] = 1
        lam[v - 1] = 1
        x = [0] * n
        x[k] = 1
        geo.append((tuple(lam), tuple(x), 0))
    special = (((ones, zero_x, 0), ((0,) * m, zero_x, 1)),)
    return CrudeForm(m, n, (ones, zero_x, 0), tuple(geo), special)


def _mul(a: Mono, b: Mono, times: int = 1) -> Mono:
    return (tuple(x + times * y for x, y in zip(a[0], b[0])),
            tuple(x + times * y for x, y in zip(a[1], b[1])),
            a[2] + times * b[2])


def _factor_order(geo: Sequence[Mono]) -> list[int]:
    """Greedy order closing lambda variables early (better pruning)."""
    left = set(range(len(geo)))
    count = Counter(i for g in geo for i, e in enumerate(g[0]) if e)
    out = []
    while left:
        def key(f):
            support = [i for i, e in enumerate(geo[f][0]) if e]
            return (min((count[i] for i in support), default=0), f)
        f = min(left, key=key)
        left.remove(f)
        out.append(f)
        for i, e in enumerate(geo[f][0]):
            if e:
                count[i] -= 1
    return out


def derive_cap(cf: CrudeForm, S: int) -> int:
    """Per-lambda exponent cap; raises when no finite cap exists."""
    for g in cf.geometric:
        lam, x, s = g
        if any(e < 0 for e in lam):
            raise CapOverflow(f"geometric factor {g} has a negative lambda exponent")
        if s == 0 and not any(lam):
            raise CapOverflow(f"geometric factor {g} is not bounded by y or lambda caps")
        if s == 0 and not any(x) and not any(lam):
            raise CapOverflow("constant geometric factor")
    low = max((e for e in cf.numerator[0]), default=0)
    for L, h in cf.special:
        if h[2] <= 0:
            raise CapOverflow(f"special factor subtrahend {h} needs positive y-degree")
        if any(e < 0 for e in L[0]) or any(e < 0 for e in h[0]):
            raise CapOverflow("special factor with negative lambda exponents")
        jmax = S // h[2]
        low += (jmax + 1) * max(L[0], default=0)
    return max(low, S + 1)


def expand_bounded(cf: CrudeForm, S: int, prune: bool = True) -> LaurentSeriesBounded:
    """Expand the crude form up to ``y^S`` with exact retained coefficients.

    With ``prune`` (default) terms that can no longer reach lambda-degree 0
    are dropped: a positive lambda exponent cannot decrease once only
    geometric factors remain, and a negative one is dead when no remaining
    factor contains that lambda. The pruned series is valid input for
    :func:`omega_eq` only.
    """
    cap = derive_cap(cf, S)
    terms: dict[Mono, int] = {cf.numerator: 1}
    for L, h in cf.special:
        new: dict[Mono, int] = {}
        for t, c in terms.items():
            cur = _mul(t, L, -1)
            while cur[2] <= S:
                new[cur] = new.get(cur, 0) + c
                cur = _mul(_mul(cur, h), L, -1)
        terms = new
    order = _factor_order(cf.geometric)
    remaining_support = []
    for pos in range(len(order) + 1):
        sup = set()
        for f in order[pos:]:
            sup.update(i for i, e in enumerate(cf.geometric[f][0]) if e)
        remaining_support.append(sup)
    for pos, f in enumerate(order):
        g = cf.geometric[f]
        new = {}
        for t, c in terms.items():
            cur = t
            while cur[2] <= S and all(e <= cap for e in cur[0]):
                if prune and any(e > 0 for e in cur[0]):
                    break
                new[cur] = new.get(cur, 0) + c
                cur = _mul(cur, g)
        if prune:
            alive = remaining_support[pos + 1]
            new = {t: c for t, c in new.items()
                   if all(e == 0 or i in alive for i, e in enumerate(t[0]))}
        terms = new
    out = {t: c for t, c in terms.items() if all(abs(e) <= cap for e in t[0])}
    return LaurentSeriesBounded(cf.k, cf.n, S, cap, out, pruned=prune)


def omega_eq(series: LaurentSeriesBounded) -> MultiSeries:
    """Keep the lambda-constant terms and drop lambda."""
    out: dict = {}
    for (lam, x, s), c in series.terms.items():
        if not any(lam):
            out[(s, x)] = out.get((s, x), 0) + c
    return MultiSeries(series.n, series.bound, out)


def omega_geq(series: LaurentSeriesBounded) -> MultiSeries:
    """Keep terms with every lambda exponent >= 0 and set lambda = 1."""
    if series.pruned:
        raise OmegaError("pruned expansions only support omega_eq")
    out: dict = {}
    for (lam, x, s), c in series.terms.items():
        if all(e >= 0 for e in lam):
            out[(s, x)] = out.get((s, x), 0) + c
    return MultiSeries(series.n, series.bound, out)


def omega_pipeline(g: Graph, S: int) -> MultiSeries:
    return omega_eq(expand_bounded(crude_form(g), S))


# ----------------------------------------------------------------- diag


def _tag(f: MultiSeries, i: int, j: int, shift: int) -> LaurentSeriesBounded:
    """``lambda^shift * f(.., lambda x_i, .., x_j / lambda, ..)``."""
    terms = {}
    for (s, a), c in f.terms.items():
        e = a[i - 1] - a[j - 1] + shift
        key = ((e,), a, s)
        terms[key] = terms.get(key, 0) + c
    cap = max([abs(k[0][0]) for k in terms] + [0])
    return LaurentSeriesBounded(1, f.n, f.bound, cap, terms)


def _check_pair(f: MultiSeries, i: int, j: int) -> None:
    if i == j or not (1 <= i <= f.n and 1 <= j <= f.n):
        raise OmegaError(f"diag needs two distinct edge indices in 1..{f.n}, got {i}, {j}")


def diag_eq(f: MultiSeries, i: int, j: int, check: bool = False) -> MultiSeries:
    _check_pair(f, i, j)
    out = f.filter(lambda a, s: a[i - 1] == a[j - 1])
    if check and omega_eq(_tag(f, i, j, 0)) != out:
        raise OmegaError(f"diag_eq({i},{j}) disagrees with its Omega realization")
    return out


def diag_gt(f: MultiSeries, i: int, j: int, check: bool = False) -> MultiSeries:
    _check_pair(f, i, j)
    out = f.filter(lambda a, s: a[i - 1] > a[j - 1])
    if check and omega_geq(_tag(f, i, j, -1)) != out:
        raise OmegaError(f"diag_gt({i},{j}) disagrees with its Omega realization")
    return out


def inclusion_exclusion(f: MultiSeries, check: bool = False) -> MultiSeries:
    """Apply ``(1 - diag_{x_i, x_j})`` for every pair ``i < j`` in turn."""
    for i, j in itertools.combinations(range(1, f.n + 1), 2):
        f = f - diag_eq(f, i, j, check=check)
    return f


def _distinct(a: Sequence[int]) -> bool:
    return len(set(a)) == len(a)


def distinct_truncation(g: Graph, S: int, mode: str = "filter",
                        threads: int | None = None) -> MultiSeries:
    """``E^G(x, y)`` truncated at ``y^S``.

    ``filter`` drops repeated-label terms of the full truncation, ``literal``
    applies the operator product, ``search`` runs the distinct-label search.
    """
    if mode == "search":
        return multivariate_truncation(g, S, distinct=True, threads=threads)
    full = multivariate_truncation(g, S, threads=threads)
    if mode == "filter":
        return full.filter(lambda a, s: _distinct(a))
    if mode == "literal":
        return inclusion_exclusion(full)
    raise OmegaError(f"unknown mode {mode!r}")


@lru_cache(maxsize=8)
def _order_index(g: Graph, S: int) -> dict[tuple[int, ...], tuple]:
    index: dict[tuple[int, ...], list] = {}
    for s in range(S + 1):
        for lab in enumerate_magic(g, s, distinct=True):
            index.setdefault(order_of(lab), []).append((s, lab))
    return {k: tuple(v) for k, v in index.items()}


def ordered_truncation(g: Graph, pi: Sequence[int], S: int, via_omega: bool = False,
                       threads: int | None = None) -> MultiSeries:
    """Terms with labels strictly decreasing along ``pi`` (1-indexed edges)."""
    pi = tuple(pi)
    if sorted(pi) != list(range(1, g.n + 1)):
        raise OmegaError(f"{list(pi)} is not a permutation of 1..{g.n}")
    if via_omega:
        f = multivariate_truncation(g, S, threads=threads)
        for p, q in reversed(list(zip(pi, pi[1:]))):
            f = diag_gt(f, p, q, check=True)
        return f
    # a strictly ordered labelling is distinct and its decreasing order is pi
    return MultiSeries(g.n, S, {key: 1 for key in _order_index(g, S).get(pi, ())})


def order_of(lab: Sequence[int]) -> tuple[int, ...]:
    """The permutation (1-indexed) listing edges by decreasing label."""
    return tuple(k + 1 for k in sorted(range(len(lab)), key=lambda k: -lab[k]))


def realized_orders(g: Graph, S: int, threads: int | None = None) -> Counter:
    """How many distinct labellings with sum <= S realize each order."""
    out: Counter = Counter()
    for s in range(S + 1):
        for lab in enumerate_magic(g, s, distinct=True, threads=threads):
            out[order_of(lab)] += 1
    return out
