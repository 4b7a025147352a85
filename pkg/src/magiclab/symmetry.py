"""Edge-permutation groups and orbit counting.

A permutation ``sigma`` of edge indices acts on labellings by moving the
label of edge ``k`` to edge ``sigma(k)``: ``(sigma . a)[sigma(k)] = a[k]``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence

from magiclab.graph import Graph

Perm = tuple[int, ...]

MAX_AUTOMORPHISM_VERTICES = 10


class SymmetryError(ValueError):
    pass


def compose(p: Perm, q: Perm) -> Perm:
    """``p o q`` (apply q first), 1-indexed images."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p, 1):
        out[x - 1] = i
    return tuple(out)


def act(p: Perm, lab: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(lab)
    for k, x in enumerate(lab):
        out[p[k] - 1] = x
    return tuple(out)


def _check_perm(p: Sequence[int], n: int) -> Perm:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(1, n + 1)):
        raise SymmetryError(f"{list(p)} is not a permutation of 1..{n}")
    return p


class PermGroup:
    """A small permutation group stored as its full element list."""

    def __init__(self, degree: int, elements: Iterable[Sequence[int]]):
        self.degree = degree
        elems = {_check_perm(p, degree) for p in elements}
        self.elements: tuple[Perm, ...] = tuple(sorted(elems))
        ident = tuple(range(1, degree + 1))
        if ident not in elems:
            raise SymmetryError("element list lacks the identity")
        for p in self.elements:
            if inverse(p) not in elems:
                raise SymmetryError(f"inverse of {p} missing")
            for q in self.elements:
                if compose(p, q) not in elems:
                    raise SymmetryError(f"not closed: {p} o {q}")

    @classmethod
    def generate(cls, degree: int, generators: Iterable[Sequence[int]]) -> "PermGroup":
        gens = [_check_perm(g, degree) for g in generators]
        ident = tuple(range(1, degree + 1))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = compose(g, p)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return cls(degree, seen)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.elements)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and set(self.elements) <= set(other.elements)

    def to_json(self) -> str:
        return json.dumps([list(p) for p in self.elements])

    @classmethod
    def from_json(cls, text: str) -> "PermGroup":
        data = json.loads(text)
        if not isinstance(data, list) or not data:
            raise SymmetryError("group file must be a non-empty JSON list of permutations")
        return cls(len(data[0]), data)


def load_group(path: str | Path) -> PermGroup:
    return PermGroup.from_json(Path(path).read_text())


def _edge_image(g: Graph, vperm: Sequence[int]) -> Perm | None:
    """Push a vertex bijection to edges; parallel edges map in order."""
    slots: dict[tuple[int, int], list[int]] = {}
    for k, (u, v) in enumerate(g.edges, 1):
        slots.setdefault((min(u, v), max(u, v)), []).append(k)
    img = [0] * g.n
    for key, ks in slots.items():
        a, b = vperm[key[0] - 1], vperm[key[1] - 1]
        target = slots.get((min(a, b), max(a, b)))
        if target is None or len(target) != len(ks):
            return None
        for k, t in zip(ks, target):
            img[k - 1] = t
    return tuple(img)


def vertex_automorphisms(g: Graph) -> list[tuple[int, ...]]:
    if g.m > MAX_AUTOMORPHISM_VERTICES:
        raise SymmetryError(f"automorphism search limited to {MAX_AUTOMORPHISM_VERTICES} "
                            f"vertices, graph has {g.m}")
    adj = Counter((min(u, v), max(u, v)) for u, v in g.edges)
    deg = [g.degree(v) for v in range(1, g.m + 1)]
    out = []
    img = [0] * g.m
    used = [False] * (g.m + 1)

    def rec(v: int) -> None:
        if v > g.m:
            out.append(tuple(img))
            return
        for w in range(1, g.m + 1):
            if used[w] or deg[w - 1] != deg[v - 1]:
                continue
            img[v - 1] = w
            ok = True
            for u in range(1, v + 1):
                a, b = img[u - 1], w
                if adj[(min(u, v), max(u, v))] != adj[(min(a, b), max(a, b))]:
                    ok = False
                    break
            if ok:
                used[w] = True
                rec(v + 1)
                used[w] = False
        img[v - 1] = 0

    rec(1)
    return out


def automorphisms(g: Graph) -> PermGroup:
    """All vertex automorphisms, as edge permutations."""
    elems = {p for vp in vertex_automorphisms(g)
             if (p := _edge_image(g, vp)) is not None}
    return PermGroup(g.n, elems)


def d6_group_g4(g: Graph | None = None) -> PermGroup:
    """Rotation ``v_i -> v_{i+1}`` and reflection ``v_i -> v_{2-i}`` (mod 6)."""
    if g is None:
        from magiclab.graph import catalog_graph
        g = catalog_graph("G4")
    if g.m != 6:
        raise SymmetryError("the hexagon group needs a 6-vertex graph")
    rot = tuple(v % 6 + 1 for v in range(1, 7))
    ref = tuple((2 - v) % 6 or 6 for v in range(1, 7))
    gens = []
    for vp in (rot, ref):
        p = _edge_image(g, vp)
        if p is None:
            raise SymmetryError("hexagon symmetry is not an automorphism of this graph")
        gens.append(p)
    return PermGroup.generate(g.n, gens)


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n, [tuple(range(1, n + 1))])


def orbits(labellings: Iterable[Sequence[int]], grp: PermGroup) -> dict[tuple, list[tuple]]:
    """Map each orbit's lexicographic minimum to its members (within the input)."""
    pool = {tuple(x) for x in labellings}
    out: dict[tuple, list[tuple]] = {}
    seen: set[tuple] = set()
    for lab in sorted(pool):
        if lab in seen:
            continue
        orbit = {act(p, lab) for p in grp.elements}
        members = sorted(orbit & pool)
        seen.update(orbit)
        out[min(orbit)] = members
    return out


def orbit_count(labellings: Iterable[Sequence[int]], grp: PermGroup) -> tuple[int, list[tuple]]:
    reps = sorted(orbits(labellings, grp))
    return len(reps), reps
