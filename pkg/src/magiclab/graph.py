"""Graphs, vertex weights and the magic constraint system.

Vertices and edges are 1-indexed in every public function and file format.
The edge order of a :class:`Graph` is fixed and defines the coordinate order
of all labelling vectors used elsewhere in the package.

A loop at ``v`` contributes its label once to ``wt(v)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    name: str
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    _incident: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.num_vertices < 1:
            raise GraphError("a graph needs at least one vertex")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for k, (u, v) in enumerate(edges, 1):
            if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                raise GraphError(f"edge {k} = ({u}, {v}) has an endpoint "
                                 f"outside 1..{self.num_vertices}")
        object.__setattr__(self, "edges", edges)
        inc: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for k, (u, v) in enumerate(edges, 1):
            inc[u - 1].append(k)
            if v != u:
                inc[v - 1].append(k)
        object.__setattr__(self, "_incident", tuple(tuple(x) for x in inc))

    @property
    def m(self) -> int:
        return self.num_vertices

    @property
    def n(self) -> int:
        return len(self.edges)

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Edge indices incident to vertex ``v`` (each loop listed once)."""
        if not 1 <= v <= self.num_vertices:
            raise GraphError(f"vertex {v} out of range 1..{self.num_vertices}")
        return self._incident[v - 1]

    def degree(self, v: int) -> int:
        return len(self.incident_edges(v))

    def regular_degree(self) -> int | None:
        degs = {len(inc) for inc in self._incident}
        return degs.pop() if len(degs) == 1 else None

    def to_dict(self) -> dict:
        return {"name": self.name, "vertices": self.num_vertices,
                "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            return cls(str(data.get("name", "graph")), int(data["vertices"]),
                       tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph description: {exc}") from exc


def load_graph(path: str | Path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return Graph.from_dict(json.load(fh))


def dump_graph(g: Graph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(g.to_dict(), fh, indent=1)
        fh.write("\n")


def _from_rows(name: str, rows: Sequence[Sequence[int]]) -> Graph:
    """Build a graph from vertex equations: row i lists the edges at v_i."""
    where: dict[int, list[int]] = {}
    for i, row in enumerate(rows, 1):
        for k in row:
            where.setdefault(k, []).append(i)
    n = max(where)
    edges = []
    for k in range(1, n + 1):
        ends = where.get(k, [])
        if len(ends) != 2:
            raise GraphError(f"{name}: edge {k} appears in {len(ends)} rows")
        edges.append(tuple(ends))
    return Graph(name, len(rows), tuple(edges))


# Vertex rows are the equation systems written out for each graph.
_G1_ROWS = [(1, 4, 5), (1, 2, 6), (2, 3, 5), (3, 4, 6)]
_G2_ROWS = [(4, 6, 8), (1, 2, 7), (4, 5, 9), (2, 3, 8), (5, 6, 7), (1, 3, 9)]
# First row is x1+x5+x6; reading it as x4+x5+x6 would put edge 4 on three vertices.
_G3_ROWS = [(1, 5, 6), (1, 2, 7), (2, 3, 8), (3, 4, 9),
            (4, 5, 10), (7, 8, 11), (9, 11, 12), (6, 10, 12)]

# Hexagon v1..v6 with edge i = (v_i, v_{i+1}), then the three long diagonals.
_G4_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (2, 5), (3, 6), (1, 4))

# K_{2,3}: parts {v1, v5} and {v2, v3, v4}.
_G5A_EDGES = ((1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5))
# Triangle v2 v3 v4 with pendant v1.
_G5B_EDGES = ((1, 2), (2, 3), (2, 4), (3, 4))

CATALOG_NAMES = ("G1", "G2", "G3", "G4", "G5a", "G5b")


def catalog_graph(name: str) -> Graph:
    key = {c.lower(): c for c in CATALOG_NAMES}.get(name.lower())
    if key == "G1":
        return _from_rows("G1", _G1_ROWS)
    if key == "G2":
        return _from_rows("G2", _G2_ROWS)
    if key == "G3":
        return _from_rows("G3", _G3_ROWS)
    if key == "G4":
        return Graph("G4", 6, _G4_EDGES)
    if key == "G5a":
        return Graph("G5a", 5, _G5A_EDGES)
    if key == "G5b":
        return Graph("G5b", 4, _G5B_EDGES)
    raise GraphError(f"unknown catalog graph {name!r}; "
                     f"known: {', '.join(CATALOG_NAMES)}")


def resolve_graph(source: str) -> Graph:
    """Catalog name or path to a JSON graph file."""
    if source.lower() in {c.lower() for c in CATALOG_NAMES}:
        return catalog_graph(source)
    path = Path(source)
    if path.exists():
        return load_graph(path)
    raise GraphError(f"{source!r} is neither a catalog graph nor a file")


@dataclass(frozen=True)
class ConstraintSystem:
    """``A (alpha, s)^T = 0``; the last column is the ``-s`` column."""
    matrix: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0


def constraint_matrix(g: Graph) -> ConstraintSystem:
    rows = []
    for v in range(1, g.m + 1):
        row = [0] * (g.n + 1)
        for k in g.incident_edges(v):
            row[k - 1] = 1
        row[g.n] = -1
        rows.append(tuple(row))
    return ConstraintSystem(tuple(rows))


def _check_length(g: Graph, lab: Sequence[int]) -> None:
    if len(lab) != g.n:
        raise GraphError(f"labelling has length {len(lab)}, graph has {g.n} edges")


def weight(g: Graph, lab: Sequence[int], v: int) -> int:
    _check_length(g, lab)
    return sum(lab[k - 1] for k in g.incident_edges(v))


def weights(g: Graph, lab: Sequence[int]) -> list[int]:
    _check_length(g, lab)
    return [sum(lab[k - 1] for k in inc) for inc in g._incident]


def is_magic(g: Graph, lab: Sequence[int]) -> int | None:
    """Return the magic sum of ``lab`` or ``None`` if the weights differ."""
    if any(a < 0 for a in lab):
        return None
    ws = weights(g, lab)
    return ws[0] if all(w == ws[0] for w in ws) else None


def unit(n: int, *edges: int) -> tuple[int, ...]:
    """Sum of unit vectors e_k for the given 1-indexed edges."""
    v = [0] * n
    for k in edges:
        v[k - 1] += 1
    return tuple(v)


def perfect_matchings(g: Graph) -> list[frozenset[int]]:
    """All perfect matchings as sets of edge indices (brute force)."""
    if g.m % 2:
        return []
    size = g.m // 2
    out = []
    proper = [k for k, (u, v) in enumerate(g.edges, 1) if u != v]
    for combo in itertools.combinations(proper, size):
        ends = [x for k in combo for x in g.edges[k - 1]]
        if len(set(ends)) == g.m:
            out.append(frozenset(combo))
    return out


def graph_summary(g: Graph) -> Iterable[str]:
    yield f"name: {g.name}"
    yield f"vertices: {g.m}"
    yield f"edges: {g.n}"
    for k, (u, v) in enumerate(g.edges, 1):
        yield f"  a{k}: v{u} - v{v}"
    A = constraint_matrix(g)
    yield "constraint rows (incidences, -s):"
    for i, row in enumerate(A.matrix, 1):
        yield f"  v{i}: " + " ".join(f"{x:2d}" for x in row)
