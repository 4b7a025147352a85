"""Shifted free monoids and decompositions of ``S(G)``.

A piece is ``{shift + sum l_i * gen_i : l in N^d}`` with independent
generators. A decomposition is a list of pieces claimed to cover every magic
labelling exactly once; :func:`verify_decomposition` checks that claim
against exhaustive enumeration in both directions.

The G3 helpers implement the coordinate system ``alpha = sum k_i gamma_i``
(i = 1..5), the five-way classification of ``k`` and the affine change of
variables taking each class onto its piece.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from magiclab import linalg
from magiclab.graph import Graph, catalog_graph, is_magic, unit


class DecompositionError(ValueError):
    pass


class DecompositionViolation(DecompositionError):
    """A labelling represented by zero or several pieces."""

    def __init__(self, alpha, witnesses):
        self.alpha = tuple(alpha)
        self.witnesses = witnesses
        super().__init__(f"{list(alpha)} is represented by {len(witnesses)} pieces: "
                         f"{witnesses}")


class NotInSpan(ValueError):
    pass


@dataclass(frozen=True)
class MonoidPiece:
    graph: Graph
    shift: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    name: str = ""
    _solver: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.graph.n
        object.__setattr__(self, "shift", tuple(self.shift))
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        for v in (self.shift, *self.generators):
            if len(v) != n:
                raise DecompositionError(f"vector {v} has length {len(v)}, expected {n}")
        d = len(self.generators)
        if d:
            # square subsystem on d independent coordinates, inverted once
            cols = [list(x) for x in zip(*self.generators)]  # n x d
            _, rows = linalg.rref(list(zip(*cols)))  # pivots of the d x n matrix
            if len(rows) < d:
                raise DecompositionError(f"piece {self.name or ''} has dependent generators")
            sub = [cols[r] for r in rows]
            inv = []
            for i in range(d):
                e = [Fraction(int(i == j)) for j in range(d)]
                inv.append(linalg.solve(sub, e))
            inverse = [[inv[j][i] for j in range(d)] for i in range(d)]
            object.__setattr__(self, "_solver", (tuple(rows), inverse))
        else:
            object.__setattr__(self, "_solver", ((), []))

    @property
    def d(self) -> int:
        return len(self.generators)

    def magic_sum(self, vec: Sequence[int]) -> int:
        s = is_magic(self.graph, vec)
        if s is None:
            raise DecompositionError(f"{list(vec)} is not a magic labelling of {self.graph.name}")
        return s

    def element(self, l: Sequence[int]) -> tuple[int, ...]:
        out = list(self.shift)
        for li, gen in zip(l, self.generators):
            if li:
                for k, x in enumerate(gen):
                    out[k] += li * x
        return tuple(out)

    def solve(self, alpha: Sequence[int]) -> list[Fraction] | None:
        """Rational ``l`` with ``alpha - shift = sum l_i gen_i``, if any."""
        rows, inverse = self._solver
        diff = [a - b for a, b in zip(alpha, self.shift)]
        l = [sum(inverse[i][j] * diff[r] for j, r in enumerate(rows)) for i in range(self.d)]
        recon = [Fraction(b) for b in self.shift]
        for li, gen in zip(l, self.generators):
            for k, x in enumerate(gen):
                recon[k] += li * x
        if any(r != a for r, a in zip(recon, alpha)):
            return None
        return l

    def to_dict(self) -> dict:
        return {"shift": list(self.shift), "generators": [list(g) for g in self.generators]}


def piece_represent(piece: MonoidPiece, alpha: Sequence[int]) -> tuple[int, ...] | None:
    l = piece.solve(alpha)
    if l is None or any(x < 0 or x.denominator != 1 for x in l):
        return None
    return tuple(int(x) for x in l)


@dataclass(frozen=True)
class Decomposition:
    graph: Graph
    pieces: tuple[MonoidPiece, ...]

    @property
    def graph_name(self) -> str:
        return self.graph.name

    def to_json(self) -> str:
        return json.dumps({"graph": self.graph.name,
                           "pieces": [p.to_dict() for p in self.pieces]}, indent=1)

    @classmethod
    def from_dict(cls, data: dict, graph: Graph | None = None) -> "Decomposition":
        g = graph if graph is not None else catalog_graph(data["graph"])
        pieces = tuple(MonoidPiece(g, tuple(p["shift"]), tuple(map(tuple, p["generators"])),
                                   name=p.get("name", f"piece{i + 1}"))
                       for i, p in enumerate(data["pieces"]))
        return cls(g, pieces)


def load_decomposition(path: str | Path, graph: Graph | None = None) -> Decomposition:
    with open(path, encoding="utf-8") as fh:
        return Decomposition.from_dict(json.load(fh), graph)


def decomp_represent(decomp: Decomposition, alpha: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """The unique ``(piece index, l)`` representing ``alpha`` (0-based index)."""
    hits = [(i, l) for i, p in enumerate(decomp.pieces)
            if (l := piece_represent(p, alpha)) is not None]
    if len(hits) != 1:
        raise DecompositionViolation(alpha, hits)
    return hits[0]


# ----------------------------------------------------------- builtin pieces

def _vec(n, *edges):
    return unit(n, *edges)


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


def g2_betas() -> dict[int, tuple[int, ...]]:
    return {1: _vec(9, 1, 5, 8), 2: _vec(9, 2, 6, 9), 3: _vec(9, 3, 4, 7),
            4: _vec(9, 7, 8, 9), 5: _vec(9, 1, 2, 3, 4, 5, 6)}


def g3_gammas() -> dict[int, tuple[int, ...]]:
    n = 12
    g4 = list(_vec(n, 2, 5, 6, 7, 8, 9, 10))
    g4[8] = 2
    return {
        1: _vec(n, 1, 3, 10, 11),
        2: _vec(n, 2, 4, 6, 11),
        3: _vec(n, 3, 5, 7, 12),
        4: tuple(g4),
        5: _vec(n, 2, 3, 5, 6, 7, 9, 10, 11),
        6: _vec(n, 1, 4, 8, 12),
        7: _vec(n, 2, 4, 5, 6, 7, 8, 9, 12),
        8: _vec(n, 1, 8, 9, 10),
    }


G3_TYPES = ("a", "b", "c1", "c2", "c3")


def builtin_decomposition(name: str) -> Decomposition:
    g = catalog_graph(name)
    key = g.name
    if key == "G1":
        a = [_vec(6, 2, 4), _vec(6, 1, 3), _vec(6, 5, 6)]
        pieces = [MonoidPiece(g, (0,) * 6, a, "free")]
    elif key == "G2":
        b = g2_betas()
        pieces = [MonoidPiece(g, (0,) * 9, [b[1], b[2], b[3], b[4]], "B1"),
                  MonoidPiece(g, b[5], [b[1], b[2], b[3], b[5]], "B2")]
    elif key == "G3":
        c = g3_gammas()
        z = (0,) * 12
        pieces = [
            MonoidPiece(g, z, [c[1], c[2], c[3], c[4], c[5]], "Ta"),
            MonoidPiece(g, c[8], [c[1], c[2], c[3], c[4], c[8]], "Tb"),
            MonoidPiece(g, c[6], [c[1], c[2], c[3], c[6], c[8]], "Tc1"),
            MonoidPiece(g, _add(c[4], c[6]), [c[2], c[3], c[4], c[6], c[8]], "Tc2"),
            MonoidPiece(g, c[7], [c[2], c[3], c[4], c[6], c[7]], "Tc3"),
        ]
    elif key == "G4":
        m = {k: _vec(9, *e) for k, e in {
            "148": (1, 4, 8), "246": (2, 4, 6), "259": (2, 5, 9),
            "367": (3, 6, 7), "135": (1, 3, 5), "789": (7, 8, 9)}.items()}
        pieces = [
            MonoidPiece(g, m["246"], [m["148"], m["246"], m["259"], m["367"], m["135"]], "F1"),
            MonoidPiece(g, (0,) * 9, [m["148"], m["259"], m["367"], m["789"], m["135"]], "F2"),
            MonoidPiece(g, _add(m["246"], m["789"]),
                        [m["789"], m["367"], m["259"], m["246"], m["148"]], "F3"),
        ]
    else:
        raise DecompositionError(f"no builtin decomposition for {name!r}")
    return Decomposition(g, tuple(pieces))


# ------------------------------------------------------------- verification


@dataclass
class VerificationReport:
    graph: str
    max_sum: int
    total: int = 0
    per_sum: list[int] = field(default_factory=list)
    failures: list[DecompositionViolation] = field(default_factory=list)
    converse_checked: int = 0
    converse_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.converse_failures

    def summary(self) -> str:
        return f"{self.total} labellings, {len(self.failures) + len(self.converse_failures)} failures"


def piece_elements(piece: MonoidPiece, S: int):
    """Yield ``(l, element, magic sum)`` for every element with sum <= S."""
    s0 = piece.magic_sum(piece.shift)
    sums = [piece.magic_sum(gen) for gen in piece.generators]
    if any(x == 0 for x in sums):
        raise DecompositionError("generator with magic sum 0 gives infinitely many elements")
    if s0 > S:
        return

    def rec(i, budget, l):
        if i == piece.d:
            yield tuple(l)
            return
        for li in range(budget // sums[i] + 1):
            l.append(li)
            yield from rec(i + 1, budget - li * sums[i], l)
            l.pop()

    for l in rec(0, S - s0, []):
        yield l, piece.element(l), s0 + sum(a * b for a, b in zip(l, sums))


def verify_decomposition(g: Graph, decomp: Decomposition, S: int,
                         threads: int | None = None) -> VerificationReport:
    from magiclab.enumeration import enumerate_magic

    report = VerificationReport(g.name, S)
    for s in range(S + 1):
        labs = enumerate_magic(g, s, threads=threads)
        report.per_sum.append(len(labs))
        for alpha in labs:
            report.total += 1
            try:
                decomp_represent(decomp, alpha)
            except DecompositionViolation as exc:
                report.failures.append(exc)
    # converse: every (piece, l) lands in S(G), and distinct pairs give distinct labellings
    seen: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
    for i, piece in enumerate(decomp.pieces):
        for l, alpha, s in piece_elements(piece, S):
            report.converse_checked += 1
            if is_magic(g, alpha) != s:
                report.converse_failures.append(f"piece {i} l={l}: {alpha} not magic with sum {s}")
            if alpha in seen:
                report.converse_failures.append(
                    f"{alpha} produced by piece {seen[alpha][0]} l={seen[alpha][1]} "
                    f"and piece {i} l={l}")
            else:
                seen[alpha] = (i, l)
    return report


# ---------------------------------------------------------------- G3 tools


@dataclass(frozen=True)
class G3Coordinates:
    k: tuple[Fraction, ...]

    def __iter__(self):
        return iter(self.k)

    def __getitem__(self, i):
        return self.k[i]


def g3_vector(k: Sequence) -> tuple[Fraction, ...]:
    """The labelling ``sum k_i gamma_i`` written out in the edge basis."""
    k1, k2, k3, k4, k5 = (Fraction(x) for x in k)
    return (k1, k2 + k4 + k5, k1 + k3 + k5, k2, k3 + k4 + k5, k2 + k4 + k5,
            k3 + k4 + k5, k4, 2 * k4 + k5, k1 + k4 + k5, k1 + k2 + k5, k3)


def g3_coordinates(alpha: Sequence) -> G3Coordinates:
    if len(alpha) != 12:
        raise ValueError("G3 labellings have 12 coordinates")
    a = [Fraction(x) for x in alpha]
    k = (a[0], a[3], a[11], a[7], a[8] - 2 * a[7])
    if tuple(g3_vector(k)) != tuple(a):
        raise NotInSpan(f"{list(alpha)} is not in the span of gamma_1..gamma_5")
    return G3Coordinates(k)


def _g3_forms(k):
    k1, k2, k3, k4, k5 = k
    return (k1, k2, k3, k4, k1 + k2 + k5, k1 + k3 + k5, k1 + k4 + k5,
            k2 + k4 + k5, k3 + k4 + k5, 2 * k4 + k5)


def g3_membership(k: Sequence) -> bool:
    return all(Fraction(f).denominator == 1 and f >= 0 for f in _g3_forms(tuple(k)))


def g3_classify(k: Sequence) -> str:
    if not g3_membership(k):
        raise ValueError(f"k = {list(k)} does not describe a magic labelling")
    k1, k2, k3, k4, k5 = k
    if k5 >= 0:
        return "a"
    if min(k1, k4) >= -k5:
        return "b"
    if k1 >= k4:
        return "c1"
    if 2 * k1 + k5 >= 0:
        return "c2"
    return "c3"


# l = M k + c, rows l_1..l_5
_G3_TABLE = {
    "a": ([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
          [0, 0, 0, 0, 0]),
    "b": ([[1, 0, 0, 0, 1], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 1], [0, 0, 0, 0, -1]],
          [0, 0, 0, 0, -1]),
    "c1": ([[1, 0, 0, -1, 0], [0, 1, 0, 1, 1], [0, 0, 1, 1, 1], [0, 0, 0, -1, -1], [0, 0, 0, 2, 1]],
           [0, 0, 0, -1, 0]),
    "c2": ([[1, 1, 0, 0, 1], [1, 0, 1, 0, 1], [-1, 0, 0, 1, 0], [-1, 0, 0, 0, -1], [2, 0, 0, 0, 1]],
           [0, 0, -1, -1, 0]),
    "c3": ([[1, 1, 0, 0, 1], [1, 0, 1, 0, 1], [1, 0, 0, 1, 1], [1, 0, 0, 0, 0], [-2, 0, 0, 0, -1]],
           [0, 0, 0, 0, -1]),
}


def g3_transform(k: Sequence, cls: str) -> tuple[str, tuple[int, ...]]:
    """Map ``k`` of class ``cls`` to ``(type tag, l)`` of the matching piece."""
    if g3_classify(k) != cls:
        raise ValueError(f"k = {list(k)} is not of class P_{cls}")
    M, c = _G3_TABLE[cls]
    l = tuple(int(sum(m * x for m, x in zip(row, k)) + ci) for row, ci in zip(M, c))
    return "T" + cls, l


def g3_inverse_transform(tag: str, l: Sequence[int]) -> G3Coordinates:
    cls = tag[1:] if tag.startswith("T") else tag
    M, c = _G3_TABLE[cls]
    k = linalg.solve(M, [Fraction(x) - ci for x, ci in zip(l, c)])
    return G3Coordinates(tuple(k))


def g3_pipeline(alpha: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Coordinates, class, transform; returns (piece index, l) for the builtin pieces."""
    k = g3_coordinates(alpha)
    tag, l = g3_transform(k, g3_classify(k))
    return G3_TYPES.index(tag[1:]), l


_RELATIONS = {
    "b": [(5, {1: 1, 4: 1, 8: -1})],
    "c1": [(4, {1: -1, 2: 1, 3: 1, 6: -1, 8: 2}), (5, {2: 1, 3: 1, 6: -1, 8: 1})],
    # without the -gamma_4 term this identity fails coordinatewise
    "c2": [(1, {2: 1, 3: 1, 4: -1, 6: -1, 8: 2}), (5, {2: 1, 3: 1, 6: -1, 8: 1})],
    "c3": [(1, {2: 1, 3: 1, 4: 1, 6: 1, 7: -2}), (5, {2: 1, 3: 1, 4: 1, 7: -1})],
}


def relation_holds(lhs: int, combo: dict[int, int], gammas=None) -> bool:
    """Does ``gamma_lhs == sum c_j gamma_j`` hold coordinatewise?"""
    gam = g3_gammas() if gammas is None else gammas
    rhs = [0] * 12
    for j, c in combo.items():
        for t in range(12):
            rhs[t] += c * gam[j][t]
    return tuple(rhs) == tuple(gam[lhs])


def gamma_relations_check(gammas: dict[int, Sequence[int]] | None = None) -> dict[str, bool]:
    """Check the seven gamma identities; returns one flag per identity."""
    out = {}
    for tag, rels in _RELATIONS.items():
        for i, (lhs, combo) in enumerate(rels, 1):
            out[f"{tag}.{i}"] = relation_holds(lhs, combo, gammas)
    return out


def all_relations_hold(gammas=None) -> bool:
    return all(gamma_relations_check(gammas).values())

