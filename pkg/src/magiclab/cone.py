"""Exact linear algebra on the magic cone ``{(alpha, s) >= 0 : A (alpha, s)^T = 0}``.

Extreme rays come from an incremental double description: start from the
nullspace of ``A`` as a lineality space and intersect with the halfspaces
``x_k >= 0`` one coordinate at a time. Feasibility of ordering constraints
is decided by Fourier-Motzkin elimination with strictness tracking.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from magiclab import linalg
from magiclab.graph import ConstraintSystem, Graph, constraint_matrix


class ConeError(ValueError):
    pass


def nullspace_basis(cs: ConstraintSystem) -> list[list[Fraction]]:
    return linalg.nullspace(cs.matrix, cs.cols)


def dimension(g: Graph) -> int:
    return len(nullspace_basis(constraint_matrix(g)))


class Ray(tuple):
    """Primitive nonnegative integer vector ``(alpha_1..alpha_n, s)``."""

    @property
    def alpha(self) -> tuple[int, ...]:
        return tuple(self[:-1])

    @property
    def s(self) -> int:
        return self[-1]


def _prim(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def extreme_rays(g: Graph, order: Sequence[int] | None = None) -> list[Ray]:
    """All extreme rays of the magic cone of ``g``, sorted lexicographically.

    ``order`` permutes the coordinate halfspaces (0-indexed, ``n`` is the
    ``s`` coordinate); the result does not depend on it.
    """
    cs = constraint_matrix(g)
    dim = cs.cols
    order = list(range(dim)) if order is None else list(order)
    if sorted(order) != list(range(dim)):
        raise ConeError("halfspace order must permute the coordinates")
    lineality = [_prim(linalg.primitive(v)) for v in nullspace_basis(cs)]
    rays: list[tuple[tuple[int, ...], int]] = []  # (vector, zero-set bitmask)
    done = 0
    for c in order:
        bit = 1 << c
        idx = next((i for i, l in enumerate(lineality) if l[c] != 0), None)
        if idx is not None:
            pivot = lineality.pop(idx)
            if pivot[c] < 0:
                pivot = tuple(-x for x in pivot)
            pc = pivot[c]
            lineality = [_prim([pc * a - l[c] * b for a, b in zip(l, pivot)])
                         for l in lineality]
            rays = [(_prim([pc * a - r[c] * b for a, b in zip(r, pivot)]), z | bit)
                    for r, z in rays]
            rays.append((pivot, done))
        else:
            pos = [(r, z) for r, z in rays if r[c] > 0]
            neg = [(r, z) for r, z in rays if r[c] < 0]
            zero = [(r, z | bit) for r, z in rays if r[c] == 0]
            new = []
            for p, zp in pos:
                for q, zq in neg:
                    common = zp & zq
                    if any((zr & common) == common
                           for r, zr in rays if r is not p and r is not q):
                        continue
                    w = _prim([p[c] * b - q[c] * a for a, b in zip(p, q)])
                    new.append((w, common | bit))
            rays = pos + zero + new
        done |= bit
    if lineality:
        raise ConeError("cone is not pointed")
    return sorted(Ray(r) for r, _ in rays)


# ------------------------------------------------------------ Fourier-Motzkin


@dataclass
class InequalitySystem:
    """Linear forms over ``num_vars`` variables.

    A form is a sequence of ``num_vars`` coefficients, optionally followed by
    a constant term; ``equalities`` are ``= 0``, ``weak`` are ``>= 0`` and
    ``strict`` are ``> 0``.
    """
    num_vars: int
    equalities: list = field(default_factory=list)
    weak: list = field(default_factory=list)
    strict: list = field(default_factory=list)

    def __post_init__(self):
        for name in ("equalities", "weak", "strict"):
            forms = []
            for f in getattr(self, name):
                f = [Fraction(x) for x in f]
                if len(f) == self.num_vars:
                    f.append(Fraction(0))
                elif len(f) != self.num_vars + 1:
                    raise ConeError(f"form of length {len(f)} in a "
                                    f"{self.num_vars}-variable system")
                forms.append(f)
            setattr(self, name, forms)


def _normalize(coefs: Sequence[Fraction], const: Fraction):
    """Scale so the coefficients are coprime integers; returns (coefs, const)."""
    den = 1
    for x in coefs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in coefs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints), const
    return tuple(x // g for x in ints), const * den / g


def fm_feasible(sys: InequalitySystem) -> bool:
    """True iff the system has a rational solution."""
    nv = sys.num_vars
    if nv < 1:
        raise ConeError("need at least one variable")
    # eliminate equalities by substitution
    eqs = [list(f) for f in sys.equalities]
    ineqs = [(list(f), False) for f in sys.weak] + [(list(f), True) for f in sys.strict]
    while eqs:
        e = eqs.pop()
        j = next((i for i in range(nv) if e[i] != 0), None)
        if j is None:
            if e[nv] != 0:
                return False
            continue

        def sub(f, e=e, j=j):
            if f[j] == 0:
                return f
            r = f[j] / e[j]
            return [a - r * b for a, b in zip(f, e)]

        eqs = [sub(f) for f in eqs]
        ineqs = [(sub(f), st) for f, st in ineqs]

    rows: dict[tuple[int, ...], tuple[Fraction, bool]] = {}

    def add(coefs, const, strict) -> bool:
        coefs, const = _normalize(coefs, const)
        if not any(coefs):
            return const > 0 or (const == 0 and not strict)
        old = rows.get(coefs)
        if old is None or const < old[0] or (const == old[0] and strict and not old[1]):
            rows[coefs] = (const, strict)
        return True

    for f, st in ineqs:
        if not add(f[:nv], f[nv], st):
            return False

    alive = set(range(nv))
    while alive and rows:
        def cost(j):
            p = sum(1 for c in rows if c[j] > 0)
            q = sum(1 for c in rows if c[j] < 0)
            return (p * q - p - q, j)
        j = min(alive, key=cost)
        alive.discard(j)
        items = list(rows.items())
        pos = [(c, k, st) for c, (k, st) in items if c[j] > 0]
        neg = [(c, k, st) for c, (k, st) in items if c[j] < 0]
        rows = {c: v for c, v in items if c[j] == 0}
        for cp, kp, sp in pos:
            for cn, kn, sn in neg:
                a, b = -cn[j], cp[j]
                coefs = [Fraction(a * x + b * y) for x, y in zip(cp, cn)]
                if not add(coefs, a * kp + b * kn, sp or sn):
                    return False
    return True


# ------------------------------------------------------------ ordering cones


class AffineLabels:
    """Labels as affine functions of free parameters: ``alpha = base + M t``.

    ``nonneg_params`` adds ``t >= 0``; ``nonneg_labels`` adds ``alpha >= 0``.
    """

    def __init__(self, matrix: Sequence[Sequence], base: Sequence | None = None,
                 nonneg_params: bool = False, nonneg_labels: bool = True):
        self.matrix = [[Fraction(x) for x in row] for row in matrix]
        self.n = len(self.matrix)
        self.d = len(self.matrix[0]) if self.matrix else 0
        self.base = [Fraction(x) for x in (base or [0] * self.n)]
        self.nonneg_params = nonneg_params
        self.nonneg_labels = nonneg_labels

    def form(self, k: int) -> list[Fraction]:
        """Label ``k`` (0-indexed) as a form over the parameters."""
        return self.matrix[k] + [self.base[k]]

    def diff(self, i: int, j: int) -> list[Fraction]:
        return [a - b for a, b in zip(self.form(i), self.form(j))]

    def system(self, prefix: Sequence[int]) -> InequalitySystem:
        """Constraints for labels decreasing along ``prefix`` (0-indexed).

        A proper prefix also requires its last label to exceed every label
        outside it, so infeasibility prunes all completions.
        """
        nv = max(self.d, 1)
        pad = [] if self.d else [Fraction(0)]
        strict, weak = [], []
        for a, b in zip(prefix, prefix[1:]):
            strict.append(self.diff(a, b)[:-1] + pad + [self.diff(a, b)[-1]])
        if prefix and len(prefix) < self.n:
            rest = [k for k in range(self.n) if k not in prefix]
            for k in rest:
                f = self.diff(prefix[-1], k)
                strict.append(f[:-1] + pad + [f[-1]])
        if self.nonneg_labels:
            for k in range(self.n):
                f = self.form(k)
                weak.append(f[:-1] + pad + [f[-1]])
        if self.nonneg_params:
            for i in range(self.d):
                weak.append([Fraction(int(i == j)) for j in range(self.d)] + [Fraction(0)])
        return InequalitySystem(nv, weak=weak, strict=strict)

    def feasible(self, prefix: Sequence[int]) -> bool:
        return fm_feasible(self.system(prefix))


def graph_labels(g: Graph) -> AffineLabels:
    """Magic labellings parametrized by a nullspace basis (free parameters)."""
    basis = nullspace_basis(constraint_matrix(g))
    if not basis:
        return AffineLabels([[] for _ in range(g.n)])
    return AffineLabels([[v[k] for v in basis] for k in range(g.n)])


def piece_labels(piece) -> AffineLabels:
    gens = [list(x) for x in piece.generators]
    if gens and linalg.rank(gens) < len(gens):
        raise ConeError("piece generators are linearly dependent")
    n = len(piece.shift)
    matrix = [[gen[k] for gen in gens] for k in range(n)]
    return AffineLabels(matrix, piece.shift, nonneg_params=True)


def _check_perm(pi: Sequence[int], n: int) -> list[int]:
    if sorted(pi) != list(range(1, n + 1)):
        raise ConeError(f"{list(pi)} is not a permutation of 1..{n}")
    return [k - 1 for k in pi]


def order_feasible(g: Graph, pi: Sequence[int]) -> bool:
    """Is there a magic labelling with ``alpha[pi_1] > ... > alpha[pi_n] >= 0``?

    Built directly as an equality-constrained system over ``(alpha, s)``.
    """
    p = _check_perm(pi, g.n)
    A = constraint_matrix(g).matrix
    nv = g.n + 1
    strict = []
    for a, b in zip(p, p[1:]):
        f = [0] * nv
        f[a], f[b] = 1, -1
        strict.append(f)
    weak = [[int(i == k) for i in range(nv)] for k in range(nv)]
    return fm_feasible(InequalitySystem(nv, equalities=[list(r) for r in A],
                                        weak=weak, strict=strict))


def piece_order_feasible(piece, pi: Sequence[int]) -> bool:
    labels = piece_labels(piece)
    return labels.feasible(_check_perm(pi, labels.n))


def _sweep_from(labels: AffineLabels, first: int) -> list[tuple[int, ...]]:
    n = labels.n
    out = []

    def rec(prefix):
        if not labels.feasible(prefix):
            return
        if len(prefix) == n:
            out.append(tuple(k + 1 for k in prefix))
            return
        for k in range(n):
            if k not in prefix:
                rec(prefix + [k])

    rec([first])
    return out


def feasible_orders(labels: AffineLabels, workers: int = 1) -> list[tuple[int, ...]]:
    """All permutations (1-indexed) whose strict chain is feasible.

    Depth-first over prefixes; an infeasible prefix prunes its subtree.
    """
    firsts = range(labels.n)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_from, itertools.repeat(labels), firsts))
    else:
        parts = [_sweep_from(labels, f) for f in firsts]
    return sorted(p for part in parts for p in part)


def graph_feasible_orders(g: Graph, workers: int = 1) -> list[tuple[int, ...]]:
    return feasible_orders(graph_labels(g), workers)


def piece_feasible_orders(piece, workers: int = 1) -> list[tuple[int, ...]]:
    return feasible_orders(piece_labels(piece), workers)


def in_cone_of(vec: Sequence[int], rays: Iterable[Sequence[int]]) -> bool:
    """Is ``vec`` a nonnegative rational combination of ``rays``?"""
    rays = [list(r) for r in rays]
    if not rays:
        return not any(vec)
    d = len(rays)
    eqs = [[r[k] for r in rays] + [-vec[k]] for k in range(len(vec))]
    weak = [[int(i == j) for j in range(d)] for i in range(d)]
    return fm_feasible(InequalitySystem(d, equalities=eqs, weak=weak))
