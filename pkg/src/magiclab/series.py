"""Exact truncated series and rational generating functions.

:class:`MultiSeries` holds ``sum c * x^alpha * y^s`` truncated at ``s <= bound``
and keyed by ``(s, alpha)``. The univariate side covers rational functions
with denominator ``prod (1 - y^d)^mult``, numerator reconstruction from a
coefficient list, and Stanley-form quasi-polynomial fits
``h(s) = P(s) + (-1)^s Q(s)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from magiclab import linalg

Key = tuple[int, tuple[int, ...]]


class SeriesError(ValueError):
    pass


class MultiSeries:
    __slots__ = ("n", "bound", "terms")

    def __init__(self, n: int, bound: int, terms: Mapping[Key, int] | None = None):
        self.n = n
        self.bound = bound
        clean = {}
        for (s, alpha), c in (terms or {}).items():
            if c == 0:
                continue
            if s > bound:
                raise SeriesError(f"term with y^{s} exceeds bound {bound}")
            if len(alpha) != n:
                raise SeriesError("exponent vector has wrong length")
            clean[(s, tuple(alpha))] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def one(cls, n: int, bound: int) -> "MultiSeries":
        return cls(n, bound, {(0, (0,) * n): 1})

    @classmethod
    def monomial(cls, alpha: Sequence[int], s: int, bound: int, coeff: int = 1) -> "MultiSeries":
        alpha = tuple(alpha)
        if s > bound:
            return cls(len(alpha), bound)
        return cls(len(alpha), bound, {(s, alpha): coeff})

    @classmethod
    def geometric(cls, alpha: Sequence[int], s: int, bound: int) -> "MultiSeries":
        """``1 / (1 - x^alpha y^s)`` truncated; needs ``s > 0``."""
        if s <= 0:
            raise SeriesError("geometric factor needs positive y-degree to truncate")
        alpha = tuple(alpha)
        terms = {}
        j = 0
        while j * s <= bound:
            terms[(j * s, tuple(j * a for a in alpha))] = 1
            j += 1
        return cls(len(alpha), bound, terms)

    def _check(self, other: "MultiSeries") -> None:
        if self.n != other.n:
            raise SeriesError("series over different numbers of variables")
        if self.bound != other.bound:
            raise SeriesError(f"truncation bounds differ: {self.bound} vs {other.bound}")

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return MultiSeries(self.n, self.bound, out)

    def __neg__(self) -> "MultiSeries":
        return MultiSeries(self.n, self.bound, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        self._check(other)
        out: dict[Key, int] = {}
        for (s1, a1), c1 in self.terms.items():
            for (s2, a2), c2 in other.terms.items():
                s = s1 + s2
                if s > self.bound:
                    continue
                k = (s, tuple(x + y for x, y in zip(a1, a2)))
                out[k] = out.get(k, 0) + c1 * c2
        return MultiSeries(self.n, self.bound, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.n, self.bound, self.terms) == (other.n, other.bound, other.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"MultiSeries(n={self.n}, bound={self.bound}, terms={len(self.terms)})"

    def coefficient(self, s: int, alpha: Sequence[int]) -> int:
        return self.terms.get((s, tuple(alpha)), 0)

    def filter(self, keep) -> "MultiSeries":
        return MultiSeries(self.n, self.bound,
                           {k: c for k, c in self.terms.items() if keep(k[1], k[0])})

    def y_coefficients(self) -> list[int]:
        """Specialize ``x = 1``: coefficient of ``y^s`` for ``s = 0..bound``."""
        out = [0] * (self.bound + 1)
        for (s, _), c in self.terms.items():
            out[s] += c
        return out

    def to_tsv(self) -> str:
        lines = [f"{s}\t{' '.join(map(str, alpha))}\t{c}"
                 for (s, alpha), c in self.terms.items()]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_tsv(cls, text: str, n: int, bound: int) -> "MultiSeries":
        terms = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            s, alpha, c = line.split("\t")
            terms[(int(s), tuple(int(a) for a in alpha.split()))] = int(c)
        return cls(n, bound, terms)


@dataclass
class SeriesComparison:
    equal: bool
    diffs: list[tuple[Key, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.equal

    def report(self) -> str:
        if self.equal:
            return "series equal"
        return "\n".join(f"y^{s} x^{list(a)}: {c1} != {c2}"
                         for (s, a), c1, c2 in self.diffs)


def series_equal(a: MultiSeries, b: MultiSeries, limit: int = 10) -> SeriesComparison:
    a._check(b)
    diffs = []
    for k in sorted(set(a.terms) | set(b.terms)):
        c1, c2 = a.terms.get(k, 0), b.terms.get(k, 0)
        if c1 != c2:
            diffs.append((k, c1, c2))
            if len(diffs) >= limit:
                break
    return SeriesComparison(not diffs, diffs)


def decomposition_to_truncation(decomp, S: int) -> MultiSeries:
    """Sum over pieces of ``x^shift y^s(shift) / prod (1 - x^gen y^s(gen))``."""
    g = decomp.graph
    total = MultiSeries(g.n, S)
    for piece in decomp.pieces:
        term = MultiSeries.monomial(piece.shift, piece.magic_sum(piece.shift), S)
        for gen in piece.generators:
            sg = piece.magic_sum(gen)
            if sg == 0:
                raise SeriesError(f"generator {gen} has magic sum 0; "
                                  "truncated expansion would not terminate")
            term = term * MultiSeries.geometric(gen, sg, S)
        total = total + term
    return total


# ---------------------------------------------------------------- univariate


@dataclass(frozen=True)
class UniPoly:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        return UniPoly(tuple(poly_mul(self.coeffs, other.coeffs)))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Quotient and remainder; both must come out integral."""
        num = [Fraction(x) for x in self.coeffs]
        den = other.coeffs
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
        for i in range(len(q) - 1, -1, -1):
            q[i] = num[i + len(den) - 1] / den[-1]
            for j, d in enumerate(den):
                num[i + j] -= q[i] * d
        if any(x.denominator != 1 for x in q + num):
            raise SeriesError("quotient is not integral")
        return UniPoly(tuple(int(x) for x in q)), UniPoly(tuple(int(x) for x in num))

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            coef = str(c) if (abs(c) != 1 or i == 0) else ("-" if c < 0 else "")
            parts.append(f"{coef}{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def poly_mul(a: Sequence[int], b: Sequence[int], trunc: int | None = None) -> list[int]:
    if not a or not b:
        return []
    size = len(a) + len(b) - 1
    if trunc is not None:
        size = min(size, trunc)
    out = [0] * size
    for i, x in enumerate(a):
        if x == 0 or i >= size:
            continue
        for j, y in enumerate(b):
            if i + j >= size:
                break
            out[i + j] += x * y
    return out


Factors = tuple[tuple[int, int], ...]


def normalize_factors(factors: Iterable[Sequence[int]]) -> Factors:
    acc: dict[int, int] = {}
    for d, mult in factors:
        if d < 1 or mult < 1:
            raise SeriesError(f"bad denominator factor (1 - y^{d})^{mult}")
        acc[d] = acc.get(d, 0) + mult
    return tuple(sorted(acc.items()))


def parse_factors(text: str) -> Factors:
    """``"1^3,2^1"`` means ``(1 - y)^3 (1 - y^2)``; a bare ``d`` means ``d^1``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        d, _, mult = part.partition("^")
        try:
            out.append((int(d), int(mult or 1)))
        except ValueError:
            raise SeriesError(f"cannot parse denominator factor {part!r}") from None
    return normalize_factors(out)


def denominator_poly(factors: Factors) -> list[int]:
    poly = [1]
    for d, mult in factors:
        binom = [1] + [0] * (d - 1) + [-1]
        for _ in range(mult):
            poly = poly_mul(poly, binom)
    return poly


@dataclass(frozen=True)
class RationalGF:
    numerator: UniPoly
    factors: Factors

    def __init__(self, numerator, factors):
        if not isinstance(numerator, UniPoly):
            numerator = UniPoly(tuple(numerator))
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "factors", normalize_factors(factors))

    def to_json(self) -> str:
        return json.dumps({"numerator": list(self.numerator.coeffs),
                           "factors": [list(f) for f in self.factors]})

    @classmethod
    def from_json(cls, text: str) -> "RationalGF":
        data = json.loads(text)
        return cls(tuple(data["numerator"]), [tuple(f) for f in data["factors"]])

    def __str__(self) -> str:
        def one(d, m):
            base = "(1 - y)" if d == 1 else f"(1 - y^{d})"
            return f"{base}^{m}" if m > 1 else base
        den = " ".join(one(d, m) for d, m in self.factors)
        return f"({self.numerator}) / ({den})" if den else str(self.numerator)


def expand_gf(gf: RationalGF, S: int) -> list[int]:
    """Power-series coefficients ``h(0..S)``."""
    h = list(gf.numerator.coeffs[:S + 1]) + [0] * max(0, S + 1 - len(gf.numerator.coeffs))
    for d, mult in gf.factors:
        for _ in range(mult):
            for i in range(d, S + 1):
                h[i] += h[i - d]
    return h


class ReconstructionError(SeriesError):
    pass


class InsufficientTerms(ReconstructionError):
    pass


class AnsatzMismatch(ReconstructionError):
    pass


def reconstruct_numerator(coeffs: Sequence[int], factors) -> UniPoly:
    """Numerator ``N`` with ``sum h(s) y^s = N / prod (1 - y^d)^mult``.

    The product of the coefficient list with the denominator is only
    trusted up to position ``len(coeffs) - 1``; at least ``deg(denominator)``
    trailing positions must vanish to confirm the ansatz.
    """
    factors = normalize_factors(factors)
    den = denominator_poly(factors)
    L = len(coeffs)
    D = len(den) - 1
    if L <= D:
        raise InsufficientTerms(f"{L} terms do not exceed denominator degree {D}")
    prod = poly_mul(list(coeffs), den, trunc=L)
    last = max((i for i, c in enumerate(prod) if c), default=-1)
    if last > L - 1 - D:
        raise AnsatzMismatch(
            f"numerator candidate has a term at y^{last}, beyond the verifiable "
            f"window y^0..y^{L - 1 - D}; denominator ansatz does not fit")
    return UniPoly(tuple(prod[:last + 1]))


@dataclass(frozen=True)
class QuasiPolynomial:
    """``h(s) = P(s) + (-1)^s Q(s)``; coefficient tuples in increasing degree."""
    P: tuple[Fraction, ...]
    Q: tuple[Fraction, ...]

    def __call__(self, s: int) -> Fraction:
        p = sum(c * s ** i for i, c in enumerate(self.P))
        q = sum(c * s ** i for i, c in enumerate(self.Q))
        return p + (q if s % 2 == 0 else -q)

    @property
    def q_is_zero(self) -> bool:
        return all(c == 0 for c in self.Q)

    def degrees(self) -> tuple[int, int]:
        def deg(cs):
            nz = [i for i, c in enumerate(cs) if c != 0]
            return nz[-1] if nz else -1
        return deg(self.P), deg(self.Q)

    @staticmethod
    def _fmt(cs) -> str:
        parts = [f"({c})*s^{i}" if i else f"({c})" for i, c in enumerate(cs) if c != 0]
        return " + ".join(parts) or "0"

    def __str__(self) -> str:
        return f"P(s) = {self._fmt(self.P)}\nQ(s) = {self._fmt(self.Q)}"


def fit_stanley(values: Sequence[int], degP: int, degQ: int | None = None) -> QuasiPolynomial:
    """Fit ``P`` (degree ``degP``) and ``Q`` (degree ``degQ``, or none).

    Uses the first ``degP + degQ + 2`` values and checks the remainder.
    """
    nq = 0 if degQ is None or degQ < 0 else degQ + 1
    npar = degP + 1 + nq
    if len(values) < npar:
        raise SeriesError(f"need at least {npar} values, got {len(values)}")

    def row(s):
        sign = 1 if s % 2 == 0 else -1
        return [s ** i for i in range(degP + 1)] + [sign * s ** j for j in range(nq)]

    window = range(npar)
    sol = linalg.solve([row(s) for s in window], [values[s] for s in window])
    if sol is None or linalg.rank([row(s) for s in window]) < npar:
        raise SeriesError("fitting window is singular")
    qp = QuasiPolynomial(tuple(sol[:degP + 1]), tuple(sol[degP + 1:]))
    for s, h in enumerate(values):
        if qp(s) != h:
            raise SeriesError(f"inconsistent: fitted h({s}) = {qp(s)} but value is {h}; "
                              "degrees too small")
    return qp
