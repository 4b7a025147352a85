"""Command-line interface: ``magiclab <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Results go to standard output (or ``--output``), progress to standard error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from magiclab import cone, monoid, omega, series, symmetry
from magiclab.enumeration import count_magic, count_series, enumerate_magic
from magiclab.graph import (CATALOG_NAMES, GraphError, catalog_graph, graph_summary, is_magic,
                            resolve_graph)

SCHEMA = 1


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return args.threads
    env = os.environ.get("MAGICLAB_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"MAGICLAB_THREADS={env!r} is not an integer") from None
        if n < 1:
            raise UsageError("MAGICLAB_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _frac(x: Fraction) -> str:
    return str(x)


class Output:
    def __init__(self, args):
        self.fmt = getattr(args, "format", "tsv")
        self.path = getattr(args, "output", None)
        self.lines: list[str] = []

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def json(self, payload: dict) -> None:
        self.lines.append(json.dumps({"schema": SCHEMA, **payload}, indent=1))

    def flush(self) -> None:
        text = "\n".join(self.lines) + ("\n" if self.lines else "")
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _nonneg(name: str, value: int) -> int:
    if value < 0:
        raise UsageError(f"{name} must be >= 0")
    return value


def _tab(vec: Sequence) -> str:
    return "\t".join(str(x) for x in vec)


# ------------------------------------------------------------------ commands


def cmd_graphs(args, out: Output) -> int:
    if args.action == "list":
        graphs = [catalog_graph(n) for n in CATALOG_NAMES]
        if out.fmt == "json":
            out.json({"graphs": [g.to_dict() for g in graphs]})
        else:
            for g in graphs:
                out.line(f"{g.name}\t{g.m}\t{g.n}")
        return 0
    if not args.name:
        raise UsageError("graphs show needs a graph name or file")
    g = resolve_graph(args.name)
    if out.fmt == "json":
        out.json({"graph": g.to_dict()})
    else:
        for line in graph_summary(g):
            out.line(line)
    return 0


def cmd_count(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    s = _nonneg("--sum", args.sum)
    th = _threads(args)
    if args.upto:
        vals = list(count_series(g, s, distinct=args.distinct, threads=th))
        if out.fmt == "json":
            out.json({"graph": g.name, "distinct": args.distinct, "counts": vals})
        else:
            for i, v in enumerate(vals):
                out.line(f"{i}\t{v}")
        return 0
    c = count_magic(g, s, distinct=args.distinct, threads=th)
    if out.fmt == "json":
        out.json({"graph": g.name, "sum": s, "distinct": args.distinct, "count": c})
    else:
        out.line(str(c))
    return 0


def cmd_enumerate(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    s = _nonneg("--sum", args.sum)
    labs = enumerate_magic(g, s, distinct=args.distinct, threads=_threads(args))
    if out.fmt == "json":
        out.json({"graph": g.name, "sum": s, "distinct": args.distinct,
                  "labellings": [list(x) for x in labs]})
    else:
        for lab in labs:
            out.line(_tab(lab))
    return 0


def cmd_series(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    S = _nonneg("--max-sum", args.max_sum)
    th = _threads(args)
    if args.multivariate:
        from magiclab.enumeration import multivariate_truncation
        f = multivariate_truncation(g, S, distinct=args.distinct, threads=th)
        if out.fmt == "json":
            out.json({"graph": g.name, "max_sum": S,
                      "terms": [[s, list(a), c] for (s, a), c in f.terms.items()]})
        else:
            text = f.to_tsv()
            if text:
                out.line(text.rstrip("\n"))
        return 0
    vals = list(count_series(g, S, distinct=args.distinct, threads=th))
    if out.fmt == "json":
        out.json({"graph": g.name, "max_sum": S, "counts": vals})
    else:
        for i, v in enumerate(vals):
            out.line(f"{i}\t{v}")
    return 0


def cmd_rays(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    rays = cone.extreme_rays(g)
    dim = cone.dimension(g)
    if out.fmt == "json":
        out.json({"graph": g.name, "dimension": dim,
                  "rays": [{"alpha": list(r.alpha), "s": r.s} for r in rays]})
    else:
        out.line(f"# dimension {dim}, {len(rays)} extreme rays (alpha..., s)")
        for r in rays:
            out.line(_tab(r))
    return 0


def cmd_gf(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    S = _nonneg("--max-sum", args.max_sum)
    try:
        factors = series.parse_factors(args.denominator)
    except series.SeriesError as exc:
        raise UsageError(str(exc)) from None
    vals = list(count_series(g, S, distinct=args.distinct, threads=_threads(args)))
    try:
        num = series.reconstruct_numerator(vals, factors)
    except series.InsufficientTerms as exc:
        raise UsageError(str(exc)) from None
    except series.AnsatzMismatch as exc:
        print(f"ansatz mismatch: {exc}", file=sys.stderr)
        return 1
    gf = series.RationalGF(num.coeffs, factors)
    if out.fmt == "json":
        out.json({"graph": g.name, "max_sum": S, **json.loads(gf.to_json())})
    else:
        out.line(str(gf))
    return 0


def cmd_fit(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    S = _nonneg("--max-sum", args.max_sum)
    vals = list(count_series(g, S, distinct=args.distinct, threads=_threads(args)))
    try:
        qp = series.fit_stanley(vals, args.deg_p, args.deg_q)
    except series.SeriesError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return 1
    if out.fmt == "json":
        out.json({"graph": g.name, "max_sum": S,
                  "P": [_frac(c) for c in qp.P], "Q": [_frac(c) for c in qp.Q]})
    else:
        out.line(str(qp))
    return 0


def _decomposition(args, g):
    if args.file:
        return monoid.load_decomposition(args.file, g)
    try:
        return monoid.builtin_decomposition(g.name)
    except (KeyError, ValueError, GraphError) as exc:
        raise UsageError(f"no builtin decomposition for {g.name}: {exc}") from None


def cmd_verify(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    S = _nonneg("--max-sum", args.max_sum)
    decomp = _decomposition(args, g)
    _progress(f"verifying {len(decomp.pieces)} pieces of {g.name} up to s = {S}")
    rep = monoid.verify_decomposition(g, decomp, S, threads=_threads(args))
    if out.fmt == "json":
        out.json({"graph": g.name, "max_sum": S, "labellings": rep.total,
                  "per_sum": rep.per_sum, "converse_checked": rep.converse_checked,
                  "failures": [str(f) for f in rep.failures] + rep.converse_failures,
                  "ok": rep.ok})
    else:
        out.line(rep.summary())
        for f in rep.failures[:20]:
            out.line(f"  {f}")
        for f in rep.converse_failures[:20]:
            out.line(f"  {f}")
    return 0 if rep.ok else 1


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers") from None


def cmd_represent(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    alpha = _parse_ints(args.labelling, "--labelling")
    if len(alpha) != g.n:
        raise UsageError(f"{g.name} has {g.n} edges, labelling has {len(alpha)} entries")
    if is_magic(g, alpha) is None:
        raise UsageError(f"{list(alpha)} is not a magic labelling of {g.name}")
    decomp = _decomposition(args, g)
    try:
        idx, l = monoid.decomp_represent(decomp, alpha)
    except monoid.DecompositionViolation as exc:
        print(str(exc), file=sys.stderr)
        return 1
    result = {"graph": g.name, "labelling": list(alpha),
              "piece": decomp.pieces[idx].name, "l": list(l)}
    if g.name == "G3" and not args.file:
        pidx, pl = monoid.g3_pipeline(alpha)
        result["pipeline"] = {"piece": decomp.pieces[pidx].name, "l": list(pl),
                              "agrees": (pidx, tuple(pl)) == (idx, tuple(l))}
    if out.fmt == "json":
        out.json(result)
    else:
        out.line(f"{result['piece']}\t{_tab(l)}")
        if "pipeline" in result:
            p = result["pipeline"]
            out.line(f"# pipeline {p['piece']} l = {p['l']} "
                     f"({'agrees' if p['agrees'] else 'DISAGREES'})")
    if "pipeline" in result and not result["pipeline"]["agrees"]:
        return 1
    return 0


def cmd_orders(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    th = _threads(args)
    t0 = time.time()
    if args.piece:
        decomp = _decomposition(args, g)
        names = [p.name for p in decomp.pieces]
        if args.piece not in names:
            raise UsageError(f"unknown piece {args.piece!r}; pieces: {', '.join(names)}")
        piece = decomp.pieces[names.index(args.piece)]
        _progress(f"sweeping orders of piece {piece.name} ({th} workers)")
        perms = cone.piece_feasible_orders(piece, workers=th)
    else:
        _progress(f"sweeping orders of {g.name} ({th} workers)")
        perms = cone.graph_feasible_orders(g, workers=th)
    _progress(f"done in {time.time() - t0:.1f}s")
    if out.fmt == "json":
        payload = {"graph": g.name, "count": len(perms)}
        if not args.count_only:
            payload["orders"] = [list(p) for p in perms]
        out.json(payload)
    else:
        out.line(str(len(perms)))
        if not args.count_only:
            for p in perms:
                out.line(_tab(p))
    return 0


def cmd_orbits(args, out: Output) -> int:
    g = resolve_graph(args.graph)
    s = _nonneg("--sum", args.sum)
    if args.d6:
        grp = symmetry.d6_group_g4(g)
    elif args.full:
        grp = symmetry.automorphisms(g)
    else:
        grp = symmetry.load_group(args.group)
        if grp.degree != g.n:
            raise UsageError(f"group acts on {grp.degree} edges, graph has {g.n}")
    labs = enumerate_magic(g, s, distinct=not args.all, threads=_threads(args))
    count, reps = symmetry.orbit_count(labs, grp)
    if out.fmt == "json":
        out.json({"graph": g.name, "sum": s, "group_order": len(grp),
                  "labellings": len(labs), "orbits": count,
                  "representatives": [list(r) for r in reps]})
    else:
        out.line(str(count))
        for r in reps:
            out.line(f"{s}\t{' '.join(map(str, r))}\t1")
    return 0


def cmd_omega_check(args, out: Output) -> int:
    from magiclab.enumeration import multivariate_truncation
    g = resolve_graph(args.graph)
    S = _nonneg("--max-sum", args.max_sum)
    _progress(f"expanding crude form of {g.name} to y^{S}")
    expanded = omega.expand_bounded(omega.crude_form(g), S)
    lhs = omega.omega_eq(expanded)
    rhs = multivariate_truncation(g, S, threads=_threads(args))
    cmp = series.series_equal(lhs, rhs)
    if out.fmt == "json":
        out.json({"graph": g.name, "max_sum": S, "terms": len(rhs),
                  "expanded_terms": len(expanded), "equal": bool(cmp),
                  "differences": cmp.report() if not cmp else ""})
    else:
        out.line(f"{'equal' if cmp else 'DIFFERENT'}\t{len(rhs)} terms")
        if not cmp:
            out.line(cmp.report())
    return 0 if cmp else 1


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magiclab", description="Magic labellings of graphs: counts, cones, "
        "monoid decompositions and generating functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, graph=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        if graph:
            p.add_argument("--graph", required=True, help="catalog name or JSON graph file")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--output", "-o", help="write results here instead of stdout")
        p.add_argument("--threads", type=int, default=None,
                       help="worker count (default: $MAGICLAB_THREADS or all cores)")
        return p

    p = add("graphs", cmd_graphs, "list catalog graphs or show one", graph=False)
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")

    p = add("count", cmd_count, "count magic labellings with a given sum")
    p.add_argument("--sum", type=int, required=True)
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--upto", action="store_true", help="all sums 0..SUM")

    p = add("enumerate", cmd_enumerate, "list magic labellings with a given sum")
    p.add_argument("--sum", type=int, required=True)
    p.add_argument("--distinct", action="store_true")

    p = add("series", cmd_series, "truncated generating function")
    p.add_argument("--max-sum", type=int, required=True)
    p.add_argument("--multivariate", action="store_true")
    p.add_argument("--distinct", action="store_true")

    add("rays", cmd_rays, "extreme rays of the magic cone")

    p = add("gf", cmd_gf, "reconstruct a numerator over a given denominator")
    p.add_argument("--max-sum", type=int, required=True)
    p.add_argument("--denominator", required=True, help="e.g. 1^3,2^1 for (1-y)^3(1-y^2)")
    p.add_argument("--distinct", action="store_true")

    p = add("fit", cmd_fit, "fit h(s) = P(s) + (-1)^s Q(s)")
    p.add_argument("--max-sum", type=int, required=True)
    p.add_argument("--deg-p", type=int, required=True)
    p.add_argument("--deg-q", type=int, default=-1)
    p.add_argument("--distinct", action="store_true")

    p = add("verify-decomp", cmd_verify, "check a shifted free monoid decomposition")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", action="store_true")
    src.add_argument("--file")
    p.add_argument("--max-sum", type=int, required=True)

    p = add("represent", cmd_represent, "represent a labelling in a decomposition")
    p.add_argument("--labelling", required=True, help="comma-separated labels")
    p.add_argument("--file", help="decomposition file (default: builtin)")

    p = add("orders", cmd_orders, "permutations realizable as strict label orders")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--piece", help="restrict to one builtin piece (e.g. F1)")
    p.add_argument("--file", help="decomposition file for --piece")

    p = add("orbits", cmd_orbits, "orbits of labellings under an edge group")
    p.add_argument("--sum", type=int, required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--d6", action="store_true", help="hexagon dihedral group (G4)")
    grp.add_argument("--full", action="store_true", help="full automorphism group")
    grp.add_argument("--group", help="JSON list of edge permutations")
    p.add_argument("--all", action="store_true", help="include labellings with repeats")

    p = add("omega-check", cmd_omega_check, "crude-form expansion vs enumeration")
    p.add_argument("--max-sum", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        code = args.func(args, out)
    except UsageError as exc:
        print(f"magiclab: error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, omega.OmegaError, symmetry.SymmetryError, cone.ConeError,
            monoid.DecompositionError, series.SeriesError, OSError, ValueError,
            KeyError) as exc:
        print(f"magiclab: error: {exc}", file=sys.stderr)
        return 2
    out.flush()
    return code


run = main
