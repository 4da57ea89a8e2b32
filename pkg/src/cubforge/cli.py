"""Command-line front end: ``cubforge <group> <command> [options]``.

Every command prints (or writes to ``--out``) one JSON report carrying a run
manifest. Exit codes: 0 verdict true, 1 verdict false, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .graph import GraphError, from_json, load_graph, to_dot, to_edge_list, to_json

log = logging.getLogger("cubforge")

# options that change how a run executes but never what it computes
EXECUTION_ONLY = {"--threads", "--out", "--checkpoint", "--progress", "--no-timing", "--format"}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)  # path -> sha256
    seed: int | None = None
    version: str = __version__
    wall_clock_seconds: float | None = None
    summary: dict = field(default_factory=dict)

    def to_json(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            out.pop("wall_clock_seconds")
        return out


def normalized_command(argv: list[str]) -> list[str]:
    """The command line without execution-only options, so reports do not depend on them."""
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        name = tok.split("=", 1)[0]
        if name in EXECUTION_ONLY:
            skip = "=" not in tok and name not in ("--progress", "--no-timing")
            continue
        out.append(tok)
    return out


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class Context:
    def __init__(self, args, argv):
        self.args = args
        self.argv = argv
        self.inputs: dict[str, str] = {}
        self.seed: int | None = None
        self.start = time.perf_counter()

    def graph(self, path: str):
        p = Path(path)
        if not p.exists():
            raise UsageError(f"{path}: no such file")
        self.inputs[str(path)] = sha256_file(p)
        return load_graph(p)

    def json_file(self, path: str) -> dict:
        p = Path(path)
        if not p.exists():
            raise UsageError(f"{path}: no such file")
        self.inputs[str(path)] = sha256_file(p)
        try:
            return json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc

    @property
    def workers(self) -> int:
        from .search import default_workers

        return self.args.threads if self.args.threads else default_workers()


def _emit(ctx: Context, report: dict, verdict: bool) -> int:
    timing = not ctx.args.no_timing
    manifest = RunManifest(normalized_command(ctx.argv), dict(sorted(ctx.inputs.items())), ctx.seed,
                           summary={"verdict": bool(verdict)})
    if timing:
        manifest.wall_clock_seconds = round(time.perf_counter() - ctx.start, 3)
    report = dict(report)
    report["verdict"] = bool(verdict)
    report["manifest"] = manifest.to_json(timing)
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n"
    if ctx.args.out:
        Path(ctx.args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if verdict else 1


def _json_default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"cannot serialise {type(o).__name__}")


# ----------------------------------------------------------------------------- sizeable


def cmd_sizeable_verify(ctx):
    from .graph import contains_four_cycle
    from .search import search_bipartitions
    from .sizeable import SizeablePartition, verify_sizeable

    g = ctx.graph(ctx.args.input)
    if ctx.args.partition:
        d = ctx.json_file(ctx.args.partition)
        try:
            p = SizeablePartition(d["A0"], d["A1"], d["B0"], d["B1"])
        except KeyError as exc:
            raise GraphError(f"{ctx.args.partition}: missing key {exc}") from exc
    elif g.part is not None and None not in g.part and g.side is not None and None not in g.side:
        p = SizeablePartition.from_tags(g)
    else:
        c4 = contains_four_cycle(g)
        if c4 is not None:
            return _emit(ctx, {"partition": None, "failures": [
                {"condition": "no-4-cycle", "witness": c4.to_json()}]}, False)
        res = search_bipartitions(g, limit=1, workers=ctx.workers)
        return _emit(ctx, {"partition": res.partitions[0].to_json() if res.partitions else None,
                           "search": res.to_json()}, bool(res.partitions))
    rep = verify_sizeable(g, p)
    return _emit(ctx, {"partition": p.to_json(), **rep.to_json()}, rep.verdict)


def cmd_sizeable_gen_arithmetic(ctx):
    from .sizeable import ArithmeticParams, arithmetic_graph, verify_sizeable

    a = ctx.args
    if a.normal is not None:
        params = ArithmeticParams.from_normal_form(a.n, *a.normal)
    else:
        if a.h is None or a.k is None:
            raise UsageError("give --h and --k (four values each) or --normal a b c d e")
        params = ArithmeticParams(a.n, ((a.h[0], a.h[1]), (a.h[2], a.h[3])), ((a.k[0], a.k[1]), (a.k[2], a.k[3])))
    try:
        g, p = arithmetic_graph(params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = verify_sizeable(g, p)
    return _emit(ctx, {"params": params.to_json(), "normal_form": params.normal_form(),
                       "graph": to_json(g), "partition": p.to_json(), **rep.to_json()}, rep.verdict)


def _graph_payload(ctx, g) -> dict:
    fmt = ctx.args.format
    if fmt == "edges":
        return {"edge_list": to_edge_list(g)}
    if fmt == "dot":
        return {"dot": to_dot(g)}
    return {"graph": to_json(g)}


def cmd_sizeable_gen_pg(ctx):
    from .graph import contains_four_cycle
    from .sizeable import pg_incidence

    try:
        g = pg_incidence(ctx.args.order)
    except (ValueError, NotImplementedError) as exc:
        raise UsageError(str(exc)) from exc
    c4_free = contains_four_cycle(g) is None
    return _emit(ctx, {"order": ctx.args.order, "vertices": g.n, "edges": g.m, "four_cycle_free": c4_free,
                       "degrees": sorted(set(g.degrees())), **_graph_payload(ctx, g)}, c4_free)


def cmd_sizeable_search(ctx):
    from .search import search_bipartitions

    g = ctx.graph(ctx.args.input)
    res = search_bipartitions(g, limit=ctx.args.limit, workers=ctx.workers,
                              checkpoint=ctx.args.checkpoint, progress=ctx.args.progress)
    return _emit(ctx, res.to_json(), bool(res.partitions))


def cmd_sizeable_minimal24(ctx):
    from .search import find_minimal_24, minimal24_certificate

    m = find_minimal_24(workers=ctx.workers)
    cert = minimal24_certificate(m)
    return _emit(ctx, {"minimal24": m.to_json(), "certificate": cert},
                 m.graph.n == 24 and cert["verify"]["verdict"])


def cmd_sizeable_refute23(ctx):
    from .search import refute_23

    r = refute_23(workers=ctx.workers)
    return _emit(ctx, r, r["refuted"])


def cmd_sizeable_zk(ctx):
    from .sizeable import ZARANKIEWICZ_TABLE, zarankiewicz_formula

    n, c = ctx.args.n, ctx.args.c
    if n < 1 or c < 0:
        raise UsageError("need n >= 1 and c >= 0")
    val = zarankiewicz_formula(n, c)
    key = (min(n * n + c, n * n + n), max(n * n + c, n * n + n))
    table = ZARANKIEWICZ_TABLE.get(key)
    rep = {"n": n, "c": c, "sides": list(key), "formula": val, "table": table,
           "agrees_with_table": None if table is None else table == val}
    return _emit(ctx, rep, table is None or table == val)


def cmd_sizeable_c4(ctx):
    from .sizeable import expected_c4, monte_carlo_c4

    a = ctx.args
    ctx.seed = a.seed
    r = monte_carlo_c4(a.n, a.trials, a.seed)
    exact = expected_c4(a.n)
    return _emit(ctx, {"n": a.n, "trials": a.trials, "mean": r.mean, "stderr": r.stderr,
                       "exact": str(exact), "within_3_stderr": r.within(float(exact))},
                 r.within(float(exact)))


def cmd_sizeable_structured(ctx):
    from .structured import structured_minimum_scan, structured_search

    a = ctx.args
    if a.sizes:
        r = structured_search(a.kind, a.sizes, limit=1, timeout=a.timeout, progress=a.progress)
        return _emit(ctx, r.to_json(), r.complete)
    if a.vertices is None:
        raise UsageError("give --vertices N or --sizes a0 a1 b0 b1")
    r = structured_minimum_scan(a.kind, a.vertices, timeout=a.timeout, progress=a.progress)
    return _emit(ctx, r, r["conclusive"])


# ----------------------------------------------------------------------------- X


def _load_spec(ctx):
    from .complex_x import XSpec

    a = ctx.args
    if a.preset:
        from .acceptance import x_instance

        return x_instance(a.preset)
    if a.spec:
        d = ctx.json_file(a.spec)
        if "graph" in d:
            g = from_json(d["graph"])
            graphs = (g, g, g)
        elif "graphs" in d and len(d["graphs"]) == 3:
            graphs = tuple(from_json(x) for x in d["graphs"])
        else:
            raise GraphError(f"{a.spec}: expected key 'graph' or a list 'graphs' of three graphs")
    elif a.g1:
        paths = (a.g1, a.g2 or a.g1, a.g3 or a.g1)
        graphs = tuple(ctx.graph(p) for p in paths)
    else:
        raise UsageError("give --preset, --spec or --g1 [--g2 --g3]")
    spec = XSpec.from_tagged(*graphs)
    from .complex_x import build_x

    return spec, build_x(spec)


def cmd_x_build(ctx):
    from .complex_x import vertex_census

    spec, x = _load_spec(ctx)
    return _emit(ctx, {"sizes": spec.sizes(), "vertices": len(x.vertices), "cells": list(x.census()),
                       "vertex_types": vertex_census(spec, x)}, True)


def cmd_x_euler(ctx):
    from .complex_x import euler_formula_family, euler_formula_x, x_report

    a = ctx.args
    if a.family is not None:
        p = a.family
        val = euler_formula_x((4 * p,) * 3, (4 * p,) * 3, (16 * p,) * 3)
        quoted = euler_formula_family(p)
        return _emit(ctx, {"p": p, "formula": val, "quoted_closed_form": quoted,
                           "agree": val == quoted}, val == quoted)
    if a.a is not None:
        if a.b is None or a.e is None:
            raise UsageError("--a needs --b and --e (three values each)")
        return _emit(ctx, {"a": a.a, "b": a.b, "e": a.e, "formula": euler_formula_x(a.a, a.b, a.e)}, True)
    spec, x = _load_spec(ctx)
    rep = x_report(spec, x)
    return _emit(ctx, rep, rep["agree"])


def cmd_x_certify(ctx):
    from .complex_x import flag_certificate, gamma_edge_certificate, verify_link_table

    spec, x = _load_spec(ctx)
    fl = flag_certificate(x)
    ge = gamma_edge_certificate(spec, x)
    lt = verify_link_table(spec, x)
    return _emit(ctx, {"flag": fl, "edge_links": ge, "link_table": lt},
                 fl["verdict"] and ge["verdict"] and lt["verdict"])


def _parse_vertex(spec, text: str):
    toks = [t.strip() for t in text.split(",")]
    if len(toks) != 3:
        raise UsageError(f"--vertex needs three comma-separated coordinates, got {text!r}")
    out = []
    for i, t in enumerate(toks):
        f = spec.factors[i]
        if t.isdigit():
            k = int(t)
            if not 0 <= k < f.n:
                raise UsageError(f"coordinate {i + 1}: index {k} out of range 0..{f.n - 1}")
        else:
            names = [f.name(k) for k in range(f.n)]
            if t not in names:
                raise UsageError(f"coordinate {i + 1}: unknown vertex name {t!r}")
            k = names.index(t)
        out.append(k)
    return tuple(out)


def cmd_x_link(ctx):
    from .complex_x import classify_vertex, expected_link, table_counts, vertex_class
    from .homology import reduced_homology

    spec, x = _load_spec(ctx)
    v = _parse_vertex(spec, ctx.args.vertex)
    if v not in x:
        raise UsageError(f"{spec.vertex_name(v)} is not a vertex of X")
    link = x.vertex_link(v)
    key = lambda t: spec.global_label(t[0], t[2])
    matches = link.relabeled(key) == expected_link(spec, v).relabeled(lambda t: t)
    return _emit(ctx, {"vertex": spec.vertex_name(v), "class": vertex_class(spec, v),
                       "type": classify_vertex(spec, v).value, "counts": list(link.counts()),
                       "table_counts": list(table_counts(spec, v)), "matches_table": matches,
                       "homology": reduced_homology(link).to_json(), "link": link.to_json()}, matches)


# ----------------------------------------------------------------------------- morse


def cmd_morse_certify(ctx):
    from .morse import not_f3_certificate

    spec, x = _load_spec(ctx)
    r = not_f3_certificate(spec, x, evidence=ctx.args.evidence)
    return _emit(ctx, r, r["verdict"])


def cmd_morse_homology(ctx):
    from .cubes import LinkComplex
    from .homology import rational_betti, reduced_homology

    d = ctx.json_file(ctx.args.complex)
    try:
        link = LinkComplex.from_json(d)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise GraphError(f"{ctx.args.complex}: malformed complex: {exc}") from exc
    h = reduced_homology(link)
    return _emit(ctx, {"counts": list(link.counts()), "reduced_homology": h.to_json(),
                       "summary": h.short(), "rational_betti": list(rational_betti(link))}, True)


# ----------------------------------------------------------------------------- branch


def _branch_graphs(ctx):
    from .branched import cage_graph

    a = ctx.args
    if a.g1:
        paths = (a.g1, a.g2 or a.g1, a.g3 or a.g1)
        return tuple(ctx.graph(p) for p in paths)
    try:
        c = cage_graph(a.cage)
    except GraphError as exc:
        raise UsageError(str(exc)) from exc
    return (c, c, c)


def _pair(ctx, gs):
    i, j = {"12": (0, 1), "23": (1, 2), "31": (2, 0)}[ctx.args.pair]
    return gs[i], gs[j]


def cmd_branch_locus(ctx):
    from .branched import branching_locus, check_two_full, locus_counts_formula

    gs = _branch_graphs(ctx)
    checks = [check_two_full(g) for g in gs]
    if not all(c["two_full"] for c in checks):
        return _emit(ctx, {"two_full": checks}, False)
    L = branching_locus(*gs)
    counts = L.counts()
    formula = locus_counts_formula(*gs)
    return _emit(ctx, {"two_full": checks, "locus": L.to_json(), "counts_formula": list(formula)},
                 tuple(counts) == formula and not L.overlaps())


def cmd_branch_validate(ctx):
    from .branched import branching_locus, product_k, validate_locus

    gs = _branch_graphs(ctx)
    r = validate_locus(product_k(*gs), branching_locus(*gs))
    return _emit(ctx, r, r["verdict"])


def _scheme(ctx, gi, gj):
    from .branched import build_labeling

    try:
        return build_labeling(gi, gj, ctx.args.q)
    except GraphError as exc:
        raise UsageError(str(exc)) from exc


def cmd_branch_label(ctx):
    gi, gj = _pair(ctx, _branch_graphs(ctx))
    s = _scheme(ctx, gi, gj)
    return _emit(ctx, {"pair": ctx.args.pair, "scheme": s.to_json()}, s.conjugation_ok())


def cmd_branch_holonomy(ctx):
    from .branched import loop4_holonomy_check

    gi, gj = _pair(ctx, _branch_graphs(ctx))
    s = _scheme(ctx, gi, gj)
    r = loop4_holonomy_check(gi, gj, s)
    return _emit(ctx, {"pair": ctx.args.pair, "scheme": s.to_json(), **r}, r["verdict"])


def cmd_branch_euler(ctx):
    from .branched import (EulerParams, cage_polynomial, euler_cell_census, euler_formula_branched)

    a = ctx.args
    if a.p is not None:
        try:
            params = EulerParams.cage(a.p, a.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        val = euler_formula_branched(params)
        rep = {"p": a.p, "q": a.q or a.p, "formula": val}
        ok = True
        if a.q in (None, a.p):
            rep["cage_polynomial"] = cage_polynomial(a.p)
            ok = val == rep["cage_polynomial"]
        if a.census:
            from .branched import cage_graph

            c = cage_graph(a.p)
            q = a.q or a.p
            rep["census"] = euler_cell_census(c, c, c, q, q, q)
            ok = ok and rep["census"]["resolution"] != "unexplained discrepancy"
        return _emit(ctx, rep, ok)
    gs = _branch_graphs(ctx)
    qs = (a.q12, a.q23, a.q31)
    if None in qs:
        raise UsageError("give --p P for cage parameters, or --q12 --q23 --q31 with graphs")
    rep = euler_cell_census(*gs, *qs)
    return _emit(ctx, rep, rep["resolution"] != "unexplained discrepancy")


# ----------------------------------------------------------------------------- repro


REPRO = {"minimal24": 1, "refute23": 2, "arithmetic": 3, "euler-x": 4, "certify-x": 5, "not-f3": 6,
         "joins": 7, "branched": 8, "c4": 9}


def cmd_repro(ctx):
    from .acceptance import C4_SEED, run_all

    which = ctx.args.what
    numbers = sorted(REPRO.values()) if which == "all" else [REPRO[which]]
    if 9 in numbers:
        ctx.seed = C4_SEED
    timing = not ctx.args.no_timing
    results = run_all(numbers, workers=ctx.workers)
    for r in results:
        print(r.line(), file=sys.stderr)
    rep = {"criteria": [r.to_json(timing) for r in results]}
    if which == "minimal24":
        from .acceptance import minimal24
        from .search import minimal24_certificate

        m = minimal24()
        rep["minimal24"] = m.to_json()
        rep["certificate"] = minimal24_certificate(m)
    return _emit(ctx, rep, all(r.passed for r in results))


# ----------------------------------------------------------------------------- parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: CUBFORGE_THREADS or all cores)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock time for byte-stable reports")
    p.add_argument("--progress", action="store_true", help="progress lines on stderr")


def _x_inputs(p):
    p.add_argument("--g1")
    p.add_argument("--g2")
    p.add_argument("--g3")
    p.add_argument("--spec", help="JSON with 'graph' (used three times) or 'graphs' (three tagged graphs)")
    p.add_argument("--preset", choices=("min24", "arith9"))


def _branch_inputs(p):
    p.add_argument("--g1")
    p.add_argument("--g2")
    p.add_argument("--g3")
    p.add_argument("--cage", type=int, default=5, help="use three cage graphs on p-1 edges (default 5)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cubforge", description=__doc__.splitlines()[0])
    top.add_argument("--version", action="version", version=__version__)
    groups = top.add_subparsers(dest="group", required=True)

    def add(sub, name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.set_defaults(fn=fn)
        return p

    s = groups.add_parser("sizeable", help="sizeable graphs").add_subparsers(dest="cmd", required=True)
    p = add(s, "verify", cmd_sizeable_verify, "check a graph (and partition) for sizeability")
    p.add_argument("--input", required=True)
    p.add_argument("--partition", help="JSON with A0, A1, B0, B1 (default: the graph's part tags)")
    p = add(s, "gen-arithmetic", cmd_sizeable_gen_arithmetic, "arithmetic graph from shift parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, nargs=4, metavar=("H00", "H01", "H10", "H11"))
    p.add_argument("--k", type=int, nargs=4, metavar=("K00", "K01", "K10", "K11"))
    p.add_argument("--normal", type=int, nargs=5, metavar=("A", "B", "C", "D", "E"))
    p = add(s, "gen-pg", cmd_sizeable_gen_pg, "incidence graph of PG(2,q)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=("json", "edges", "dot"), default="json")
    p = add(s, "search", cmd_sizeable_search, "enumerate sizeable partitions")
    p.add_argument("--input", required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--checkpoint")
    add(s, "minimal24", cmd_sizeable_minimal24, "24-vertex sizeable subgraph of PG(2,3)")
    add(s, "refute23", cmd_sizeable_refute23, "exhaust the 23-vertex extremal candidates")
    p = add(s, "zk", cmd_sizeable_zk, "Zarankiewicz bound n^2(n+1)+cn")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p = add(s, "c4", cmd_sizeable_c4, "Monte Carlo 4-cycle count of the random bipartite graph")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=20240611)
    p = add(s, "search-structured", cmd_sizeable_structured,
            "long-running: sizeable graphs whose defining subgraphs are all paths or all cycles")
    p.add_argument("--kind", choices=("path", "cycle"), required=True)
    p.add_argument("--vertices", type=int)
    p.add_argument("--sizes", type=int, nargs=4, metavar=("A0", "A1", "B0", "B1"))
    p.add_argument("--timeout", type=float, help="seconds per size tuple")

    x = groups.add_parser("x", help="the cube complex X").add_subparsers(dest="cmd", required=True)
    for name, fn, h in (("build", cmd_x_build, "build X and count cells"),
                        ("euler", cmd_x_euler, "closed-form vs counted Euler characteristic"),
                        ("certify", cmd_x_certify, "flag, edge-link and link-table certificates"),
                        ("link", cmd_x_link, "one vertex link")):
        p = add(x, name, fn, h)
        _x_inputs(p)
        if name == "euler":
            p.add_argument("--a", type=int, nargs=3)
            p.add_argument("--b", type=int, nargs=3)
            p.add_argument("--e", type=int, nargs=3)
            p.add_argument("--family", type=int, metavar="P", help="a=b=4P, e=16P against the quoted closed form")
        if name == "link":
            p.add_argument("--vertex", required=True, help="three factor indices or names, comma-separated")

    m = groups.add_parser("morse", help="Morse-theoretic certificates").add_subparsers(dest="cmd", required=True)
    p = add(m, "certify", cmd_morse_certify, "ascending/descending link homology of every vertex")
    _x_inputs(p)
    p.add_argument("--evidence", action="store_true", help="include the per-vertex table")
    p = add(m, "homology", cmd_morse_homology, "reduced homology of a simplicial complex")
    p.add_argument("--complex", required=True, help="JSON with tags (or n), edges, triangles")

    b = groups.add_parser("branch", help="branched-cover ingredients").add_subparsers(dest="cmd", required=True)
    for name, fn, h in (("locus", cmd_branch_locus, "the branching locus"),
                        ("validate", cmd_branch_validate, "local convexity and link conditions"),
                        ("label", cmd_branch_label, "permutation labelling for a pair of graphs"),
                        ("holonomy", cmd_branch_holonomy, "length-8 loop holonomy check"),
                        ("euler", cmd_branch_euler, "Euler characteristic formula and cell census")):
        p = add(b, name, fn, h)
        _branch_inputs(p)
        if name in ("label", "holonomy"):
            p.add_argument("--q", type=int)
            p.add_argument("--pair", choices=("12", "23", "31"), default="12")
        if name == "euler":
            p.add_argument("--p", type=int, help="cage parameters v=2, a=b=1, e=p-1")
            p.add_argument("--q", type=int, help="sheet count per pair with --p (default p)")
            p.add_argument("--q12", type=int)
            p.add_argument("--q23", type=int)
            p.add_argument("--q31", type=int)
            p.add_argument("--census", action="store_true", help="also run the cell census")

    r = groups.add_parser("repro", help="reproduce the headline results").add_subparsers(dest="what", required=True)
    for name in list(REPRO) + ["all"]:
        add(r, name, cmd_repro, f"acceptance check: {name}")
    return top


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    logging.basicConfig(level=logging.INFO if args.progress else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    ctx = Context(args, argv)
    try:
        return args.fn(ctx)
    except (UsageError, GraphError) as exc:
        print(f"cubforge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
