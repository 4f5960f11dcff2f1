"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 infeasible or empty result,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cycles
from .blowup import BlowupState, InconsistentState, UnknownSite, blow_up, parse_site
from .dot import to_dot
from .exact_linalg import format_rational, format_vector, parse_rational
from .exploration import BadParameter, Infeasible, NonIntegralMultiplicities, explore, generate_famille
from .graph import GraphFormatError, ResolutionGraph, UnknownVertex, validate
from .invariants import (NoArrows, a_subgraph, edge_lengths, hironaka, inner_rates, laplacian,
                         multiplicities)

EXIT_OK, EXIT_INPUT, EXIT_EMPTY, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Context:
    def __init__(self, args, out, err):
        self.args = args
        self.out = out
        self.err = err

    @property
    def as_json(self) -> bool:
        return getattr(self.args, "json", False)

    def warn(self, msg: str) -> None:
        if not getattr(self.args, "quiet", False):
            print(f"warning: {msg}", file=self.err)

    def emit(self, payload: dict, table: str) -> None:
        if self.as_json:
            self.out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            self.out.write(table if table.endswith("\n") else table + "\n")


def render_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> ResolutionGraph:
    if path == "-":
        return ResolutionGraph.loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fp:
            return ResolutionGraph.load(fp)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fp:
            fp.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"--{what} must be a JSON array") from None


def _fmt(x) -> str:
    return format_rational(x)


# -- subcommands ---------------------------------------------------------

def cmd_validate(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    report = validate(graph)
    problems = list(report.problems)
    if report.ok:
        for kind in ("f", "g"):
            if graph.has_arrows(kind):
                data = multiplicities(graph, kind)
                for flag in data.flags:
                    problems.append((f"{flag}Multiplicity", f"m_{kind} = {format_vector(data.m)}"))
    payload = {"valid": not problems, "problems": [{"code": c, "detail": d} for c, d in problems]}
    table = "valid\n" if not problems else render_table(["problem", "detail"], problems)
    ctx.emit(payload, table)
    return EXIT_OK if not problems else EXIT_INPUT


def cmd_mult(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    data = multiplicities(graph, ctx.args.fn)
    for flag in data.flags:
        ctx.warn(f"m_{data.kind} is {flag}")
    payload = {"fn": data.kind, "vertices": graph.ids, "m": format_vector(data.m), "flags": data.flags}
    rows = [(v.id, v.self_int, w, _fmt(m)) for v, w, m in zip(graph.vertices, data.weights, data.m)]
    ctx.emit(payload, render_table(["vertex", "self_int", f"{data.kind}*.E", f"m({data.kind})"], rows))
    return EXIT_OK


def cmd_rates(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    if not graph.has_arrows("polar"):
        raise UsageError("rates needs polar arrows in the graph file")
    f_data = multiplicities(graph, "f")
    P = graph.arrow_weights("polar")
    rates = inner_rates(graph, f_data, P)
    payload = {"vertices": graph.ids, "P": P, "a": format_vector(rates.a), "q": format_vector(rates.q),
               "m_f": format_vector(f_data.m)}
    header = ["vertex", "m(f)", "P", "a", "q"]
    cols = [graph.ids, format_vector(f_data.m), P, format_vector(rates.a), format_vector(rates.q)]
    if graph.has_arrows("g"):
        g_data = multiplicities(graph, "g")
        h = hironaka(f_data, g_data)
        payload["h"] = format_vector(h)
        payload["m_g"] = format_vector(g_data.m)
        header[2:2] = ["m(g)"]
        cols[2:2] = [format_vector(g_data.m)]
        header.append("h")
        cols.append(format_vector(h))
    if not rates.integral:
        ctx.warn("a is not integral; the polar data cannot come from a morphism")
    if not rates.positive:
        ctx.warn("some rates are not positive")
    ctx.emit(payload, render_table(header, list(zip(*cols))))
    return EXIT_OK


def cmd_hironaka(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    f_data, g_data = multiplicities(graph, "f"), multiplicities(graph, "g")
    h = hironaka(f_data, g_data)
    payload = {"vertices": graph.ids, "h": format_vector(h), "m_f": format_vector(f_data.m),
               "m_g": format_vector(g_data.m)}
    rows = list(zip(graph.ids, format_vector(f_data.m), format_vector(g_data.m), format_vector(h)))
    ctx.emit(payload, render_table(["vertex", "m(f)", "m(g)", "h"], rows))
    return EXIT_OK


def cmd_skeleton(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    f_data, g_data = multiplicities(graph, "f"), multiplicities(graph, "g")
    sk = a_subgraph(graph, f_data, g_data)
    for w in sk.warnings:
        ctx.warn(w)
    lengths = edge_lengths(graph, f_data)
    payload = {
        "vertices": graph.ids,
        "h": format_vector(sk.h),
        "A_vertices": [v for v in graph.ids if v in sk.A_vertices],
        "A_edges": [list(graph.edges[i].endpoints) for i in sorted(sk.A_edges)],
        "zones": [list(z) for z in sk.zones],
        "singletons": list(sk.singletons),
        "edge_lengths": [{"edge": list(e.endpoints), "length": _fmt(lengths[i])} for i, e in enumerate(graph.edges)],
    }
    rows = [(v, _fmt(h), "yes" if v in sk.A_vertices else "") for v, h in zip(graph.ids, sk.h)]
    text = render_table(["vertex", "h", "in A"], rows)
    text += "\nzones: " + ("; ".join("{" + ", ".join(z) + "}" for z in sk.zones) or "none")
    text += "\nsingletons: " + (", ".join(sk.singletons) or "none") + "\n\n"
    text += render_table(["edge", "length"], [(f"{e.u}-{e.v}", _fmt(lengths[i])) for i, e in enumerate(graph.edges)])
    ctx.emit(payload, text)
    return EXIT_OK


def cmd_laplacian(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    raw = _json_arg(ctx.args.values, "values")
    if not isinstance(raw, list) or len(raw) != len(graph):
        raise UsageError(f"--values must be a JSON array of {len(graph)} rationals")
    try:
        values = [parse_rational(x) for x in raw]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lap = laplacian(graph, multiplicities(graph, "f"), values)
    payload = {"vertices": graph.ids, "laplacian": format_vector(lap)}
    ctx.emit(payload, render_table(["vertex", "value", "laplacian"],
                                   list(zip(graph.ids, format_vector(values), format_vector(lap)))))
    return EXIT_OK


def _cycle_arg(ctx: Context, graph: ResolutionGraph) -> list[int]:
    raw = _json_arg(ctx.args.cycle, "cycle")
    if (not isinstance(raw, list) or len(raw) != len(graph)
            or any(isinstance(x, bool) or not isinstance(x, int) for x in raw)):
        raise UsageError(f"--cycle must be a JSON array of {len(graph)} integers")
    return raw


def cmd_chi(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    D = _cycle_arg(ctx, graph)
    chi = cycles.chi_cycle(graph, D)
    ctx.emit({"cycle": D, "chi": _fmt(chi)}, f"chi = {_fmt(chi)}\n")
    return EXIT_OK


def cmd_mincycle(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    Z = cycles.laufer_min_cycle(graph)
    chi = cycles.chi_cycle(graph, Z)
    text = render_table(["vertex", "coefficient"], list(zip(graph.ids, Z))) + f"\nchi = {_fmt(chi)}\n"
    ctx.emit({"vertices": graph.ids, "cycle": Z, "chi": _fmt(chi)}, text)
    return EXIT_OK


def cmd_rational(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    Z = cycles.laufer_min_cycle(graph)
    chi = cycles.chi_cycle(graph, Z)
    rational = chi == 1
    ctx.emit({"rational": rational, "min_cycle": Z, "chi": _fmt(chi)},
             f"{'rational' if rational else 'not rational'} (chi(Z_min) = {_fmt(chi)})\n")
    return EXIT_OK


def cmd_blowup(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    site = parse_site(ctx.args.at, graph)
    state = blow_up(BlowupState.from_graph(graph), site)
    new = state.graph
    w = new.vertices[-1].id
    if ctx.args.out:
        write_text(ctx.args.out, new.dumps())
    payload = {"site": str(site), "new_vertex": w, "vertices": new.ids, "m_f": format_vector(state.m_f),
               "m_g": format_vector(state.m_g), "q": format_vector(state.q), "graph": new.to_dict()}
    rows = list(zip(new.ids, [v.self_int for v in new.vertices], format_vector(state.m_f),
                    format_vector(state.m_g), format_vector(state.q)))
    ctx.emit(payload, f"blew up {site}; new vertex {w}\n\n" + render_table(["vertex", "self_int", "m(f)", "m(g)", "q"], rows))
    return EXIT_OK


def cmd_explore(ctx: Context) -> int:
    graph = read_graph(ctx.args.file)
    if graph.has_arrows("polar"):
        ctx.warn("polar arrows in the input are ignored by exploration")
    result = explore(graph, workers=ctx.args.workers)
    for w in result.warnings:
        ctx.warn(w)
    lines = [f"Michel candidates: {result.michel_count}", f"admissible: {len(result.admissible)}"]
    lines += [f"  rejected ({k}): {v}" for k, v in result.rejected_counts.items()]
    text = "\n".join(lines) + "\n"
    if result.admissible:
        header = ["vertex"] + [f"P{k + 1}" for k in range(len(result.admissible))]
        rows = [[v] + [P[i] for P, _, _ in result.admissible] for i, v in enumerate(result.ids)]
        text += "\n" + render_table(header, rows)
        text += "\n" + render_table(["vertex"] + [f"q{k + 1}" for k in range(len(result.admissible))],
                                    [[v] + [_fmt(q[i]) for _, q, _ in result.admissible]
                                     for i, v in enumerate(result.ids)])
    ctx.emit(result.to_dict(), text)
    return EXIT_OK if result.admissible else EXIT_EMPTY


def cmd_famille(ctx: Context) -> int:
    graph = generate_famille(ctx.args.n)
    if ctx.args.out:
        write_text(ctx.args.out, graph.dumps())
    else:
        ctx.out.write(graph.dumps())
    return EXIT_OK


def cmd_dot(ctx: Context) -> int:
    ctx.out.write(to_dot(read_graph(ctx.args.file)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress warnings")

    parser = _Parser(prog="innerrates", description="Inner rates and polar exploration on resolution graphs.")
    parser.add_argument("--json", action="store_true", default=False, help="machine-readable output")
    parser.add_argument("--quiet", action="store_true", default=False, help="suppress warnings")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def add(name, func, help_, file=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if file:
            p.add_argument("file", metavar="FILE", help="graph file ('-' for stdin)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a graph file")
    add("mult", cmd_mult, "multiplicities of f or g").add_argument("--fn", choices=("f", "g"), required=True)
    add("rates", cmd_rates, "inner rates from the polar arrows")
    add("hironaka", cmd_hironaka, "Hironaka quotients")
    add("skeleton", cmd_skeleton, "A-subgraph, zones, singletons and edge lengths")
    add("laplacian", cmd_laplacian, "Laplacian of vertex values").add_argument("--values", required=True)
    add("chi", cmd_chi, "Euler characteristic of a cycle").add_argument("--cycle", required=True)
    add("mincycle", cmd_mincycle, "minimal cycle by Laufer's algorithm")
    add("rational", cmd_rational, "rationality test")
    p = add("blowup", cmd_blowup, "blow up one point")
    p.add_argument("--at", required=True, help="free:V, f:V#K, g:V#K, polar:V#K or edge:U-V#K")
    p.add_argument("--out", help="write the new graph here")
    p = add("explore", cmd_explore, "enumerate admissible polar vectors")
    p.add_argument("--workers", type=int, default=None, help="check candidates in this many processes")
    p = add("famille", cmd_famille, "emit the family graph for a given n", file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="write the graph here instead of stdout")
    add("dot", cmd_dot, "Graphviz export")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command")
        return args.func(Context(args, out, err))
    except (UsageError, GraphFormatError, NoArrows, BadParameter, UnknownSite, InconsistentState,
            NonIntegralMultiplicities) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except UnknownVertex as exc:
        print(f"error: unknown vertex {exc.args[0]!r}", file=err)
        return EXIT_INPUT
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=err)
        return EXIT_EMPTY
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
