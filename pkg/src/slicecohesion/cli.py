"""Command-line interface.

Exit codes: 0 success, 1 analysis error, 2 usage error (bad flags,
missing input file).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .cohesion import INTERSECTION_MODES, CohesionError, CohesionReport, analyze, display
from .dependence import ENTRY, Pdg, build_pdg, node_weight
from .frontend import FrontendError, ResolvedProgram, load, parse, unit_str
from .plot import render_plot
from .slicer import backward_slice, forward_slice, slice_profile
from .trace import TraceError, emit_csv, emit_json, trace_path

log = logging.getLogger("slicecohesion")

EXIT_OK, EXIT_ANALYSIS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class AnalysisError(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{path}: no such file")
    return p.read_text(encoding="utf-8")


def _load(path: str) -> ResolvedProgram:
    text = _read(path)
    try:
        return load(text)
    except FrontendError as e:
        for d in e.diagnostics:
            print(f"{path}:{d}", file=sys.stderr)
        raise AnalysisError(f"{path}: {len(e.diagnostics)} error(s)") from None


def _pick_method(program: ResolvedProgram, name: Optional[str]) -> str:
    if name is not None:
        if name not in program.symbols:
            raise AnalysisError(f"method {name!r} not found")
        return name
    if len(program.method_names) != 1:
        raise UsageError(f"--method is required; methods: {', '.join(program.method_names)}")
    return program.method_names[0]


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- subcommands -------------------------------------------------------------


def cmd_parse(args) -> int:
    text = _read(args.file)
    try:
        unit = parse(text)
    except FrontendError as e:
        for d in e.diagnostics:
            print(f"{args.file}:{d}", file=sys.stderr)
        return EXIT_ANALYSIS
    program = _load(args.file)
    if args.pretty:
        _out(unit_str(unit))
        return EXIT_OK
    lines = []
    for m in unit.methods:
        syms = program.symbols[m.name]
        params = ", ".join(f"{p.type} {p.name}" for p in m.params)
        nodes = node_weight(m.body)
        lines.append(f"method {m.name}({params}): {len(m.body.stmts)} statements, {nodes} nodes")
        vars_ = " ".join(f"{syms.label(v)}{'(param)' if v.is_param else ''}" for v in syms.variables)
        lines.append(f"  variables: {vars_ or '-'}")
        lines.append(f"  calls: {' '.join(syms.calls) or '-'}")
    _out("\n".join(lines))
    return EXIT_OK


def cmd_pdg(args) -> int:
    program = _load(args.file)
    pdg = build_pdg(program, _pick_method(program, args.method))
    if args.format == "json":
        _out(json.dumps(pdg.to_json(), indent=2))
    else:
        _out(pdg.to_dot())
    return EXIT_OK


def _line(pdg: Pdg, nid: Optional[int]) -> Optional[int]:
    if nid is None or nid == ENTRY:
        return None
    return pdg.node(nid).line


def _seed_json(pdg: Pdg, nid: Optional[int]) -> Optional[dict]:
    if nid is None:
        return None
    return {"node": "entry" if nid == ENTRY else nid, "line": _line(pdg, nid)}


def _pick_criterion(pdg: Pdg, var, direction: str, line: Optional[int]) -> int:
    cands = [n for n in pdg.body_nodes if n.mentions(var) and (line is None or n.line == line)]
    if direction == "back":
        refs = [n for n in cands if var in n.uses] or cands
        if not refs:
            raise AnalysisError(f"{var.name!r} does not occur" + (f" on line {line}" if line else ""))
        return refs[-1].id
    defs = [n for n in cands if var in n.defs]
    if not defs:
        if var.is_param and line is None:
            return ENTRY
        defs = cands
    if not defs:
        raise AnalysisError(f"{var.name!r} does not occur" + (f" on line {line}" if line else ""))
    return defs[0].id


def cmd_slice(args) -> int:
    program = _load(args.file)
    pdg = build_pdg(program, _pick_method(program, args.method))
    try:
        var = pdg.variable(args.var)
    except KeyError:
        raise AnalysisError(f"variable {args.var!r} not found in {pdg.method!r}") from None
    if args.line is not None and args.direction is None:
        raise UsageError("--line requires --direction")

    if args.direction is None:
        prof = slice_profile(pdg, var)
        slices = list(prof.slices)
        records = [
            {"seed_backward": _seed_json(pdg, s.seed_backward and s.seed_backward.node),
             "seed_forward": _seed_json(pdg, s.seed_forward and s.seed_forward.node),
             "nodes": sorted(s.nodes), "lines": [pdg.node(n).line for n in sorted(s.nodes)]}
            for s in slices
        ]
    else:
        crit = _pick_criterion(pdg, var, args.direction, args.line)
        nodes = (backward_slice(pdg, crit) if args.direction == "back"
                 else forward_slice(pdg, crit, var))
        records = [{"direction": args.direction, "criterion": _seed_json(pdg, crit),
                    "nodes": sorted(nodes), "lines": [pdg.node(n).line for n in sorted(nodes)]}]

    if args.format == "json":
        _out(json.dumps({"method": pdg.method, "variable": args.var,
                         "method_length": len(pdg), "slices": records}, indent=2))
        return EXIT_OK
    lines = [f"variable {args.var} in {pdg.method} (method length {len(pdg)})"]
    for k, r in enumerate(records, 1):
        if "direction" in r:
            c = r["criterion"]
            head = f"{'backward' if r['direction'] == 'back' else 'forward'} slice from node {c['node']}"
        else:
            b, f = r["seed_backward"], r["seed_forward"]
            head = f"union slice {k}: backward seed {b['node'] if b else '-'}"
            head += f", forward seed {f['node'] if f else '-'}"
        lines.append(f"{head} ({len(r['nodes'])} nodes)")
        for nid in r["nodes"]:
            n = pdg.node(nid)
            lines.append(f"  {nid:>3}  line {n.line:>3}  {n.kind:<15} {n.label}")
    _out("\n".join(lines))
    return EXIT_OK


def _report_table(r: CohesionReport) -> str:
    out = [f"method {r.method}", f"method_length {r.method_length}"]
    for v in r.per_variable:
        cov = "undefined" if v.coverage is None else f"{v.coverage} {display(v.coverage)}"
        out.append(f"variable {v.name} slices={v.profile_size} coverage={cov}")
    ratio = r.intersection_ratio
    out.append(f"intersection {ratio} {display(ratio)} cohesive={'yes' if r.cohesive else 'no'}")
    out.append(f"intersection_mode {r.intersection_mode}")
    if r.metrics is None:
        out.append(f"metrics unavailable ({r.metrics_error})")
    else:
        for k, val in r.metrics.as_dict().items():
            out.append(f"{k} {val} {display(val)}")
    return "\n".join(out)


def cmd_metrics(args) -> int:
    program = _load(args.file)
    try:
        reports = analyze(program, args.method, intersection=args.intersection,
                          outputs_only=args.outputs_only)
    except CohesionError as e:
        raise AnalysisError(str(e)) from None
    if args.format == "json":
        docs = [r.to_json() for r in reports]
        _out(json.dumps(docs[0] if len(docs) == 1 else docs, indent=2))
    else:
        _out("\n\n".join(_report_table(r) for r in reports))
    return EXIT_OK


def cmd_trace(args) -> int:
    if not Path(args.path).exists():
        raise UsageError(f"{args.path}: no such file or directory")
    try:
        events, trace = trace_path(args.path, args.method)
    except TraceError as e:
        raise AnalysisError(str(e)) from None
    Path(args.out).write_bytes(emit_csv(trace))
    if args.json:
        Path(args.json).write_bytes(emit_json(trace))
    if args.plot:
        if not trace.points:
            raise AnalysisError("nothing to plot: empty trace")
        Path(args.plot).write_bytes(render_plot(trace))
    lines = [f"method {trace.method}", f"events {len(events)}", f"compilable_versions {len(trace)}"]
    if trace.points:
        last = trace.points[-1]
        lines.append(f"final intersection {last.intersection_ratio} {display(last.intersection_ratio)}")
    _out("\n".join(lines))
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="slicecohesion", description="Variable-level slice-based cohesion metrics.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse and resolve a source file")
    p.add_argument("file")
    p.add_argument("--pretty", action="store_true", help="print the canonical source")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("pdg", help="export a method's dependence graph")
    p.add_argument("file")
    p.add_argument("--method")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_pdg)

    p = sub.add_parser("slice", help="union slices or a single slice of a variable")
    p.add_argument("file")
    p.add_argument("--method")
    p.add_argument("--var", required=True)
    p.add_argument("--direction", choices=("back", "fwd"))
    p.add_argument("--line", type=int)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("metrics", help="cohesion report per method")
    p.add_argument("file")
    p.add_argument("--method")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--intersection", choices=INTERSECTION_MODES, default="per-slice")
    p.add_argument("--outputs-only", action="store_true",
                   help="method metrics over printed/returned variables only")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("trace", help="cohesion over a sequence of program versions")
    p.add_argument("path", help="directory of NNNN.mj files or a .jsonl event log")
    p.add_argument("--method")
    p.add_argument("--out", required=True, help="CSV output file")
    p.add_argument("--json", help="JSON output file")
    p.add_argument("--plot", help="SVG output file")
    p.set_defaults(func=cmd_trace)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"slicecohesion: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AnalysisError as e:
        print(f"slicecohesion: {e}", file=sys.stderr)
        return EXIT_ANALYSIS
    except OSError as e:
        print(f"slicecohesion: {e}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
