"""Control flow, reaching definitions and program dependence graphs.

Node granularity: every simple statement, declaration, ``if`` and
``while`` is one node; a ``for`` statement is three nodes (init, cond,
update). Blocks contribute nothing, and parameters are defined on a
virtual entry node that is not part of the method body.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .frontend import OUTPUT_CALLS, MethodSymbols, ResolvedProgram, VariableId
from .frontend import syntax as ast
from .frontend.pretty import expr_str, simple_str

ENTRY = -1
EXIT = -2

NODE_KINDS = (
    "decl-def", "assign", "predicate-if", "predicate-while",
    "for-init", "for-cond", "for-update", "output", "call-stmt", "return",
)


@dataclass(frozen=True)
class PdgNode:
    id: int
    kind: str
    span: ast.Span
    defs: frozenset[VariableId]
    uses: frozenset[VariableId]
    label: str
    weak: bool = False  # array-element write: defines without killing

    @property
    def line(self) -> int:
        return self.span.line

    @property
    def kills(self) -> frozenset[VariableId]:
        return frozenset() if self.weak else self.defs

    def mentions(self, var: VariableId) -> bool:
        return var in self.defs or var in self.uses


@dataclass
class Cfg:
    nodes: list[PdgNode]
    succ: dict[int, list[int]]
    edge_labels: dict[tuple[int, int], str] = field(default_factory=dict)
    entry_defs: frozenset[VariableId] = frozenset()

    @property
    def edges(self) -> set[tuple[int, int]]:
        return {(a, b) for a, bs in self.succ.items() for b in bs}

    def predecessors(self) -> dict[int, list[int]]:
        pred: dict[int, list[int]] = {n: [] for n in self.succ}
        for a, bs in self.succ.items():
            for b in bs:
                pred[b].append(a)
        return pred


class _CfgBuilder:
    """Walks a method body once, numbering nodes in source order."""

    def __init__(self, syms: MethodSymbols):
        self.syms = syms
        self.nodes: list[PdgNode] = []
        self.succ: dict[int, list[int]] = {ENTRY: [], EXIT: []}
        self.labels: dict[tuple[int, int], str] = {}
        # node id -> controlling predicate id (or ENTRY)
        self.control_parent: dict[int, int] = {}

    # uses/defs are derived from resolved occurrences, keyed by position
    def vars_in(self, e: Optional[ast.Expr]) -> set[VariableId]:
        if e is None:
            return set()
        return {self.syms.lookup(x) for x in ast.iter_exprs(e) if isinstance(x, ast.Name)}

    def add_node(self, kind: str, span: ast.Span, defs: Iterable[VariableId],
                 uses: Iterable[VariableId], label: str, parent: int, weak: bool = False) -> int:
        nid = len(self.nodes)
        self.nodes.append(PdgNode(nid, kind, span, frozenset(defs), frozenset(uses), label, weak))
        self.succ[nid] = []
        self.control_parent[nid] = parent
        return nid

    def link(self, preds: list[tuple[int, Optional[str]]], target: int) -> None:
        for p, lab in preds:
            if target not in self.succ[p]:
                self.succ[p].append(target)
            if lab is not None:
                self.labels[(p, target)] = lab

    def simple_node(self, s: ast.Stmt, kind: Optional[str], parent: int) -> int:
        if isinstance(s, ast.VarDecl):
            return self.add_node(kind or "decl-def", s.span, [self.syms.lookup(s)],
                                 self.vars_in(s.init), simple_str(s), parent)
        if isinstance(s, (ast.Assign, ast.IncDec)):
            target = s.target
            uses = self.vars_in(s.value) if isinstance(s, ast.Assign) else set()
            compound = not (isinstance(s, ast.Assign) and s.op == "=")
            weak = isinstance(target, ast.Index)
            base = target
            while isinstance(base, ast.Index):
                uses |= self.vars_in(base.index)
                base = base.array
            var = self.syms.lookup(base)
            if compound or weak:
                uses.add(var)
            return self.add_node(kind or "assign", s.span, [var], uses, simple_str(s), parent, weak)
        if isinstance(s, ast.ExprStmt):
            k = "output" if s.call.full_name in OUTPUT_CALLS else "call-stmt"
            return self.add_node(k, s.span, [], self.vars_in(s.call), simple_str(s), parent)
        if isinstance(s, ast.Return):
            return self.add_node("return", s.span, [], self.vars_in(s.value), simple_str(s), parent)
        raise TypeError(f"not a simple statement: {s!r}")

    def stmt(self, s: ast.Stmt, preds: list, parent: int) -> list:
        """Emit nodes for ``s``; return the dangling (node, label) exits."""
        if isinstance(s, ast.Block):
            for sub in s.stmts:
                preds = self.stmt(sub, preds, parent)
            return preds
        if isinstance(s, ast.If):
            n = self.add_node("predicate-if", s.span, [], self.vars_in(s.cond),
                              f"if ({expr_str(s.cond)})", parent)
            self.link(preds, n)
            out = self.stmt(s.then, [(n, "T")], n)
            if s.orelse is not None:
                out = out + self.stmt(s.orelse, [(n, "F")], n)
            else:
                out = out + [(n, "F")]
            return out
        if isinstance(s, ast.While):
            n = self.add_node("predicate-while", s.span, [], self.vars_in(s.cond),
                              f"while ({expr_str(s.cond)})", parent)
            self.link(preds, n)
            body_out = self.stmt(s.body, [(n, "T")], n)
            self.link(body_out, n)
            return [(n, "F")]
        if isinstance(s, ast.For):
            init = self.simple_node(s.init, "for-init", parent)
            cond = self.add_node("for-cond", s.cond.span, [], self.vars_in(s.cond),
                                 expr_str(s.cond), parent)
            update = self.simple_node(s.update, "for-update", cond)
            self.link(preds, init)
            self.link([(init, None)], cond)
            body_out = self.stmt(s.body, [(cond, "T")], cond)
            self.link(body_out, update)
            self.link([(update, None)], cond)
            return [(cond, "F")]
        n = self.simple_node(s, None, parent)
        self.link(preds, n)
        if isinstance(s, ast.Return):
            self.link([(n, None)], EXIT)
            return []
        return [(n, None)]


def _build(syms: MethodSymbols) -> _CfgBuilder:
    b = _CfgBuilder(syms)
    out = b.stmt(syms.method.body, [(ENTRY, None)], ENTRY)
    b.link(out, EXIT)
    return b


def build_cfg(syms: MethodSymbols) -> Cfg:
    b = _build(syms)
    params = frozenset(v for v in syms.variables if v.is_param)
    return Cfg(b.nodes, b.succ, b.labels, params)


# -- reaching definitions ----------------------------------------------------

Definition = tuple[int, VariableId]  # (defining node or ENTRY, variable)


@dataclass
class ReachingDefs:
    reach_in: dict[int, frozenset[Definition]]
    reach_out: dict[int, frozenset[Definition]]

    def chains(self, cfg: Cfg) -> set[tuple[int, int, VariableId]]:
        """Def-use chains as (def node, use node, variable)."""
        out = set()
        for n in cfg.nodes:
            for d, v in self.reach_in[n.id]:
                if v in n.uses:
                    out.add((d, n.id, v))
        return out


def reaching_definitions(cfg: Cfg) -> ReachingDefs:
    """Forward may-analysis to a fixpoint, worklist driven."""
    gen: dict[int, frozenset[Definition]] = {ENTRY: frozenset((ENTRY, v) for v in cfg.entry_defs),
                                             EXIT: frozenset()}
    kill_vars: dict[int, frozenset[VariableId]] = {ENTRY: frozenset(), EXIT: frozenset()}
    for n in cfg.nodes:
        gen[n.id] = frozenset((n.id, v) for v in n.defs)
        kill_vars[n.id] = n.kills
    pred = cfg.predecessors()
    reach_in: dict[int, frozenset[Definition]] = {n: frozenset() for n in cfg.succ}
    reach_out: dict[int, frozenset[Definition]] = {n: gen[n] for n in cfg.succ}

    work = deque(sorted(cfg.succ))
    queued = set(work)
    while work:
        n = work.popleft()
        queued.discard(n)
        new_in = frozenset().union(*(reach_out[p] for p in pred[n]))
        kv = kill_vars[n]
        new_out = gen[n] | frozenset(d for d in new_in if d[1] not in kv)
        reach_in[n] = new_in
        if new_out != reach_out[n]:
            reach_out[n] = new_out
            for s in cfg.succ[n]:
                if s not in queued:
                    work.append(s)
                    queued.add(s)
    return ReachingDefs(reach_in, reach_out)


# -- PDG ---------------------------------------------------------------------


@dataclass
class Pdg:
    method: str
    body_nodes: list[PdgNode]
    entry_defs: frozenset[VariableId]
    data_edges: frozenset[tuple[int, int, VariableId]]
    control_edges: frozenset[tuple[int, int]]
    variables: list[VariableId]
    symbols: Optional[MethodSymbols] = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.body_nodes)

    def node(self, nid: int) -> PdgNode:
        if not 0 <= nid < len(self.body_nodes):
            raise KeyError(f"unknown node id {nid}")
        return self.body_nodes[nid]

    def label(self, var: VariableId) -> str:
        return self.symbols.label(var) if self.symbols else var.name

    def variable(self, name: str) -> VariableId:
        for v in self.variables:
            if self.label(v) == name:
                return v
        raise KeyError(name)

    @cached_property
    def predecessors(self) -> dict[int, list[int]]:
        pred: dict[int, set[int]] = {n.id: set() for n in self.body_nodes}
        pred[ENTRY] = set()
        for a, b, _ in self.data_edges:
            pred[b].add(a)
        for a, b in self.control_edges:
            pred[b].add(a)
        return {k: sorted(v) for k, v in pred.items()}

    @cached_property
    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, set[int]] = {n.id: set() for n in self.body_nodes}
        succ[ENTRY] = set()
        for a, b, _ in self.data_edges:
            succ[a].add(b)
        for a, b in self.control_edges:
            succ[a].add(b)
        return {k: sorted(v) for k, v in succ.items()}

    def to_json(self) -> dict:
        def var_names(vs):
            return sorted(self.label(v) for v in vs)

        return {
            "method": self.method,
            "method_length": len(self.body_nodes),
            "entry_defs": var_names(self.entry_defs),
            "nodes": [
                {"id": n.id, "kind": n.kind, "line": n.line, "col": n.span.col,
                 "label": n.label, "defs": var_names(n.defs), "uses": var_names(n.uses)}
                for n in self.body_nodes
            ],
            "data_edges": [
                {"from": a, "to": b, "var": self.label(v)}
                for a, b, v in sorted(self.data_edges, key=lambda e: (e[0], e[1], e[2].index))
            ],
            "control_edges": [{"from": a, "to": b} for a, b in sorted(self.control_edges)],
        }

    def to_dot(self) -> str:
        def nid(n: int) -> str:
            return "entry" if n == ENTRY else f"n{n}"

        lines = [f'digraph "{self.method}" {{', '  node [shape=box];',
                 '  entry [label="entry", shape=ellipse];']
        for n in self.body_nodes:
            lines.append(f'  {nid(n.id)} [label="{n.id}:{n.kind}:{n.line}"];')
        for a, b, v in sorted(self.data_edges, key=lambda e: (e[0], e[1], e[2].index)):
            lines.append(f'  {nid(a)} -> {nid(b)} [style=solid, label="{self.label(v)}"];')
        for a, b in sorted(self.control_edges):
            lines.append(f"  {nid(a)} -> {nid(b)} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_pdg(program: ResolvedProgram, method: str) -> Pdg:
    """Build the PDG of ``method``: reaching-definition data edges plus
    structured (nearest enclosing predicate) control edges."""
    syms = program.symbols[method]
    b = _build(syms)
    params = frozenset(v for v in syms.variables if v.is_param)
    cfg = Cfg(b.nodes, b.succ, b.labels, params)
    rd = reaching_definitions(cfg)
    control = frozenset((p, n) for n, p in b.control_parent.items())
    return Pdg(method, b.nodes, params, frozenset(rd.chains(cfg)), control,
               list(syms.variables), syms)


def node_weight(stmt: ast.Stmt) -> int:
    """Number of PDG nodes a statement contributes, counted from the AST."""
    if isinstance(stmt, ast.Block):
        return sum(node_weight(s) for s in stmt.stmts)
    if isinstance(stmt, ast.If):
        return 1 + node_weight(stmt.then) + (node_weight(stmt.orelse) if stmt.orelse else 0)
    if isinstance(stmt, ast.While):
        return 1 + node_weight(stmt.body)
    if isinstance(stmt, ast.For):
        return 3 + node_weight(stmt.body)
    return 1
