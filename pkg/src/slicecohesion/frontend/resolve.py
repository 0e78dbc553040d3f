"""Name resolution: bind every identifier occurrence to a variable."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import syntax as ast
from .diagnostics import Diagnostic, FrontendError
from .parser import parse

OUTPUT_CALLS = frozenset({
    "print", "println", "out.print", "out.println",
    "System.out.print", "System.out.println",
})


@dataclass(frozen=True, order=True)
class VariableId:
    """A declared local or parameter. ``index`` is the declaration order."""

    index: int
    name: str
    kind: str  # "param" or "local"
    decl_line: int

    @property
    def is_param(self) -> bool:
        return self.kind == "param"

    def __str__(self) -> str:
        return self.name


@dataclass
class MethodSymbols:
    method: ast.MethodDecl
    variables: list[VariableId]
    # (line, col) of each identifier occurrence, declarations included
    occurrences: dict[tuple[int, int], VariableId]
    calls: list[str] = field(default_factory=list)

    def lookup(self, node: ast.Name | ast.VarDecl | ast.Param) -> VariableId:
        if isinstance(node, (ast.VarDecl, ast.Param)):
            span = node.name_span
        else:
            span = node.span
        return self.occurrences[(span.line, span.col)]

    def label(self, var: VariableId) -> str:
        """Display name; disambiguated when a method declares a name twice."""
        same = [v for v in self.variables if v.name == var.name]
        if len(same) == 1:
            return var.name
        return f"{var.name}#{same.index(var) + 1}"


@dataclass
class ResolvedProgram:
    unit: ast.CompilationUnit
    symbols: dict[str, MethodSymbols]

    @property
    def method_names(self) -> list[str]:
        return [m.name for m in self.unit.methods]

    @property
    def builtin_calls(self) -> list[str]:
        names = []
        for syms in self.symbols.values():
            for c in syms.calls:
                if c not in names:
                    names.append(c)
        return names


class _MethodResolver:
    def __init__(self, method: ast.MethodDecl):
        self.method = method
        self.scopes: list[dict[str, VariableId]] = [{}]
        self.variables: list[VariableId] = []
        self.occurrences: dict[tuple[int, int], VariableId] = {}
        self.calls: list[str] = []

    def declare(self, name: str, kind: str, span: ast.Span) -> None:
        for scope in self.scopes:
            if name in scope:
                raise FrontendError([Diagnostic(
                    "duplicate-declaration",
                    f"variable {name!r} is already defined (line {scope[name].decl_line})",
                    span.line, span.col)])
        var = VariableId(len(self.variables), name, kind, span.line)
        self.variables.append(var)
        self.scopes[-1][name] = var
        self.occurrences[(span.line, span.col)] = var

    def use(self, node: ast.Name) -> None:
        for scope in reversed(self.scopes):
            if node.ident in scope:
                self.occurrences[(node.span.line, node.span.col)] = scope[node.ident]
                return
        raise FrontendError([Diagnostic(
            "unresolved-variable", f"cannot find variable {node.ident!r}",
            node.span.line, node.span.col)])

    def expr(self, e: ast.Expr) -> None:
        for sub in ast.iter_exprs(e):
            if isinstance(sub, ast.Name):
                self.use(sub)
            elif isinstance(sub, ast.Call) and sub.full_name not in self.calls:
                self.calls.append(sub.full_name)

    def run(self) -> MethodSymbols:
        for p in self.method.params:
            self.declare(p.name, "param", p.name_span)
        self.block(self.method.body)
        return MethodSymbols(self.method, self.variables, self.occurrences, self.calls)

    def block(self, b: ast.Block) -> None:
        self.scopes.append({})
        for s in b.stmts:
            self.stmt(s)
        self.scopes.pop()

    def scoped(self, s: ast.Stmt) -> None:
        if isinstance(s, ast.Block):
            self.block(s)
        else:
            self.scopes.append({})
            self.stmt(s)
            self.scopes.pop()

    def stmt(self, s: ast.Stmt) -> None:
        if isinstance(s, ast.Block):
            self.block(s)
        elif isinstance(s, ast.VarDecl):
            if s.init is not None:
                self.expr(s.init)
            self.declare(s.name, "local", s.name_span)
        elif isinstance(s, ast.Assign):
            self.expr(s.value)
            self.expr(s.target)
        elif isinstance(s, ast.IncDec):
            self.expr(s.target)
        elif isinstance(s, ast.If):
            self.expr(s.cond)
            self.scoped(s.then)
            if s.orelse is not None:
                self.scoped(s.orelse)
        elif isinstance(s, ast.While):
            self.expr(s.cond)
            self.scoped(s.body)
        elif isinstance(s, ast.For):
            self.scopes.append({})
            self.stmt(s.init)
            self.expr(s.cond)
            self.stmt(s.update)
            self.scoped(s.body)
            self.scopes.pop()
        elif isinstance(s, ast.ExprStmt):
            self.expr(s.call)
        elif isinstance(s, ast.Return):
            if s.value is not None:
                self.expr(s.value)
        else:
            raise TypeError(f"unknown statement {s!r}")


def resolve(unit: ast.CompilationUnit) -> ResolvedProgram:
    """Bind identifiers per method; raises :class:`FrontendError`."""
    symbols: dict[str, MethodSymbols] = {}
    for m in unit.methods:
        if m.name in symbols:
            raise FrontendError([Diagnostic(
                "duplicate-declaration", f"method {m.name!r} is already defined",
                m.span.line, m.span.col)])
        symbols[m.name] = _MethodResolver(m).run()
    return ResolvedProgram(unit, symbols)


def load(text: str) -> ResolvedProgram:
    return resolve(parse(text))


def compilable(text: str) -> bool:
    """True iff ``text`` parses and resolves."""
    try:
        load(text)
    except FrontendError:
        return False
    except RecursionError:
        return False
    return True
