"""AST node classes for the mini imperative language.

Spans are carried on every node but excluded from equality, so two trees
parsed from differently formatted text compare equal when their structure
matches.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


@dataclass(frozen=True, order=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NO_SPAN = Span(0, 0, 0, 0)


def _span() -> Span:
    return field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class TypeRef:
    name: str
    dims: int = 0

    def __str__(self) -> str:
        return self.name + "[]" * self.dims


# -- expressions -------------------------------------------------------------


@dataclass
class IntLit:
    value: int
    span: Span = _span()


@dataclass
class DoubleLit:
    text: str
    span: Span = _span()


@dataclass
class BoolLit:
    value: bool
    span: Span = _span()


@dataclass
class StrLit:
    value: str
    span: Span = _span()


@dataclass
class Name:
    ident: str
    span: Span = _span()


@dataclass
class Index:
    array: "Expr"
    index: "Expr"
    span: Span = _span()


@dataclass
class Length:
    target: "Expr"
    span: Span = _span()


@dataclass
class Unary:
    op: str
    operand: "Expr"
    span: Span = _span()


@dataclass
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: Span = _span()


@dataclass
class Call:
    qualifier: tuple[str, ...]
    name: str
    args: list["Expr"]
    span: Span = _span()

    @property
    def full_name(self) -> str:
        return ".".join(self.qualifier + (self.name,))


Expr = Union[IntLit, DoubleLit, BoolLit, StrLit, Name, Index, Length, Unary, Binary, Call]


# -- statements --------------------------------------------------------------


@dataclass
class VarDecl:
    type: TypeRef
    name: str
    init: Optional[Expr]
    span: Span = _span()
    name_span: Span = _span()


@dataclass
class Assign:
    target: Union[Name, Index]
    op: str
    value: Expr
    span: Span = _span()


@dataclass
class IncDec:
    target: Union[Name, Index]
    op: str
    prefix: bool = False
    span: Span = _span()


@dataclass
class If:
    cond: Expr
    then: "Stmt"
    orelse: Optional["Stmt"] = None
    span: Span = _span()


@dataclass
class While:
    cond: Expr
    body: "Stmt"
    span: Span = _span()


@dataclass
class For:
    init: Union[VarDecl, Assign, IncDec]
    cond: Expr
    update: Union[Assign, IncDec]
    body: "Stmt"
    span: Span = _span()


@dataclass
class ExprStmt:
    call: Call
    span: Span = _span()


@dataclass
class Return:
    value: Optional[Expr] = None
    span: Span = _span()


@dataclass
class Block:
    stmts: list["Stmt"]
    span: Span = _span()


Stmt = Union[VarDecl, Assign, IncDec, If, While, For, ExprStmt, Return, Block]


@dataclass
class Param:
    type: TypeRef
    name: str
    span: Span = _span()
    name_span: Span = _span()


@dataclass
class MethodDecl:
    name: str
    params: list[Param]
    body: Block
    return_type: Optional[TypeRef] = None  # None means void
    span: Span = _span()


@dataclass
class CompilationUnit:
    methods: list[MethodDecl]

    def method(self, name: str) -> MethodDecl:
        for m in self.methods:
            if m.name == name:
                return m
        raise KeyError(name)


def iter_stmts(stmt: Stmt):
    """Yield ``stmt`` and every statement nested inside it, in source order."""
    yield stmt
    if isinstance(stmt, Block):
        for s in stmt.stmts:
            yield from iter_stmts(s)
    elif isinstance(stmt, If):
        yield from iter_stmts(stmt.then)
        if stmt.orelse is not None:
            yield from iter_stmts(stmt.orelse)
    elif isinstance(stmt, While):
        yield from iter_stmts(stmt.body)
    elif isinstance(stmt, For):
        yield from iter_stmts(stmt.init)
        yield from iter_stmts(stmt.update)
        yield from iter_stmts(stmt.body)


def iter_exprs(expr: Expr):
    yield expr
    if isinstance(expr, Index):
        yield from iter_exprs(expr.array)
        yield from iter_exprs(expr.index)
    elif isinstance(expr, Length):
        yield from iter_exprs(expr.target)
    elif isinstance(expr, Unary):
        yield from iter_exprs(expr.operand)
    elif isinstance(expr, Binary):
        yield from iter_exprs(expr.left)
        yield from iter_exprs(expr.right)
    elif isinstance(expr, Call):
        for a in expr.args:
            yield from iter_exprs(a)
