"""Canonical source rendering of ASTs (re-parses to an equal tree)."""
from __future__ import annotations

from . import syntax as ast

_PREC = {"||": 1, "&&": 2, "==": 3, "!=": 3, "<": 4, "<=": 4, ">": 4, ">=": 4,
         "+": 5, "-": 5, "*": 6, "/": 6, "%": 6}
_UNARY_PREC = 7
_ATOM_PREC = 8

_ESCAPES = {"\n": "\\n", "\t": "\\t", '"': '\\"', "\\": "\\\\", "\r": "\\r", "\0": "\\0"}


def _prec(e: ast.Expr) -> int:
    if isinstance(e, ast.Binary):
        return _PREC[e.op]
    if isinstance(e, ast.Unary):
        return _UNARY_PREC
    return _ATOM_PREC


def expr_str(e: ast.Expr) -> str:
    if isinstance(e, ast.IntLit):
        return str(e.value)
    if isinstance(e, ast.DoubleLit):
        return e.text
    if isinstance(e, ast.BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, ast.StrLit):
        return '"' + "".join(_ESCAPES.get(c, c) for c in e.value) + '"'
    if isinstance(e, ast.Name):
        return e.ident
    if isinstance(e, ast.Index):
        return f"{_wrap(e.array, _ATOM_PREC)}[{expr_str(e.index)}]"
    if isinstance(e, ast.Length):
        return f"{_wrap(e.target, _ATOM_PREC)}.length"
    if isinstance(e, ast.Unary):
        # parenthesised nested unary avoids emitting "--" or "!!" ambiguity
        inner = expr_str(e.operand)
        if _prec(e.operand) <= _UNARY_PREC:
            inner = f"({inner})"
        return f"{e.op}{inner}"
    if isinstance(e, ast.Binary):
        p = _PREC[e.op]
        return f"{_wrap(e.left, p)} {e.op} {_wrap(e.right, p + 1)}"
    if isinstance(e, ast.Call):
        return f"{e.full_name}({', '.join(expr_str(a) for a in e.args)})"
    raise TypeError(f"not an expression: {e!r}")


def _wrap(e: ast.Expr, min_prec: int) -> str:
    s = expr_str(e)
    return f"({s})" if _prec(e) < min_prec else s


def simple_str(s: ast.Stmt) -> str:
    """Render a statement that fits on one line, without the trailing ';'."""
    if isinstance(s, ast.VarDecl):
        if s.init is None:
            return f"{s.type} {s.name}"
        return f"{s.type} {s.name} = {expr_str(s.init)}"
    if isinstance(s, ast.Assign):
        return f"{expr_str(s.target)} {s.op} {expr_str(s.value)}"
    if isinstance(s, ast.IncDec):
        t = expr_str(s.target)
        return f"{s.op}{t}" if s.prefix else f"{t}{s.op}"
    if isinstance(s, ast.ExprStmt):
        return expr_str(s.call)
    if isinstance(s, ast.Return):
        return "return" if s.value is None else f"return {expr_str(s.value)}"
    raise TypeError(f"not a simple statement: {s!r}")


def _stmt_lines(s: ast.Stmt, depth: int) -> list[str]:
    pad = "    " * depth
    if isinstance(s, ast.Block):
        return [pad + "{", *_body_lines(s, depth + 1), pad + "}"]
    if isinstance(s, ast.If):
        out = [pad + f"if ({expr_str(s.cond)})", *_nested(s.then, depth)]
        if s.orelse is not None:
            out += [pad + "else", *_nested(s.orelse, depth)]
        return out
    if isinstance(s, ast.While):
        return [pad + f"while ({expr_str(s.cond)})", *_nested(s.body, depth)]
    if isinstance(s, ast.For):
        header = f"for ({simple_str(s.init)}; {expr_str(s.cond)}; {simple_str(s.update)})"
        return [pad + header, *_nested(s.body, depth)]
    return [pad + simple_str(s) + ";"]


def _nested(s: ast.Stmt, depth: int) -> list[str]:
    return _stmt_lines(s, depth if isinstance(s, ast.Block) else depth + 1)


def _body_lines(block: ast.Block, depth: int) -> list[str]:
    out: list[str] = []
    for s in block.stmts:
        out += _stmt_lines(s, depth)
    return out


def method_str(m: ast.MethodDecl) -> str:
    ret = "void" if m.return_type is None else str(m.return_type)
    params = ", ".join(f"{p.type} {p.name}" for p in m.params)
    lines = [f"{ret} {m.name}({params})", "{", *_body_lines(m.body, 1), "}"]
    return "\n".join(lines)


def unit_str(unit: ast.CompilationUnit) -> str:
    return "\n\n".join(method_str(m) for m in unit.methods) + "\n"
