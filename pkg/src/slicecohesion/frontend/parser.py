"""Recursive-descent parser for the mini language.

Grammar (informal)::

    unit      := [mods] "class" IDENT "{" method* "}" | method+
    method    := mods* ("void" | type) IDENT "(" [param ("," param)*] ")" block
    type      := ("int" | "double" | "boolean" | "String" | "char" | "long") ("[" "]")*
    stmt      := block | if | while | for | return | decl ";" | simple ";"
    decl      := type IDENT ["=" expr]
    simple    := lvalue assignop expr | lvalue ("++" | "--") | ("++" | "--") lvalue | call
    for       := "for" "(" (decl | simple) ";" expr ";" simple ")" stmt

The parser stops at the first error.
"""
from __future__ import annotations

from typing import Optional

from . import syntax as ast
from .diagnostics import Diagnostic, FrontendError
from .lexer import TYPE_KEYWORDS, Token, tokenize

ASSIGN_OPS = ("=", "+=", "-=", "*=", "/=", "%=")
MODIFIERS = ("public", "private", "protected", "static", "final")

_BINARY_LEVELS: list[tuple[str, ...]] = [
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, *texts: str) -> bool:
        t = self.tok
        return t.kind in ("op", "keyword") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, msg: str, tok: Optional[Token] = None) -> FrontendError:
        t = tok or self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return FrontendError([Diagnostic("syntax", f"{msg}, found {found}", t.line, t.col)])

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def expect_ident(self) -> Token:
        if self.tok.kind != "ident":
            raise self.error("expected identifier")
        return self.advance()

    def span_from(self, start: Token) -> ast.Span:
        last = self.toks[self.pos - 1]
        return ast.Span(start.line, start.col, last.line, last.end_col)

    # -- declarations --------------------------------------------------------

    def unit(self) -> ast.CompilationUnit:
        save = self.pos
        while self.at(*MODIFIERS):
            self.advance()
        if self.at("class"):
            self.advance()
            self.expect_ident()
            self.expect("{")
            methods = []
            while not self.at("}"):
                if self.tok.kind == "eof":
                    raise self.error("expected '}' closing class")
                methods.append(self.method())
            self.advance()
        else:
            self.pos = save
            methods = []
            while self.tok.kind != "eof":
                methods.append(self.method())
        if self.tok.kind != "eof":
            raise self.error("expected end of input")
        if not methods:
            raise self.error("expected method declaration")
        return ast.CompilationUnit(methods)

    def type_ref(self) -> ast.TypeRef:
        if not (self.tok.kind == "keyword" and self.tok.text in TYPE_KEYWORDS):
            raise self.error("expected type")
        name = self.advance().text
        dims = 0
        while self.at("["):
            self.advance()
            self.expect("]")
            dims += 1
        return ast.TypeRef(name, dims)

    def method(self) -> ast.MethodDecl:
        start = self.tok
        while self.at(*MODIFIERS):
            self.advance()
        if self.at("void"):
            self.advance()
            ret = None
        else:
            ret = self.type_ref()
        name = self.expect_ident().text
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                pstart = self.tok
                ptype = self.type_ref()
                pname = self.expect_ident()
                name_span = ast.Span(pname.line, pname.col, pname.line, pname.end_col)
                params.append(ast.Param(ptype, pname.text, self.span_from(pstart), name_span))
                if not self.at(","):
                    break
                self.advance()
        self.expect(")")
        body = self.block()
        return ast.MethodDecl(name, params, body, ret, self.span_from(start))

    # -- statements ----------------------------------------------------------

    def block(self) -> ast.Block:
        start = self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                raise self.error("expected '}'")
            stmts.append(self.statement())
        self.advance()
        return ast.Block(stmts, self.span_from(start))

    def statement(self) -> ast.Stmt:
        start = self.tok
        if self.at("{"):
            return self.block()
        if self.at("if"):
            self.advance()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            then = self.statement()
            orelse = None
            if self.at("else"):
                self.advance()
                orelse = self.statement()
            return ast.If(cond, then, orelse, self.span_from(start))
        if self.at("while"):
            self.advance()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            body = self.statement()
            return ast.While(cond, body, self.span_from(start))
        if self.at("for"):
            return self.for_stmt()
        if self.at("return"):
            self.advance()
            value = None if self.at(";") else self.expr()
            self.expect(";")
            return ast.Return(value, self.span_from(start))
        if self.tok.kind == "keyword" and self.tok.text in TYPE_KEYWORDS:
            decl = self.declaration(require_init=False)
            self.expect(";")
            decl.span = self.span_from(start)
            return decl
        stmt = self.simple(allow_call=True)
        self.expect(";")
        stmt.span = self.span_from(start)
        return stmt

    def for_stmt(self) -> ast.For:
        start = self.expect("for")
        self.expect("(")
        if self.at(";"):
            raise self.error("for loop requires an init clause")
        if self.tok.kind == "keyword" and self.tok.text in TYPE_KEYWORDS:
            init = self.declaration(require_init=True)
        else:
            init = self.simple(allow_call=False)
        self.expect(";")
        if self.at(";"):
            raise self.error("for loop requires a condition")
        cond = self.expr()
        self.expect(";")
        if self.at(")"):
            raise self.error("for loop requires an update clause")
        update = self.simple(allow_call=False)
        self.expect(")")
        body = self.statement()
        return ast.For(init, cond, update, body, self.span_from(start))

    def declaration(self, require_init: bool) -> ast.VarDecl:
        start = self.tok
        vtype = self.type_ref()
        name = self.expect_ident()
        name_span = ast.Span(name.line, name.col, name.line, name.end_col)
        init = None
        if self.at("="):
            self.advance()
            init = self.expr()
        elif require_init:
            raise self.error("expected '=' in for-loop declaration")
        return ast.VarDecl(vtype, name.text, init, self.span_from(start), name_span)

    def simple(self, allow_call: bool) -> ast.Stmt:
        start = self.tok
        if self.at("++", "--"):
            op = self.advance().text
            target = self.lvalue()
            return ast.IncDec(target, op, True, self.span_from(start))
        if self.tok.kind != "ident":
            raise self.error("expected statement")
        if self.peek().kind == "op" and self.peek().text in (".", "("):
            if not allow_call:
                raise self.error("expected assignment or increment")
            e = self.postfix()
            if not isinstance(e, ast.Call):
                raise self.error("expected call statement")
            return ast.ExprStmt(e, self.span_from(start))
        target = self.lvalue()
        if self.at(*ASSIGN_OPS):
            op = self.advance().text
            value = self.expr()
            return ast.Assign(target, op, value, self.span_from(start))
        if self.at("++", "--"):
            op = self.advance().text
            return ast.IncDec(target, op, False, self.span_from(start))
        raise self.error("expected assignment operator")

    def lvalue(self) -> ast.Name | ast.Index:
        start = self.expect_ident()
        node: ast.Name | ast.Index = ast.Name(start.text, self.span_from(start))
        while self.at("["):
            self.advance()
            idx = self.expr()
            self.expect("]")
            node = ast.Index(node, idx, self.span_from(start))
        return node

    # -- expressions ---------------------------------------------------------

    def expr(self) -> ast.Expr:
        return self.binary(0)

    def binary(self, level: int) -> ast.Expr:
        if level == len(_BINARY_LEVELS):
            return self.unary()
        start = self.tok
        left = self.binary(level + 1)
        while self.tok.kind == "op" and self.tok.text in _BINARY_LEVELS[level]:
            op = self.advance().text
            right = self.binary(level + 1)
            left = ast.Binary(op, left, right, self.span_from(start))
        return left

    def unary(self) -> ast.Expr:
        start = self.tok
        if self.at("-", "!"):
            op = self.advance().text
            operand = self.unary()
            return ast.Unary(op, operand, self.span_from(start))
        return self.postfix()

    def postfix(self) -> ast.Expr:
        start = self.tok
        node = self.primary()
        while True:
            if self.at("["):
                self.advance()
                idx = self.expr()
                self.expect("]")
                node = ast.Index(node, idx, self.span_from(start))
            elif self.at(".") and self.peek().kind == "ident" and self.peek().text == "length":
                self.advance()
                self.advance()
                node = ast.Length(node, self.span_from(start))
            else:
                return node

    def primary(self) -> ast.Expr:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return ast.IntLit(int(t.text), self.span_from(t))
        if t.kind == "double":
            self.advance()
            return ast.DoubleLit(t.text, self.span_from(t))
        if t.kind == "string":
            self.advance()
            return ast.StrLit(_unescape(t.text[1:-1]), self.span_from(t))
        if self.at("true", "false"):
            self.advance()
            return ast.BoolLit(t.text == "true", self.span_from(t))
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "ident":
            return self.name_or_call()
        raise self.error("expected expression")

    def name_or_call(self) -> ast.Expr:
        start = self.advance()
        parts = [start.text]
        # a dotted chain is a qualified call, except for ``x.length``
        while (self.at(".") and self.peek().kind == "ident"
               and not (self.peek().text == "length" and not self._call_follows(2))):
            self.advance()
            parts.append(self.advance().text)
        if self.at("("):
            self.advance()
            args = []
            if not self.at(")"):
                args.append(self.expr())
                while self.at(","):
                    self.advance()
                    args.append(self.expr())
            self.expect(")")
            return ast.Call(tuple(parts[:-1]), parts[-1], args, self.span_from(start))
        if len(parts) > 1:
            raise self.error("field access is not supported; expected '('")
        return ast.Name(start.text, self.span_from(start))

    def _call_follows(self, k: int) -> bool:
        t = self.peek(k)
        return t.kind == "op" and t.text == "("


_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\", "r": "\r", "0": "\0", "'": "'"}


def _unescape(body: str) -> str:
    out = []
    it = iter(body)
    for ch in it:
        if ch == "\\":
            nxt = next(it)
            out.append(_ESCAPES.get(nxt, nxt))
        else:
            out.append(ch)
    return "".join(out)


def parse(text: str) -> ast.CompilationUnit:
    """Parse source text into a :class:`CompilationUnit`.

    Raises :class:`FrontendError` carrying positioned diagnostics on
    lexical or syntax errors.
    """
    return _Parser(tokenize(text)).unit()
