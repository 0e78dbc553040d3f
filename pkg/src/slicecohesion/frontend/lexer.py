from __future__ import annotations

import re
from dataclasses import dataclass

from .diagnostics import Diagnostic, FrontendError

KEYWORDS = frozenset({
    "void", "int", "double", "boolean", "String", "char", "long",
    "if", "else", "while", "for", "return", "true", "false",
    "public", "private", "protected", "static", "final", "class",
})

TYPE_KEYWORDS = frozenset({"int", "double", "boolean", "String", "char", "long"})

# Longest operators first so that "+=" wins over "+".
_OPERATORS = [
    "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "++", "--",
    "+", "-", "*", "/", "%", "<", ">", "!", "=",
    "(", ")", "{", "}", "[", "]", ";", ",", ".",
]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<double>\d+\.\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<op>""" + "|".join(re.escape(o) for o in _OPERATORS) + r""")
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, keyword, int, double, string, op, eof
    text: str
    line: int
    col: int

    @property
    def end_col(self) -> int:
        return self.col + len(self.text)


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens, ending with a single ``eof`` token."""
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            ch = text[pos]
            if ch == '"':
                msg = "unterminated string literal"
            else:
                msg = f"unexpected character {ch!r}"
            raise FrontendError([Diagnostic("lexical", msg, line, col)])
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("ws", "comment"):
            pass
        else:
            if kind == "ident" and lexeme in KEYWORDS:
                kind = "keyword"
            tokens.append(Token(kind, lexeme, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens
