from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # lexical, syntax, unresolved-variable, duplicate-declaration
    message: str
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.kind} error: {self.message}"


class FrontendError(Exception):
    """Raised when source text fails to lex, parse or resolve."""

    def __init__(self, diagnostics: list[Diagnostic]):
        assert diagnostics
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in diagnostics))
