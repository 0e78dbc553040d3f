"""Lexer, parser and name resolution for the ``.mj`` mini language."""
from .diagnostics import Diagnostic, FrontendError
from .parser import parse
from .pretty import unit_str
from .resolve import (
    OUTPUT_CALLS,
    MethodSymbols,
    ResolvedProgram,
    VariableId,
    compilable,
    load,
    resolve,
)

__all__ = [
    "Diagnostic", "FrontendError", "parse", "unit_str", "OUTPUT_CALLS", "MethodSymbols",
    "ResolvedProgram", "VariableId", "compilable", "load", "resolve",
]
