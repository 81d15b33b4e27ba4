"""The ``.tg`` declaration language: lexing, parsing, printing, elaboration."""
from .ast import Ast
from .diagnostics import Diagnostic, SourceSpan
from .elaborate import Elaboration, elaborate
from .loader import LoadError, load
from .parser import ParseError, parse, parse_formula, parse_text
from .printer import pretty_print

__all__ = [
    "Ast",
    "Diagnostic",
    "SourceSpan",
    "Elaboration",
    "elaborate",
    "LoadError",
    "load",
    "ParseError",
    "parse",
    "parse_formula",
    "parse_text",
    "pretty_print",
]
