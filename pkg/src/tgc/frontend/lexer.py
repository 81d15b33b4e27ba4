from __future__ import annotations

import re
from dataclasses import dataclass

from .diagnostics import Diagnostic, SourceSpan, error

IDENT, STRING, SYM, EOF = "ident", "string", "sym", "eof"

# unicode spellings accepted on input; printed back in ASCII
ALIASES = {
    "∀": (IDENT, "forall"),
    "∃": (IDENT, "exists"),
    "¬": (SYM, "~"),
    "∧": (SYM, "/\\"),
    "∨": (SYM, "\\/"),
    "→": (SYM, "->"),
    "↔": (SYM, "<->"),
    "⊤": (IDENT, "true"),
    "⊥": (IDENT, "false"),
    "⊢": (SYM, "|-"),
}

SYMBOLS = ("<->", "|-", "->", "/\\", "\\/", "{", "}", "(", ")", "[", "]", ",", ":", ".", "=", "~", ";")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*(?:-[A-Za-z][A-Za-z0-9_']*)*")
_STRING = re.compile(r'"((?:[^"\\\n]|\\.)*)"')


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    span: SourceSpan

    def is_(self, kind: str, value: str | None = None) -> bool:
        return self.kind == kind and (value is None or self.value == value)


def _unescape(s: str) -> str:
    return re.sub(r"\\(.)", lambda m: {"n": "\n", "t": "\t"}.get(m.group(1), m.group(1)), s)


def tokenize(text: str, file: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    line, col, i = 1, 1, 0
    n = len(text)

    def span(length: int) -> SourceSpan:
        return SourceSpan(file, line, col, line, col + length)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in ALIASES:
            kind, value = ALIASES[ch]
            tokens.append(Token(kind, value, span(1)))
            i, col = i + 1, col + 1
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(Token(IDENT, m.group(), span(len(m.group()))))
            i, col = m.end(), col + len(m.group())
            continue
        if ch == '"':
            m = _STRING.match(text, i)
            if not m:
                diags.append(error("E-LEX", "unterminated string literal", span(1)))
                while i < n and text[i] != "\n":
                    i, col = i + 1, col + 1
                continue
            tokens.append(Token(STRING, _unescape(m.group(1)), span(len(m.group()))))
            i, col = m.end(), col + len(m.group())
            continue
        for sym in SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(SYM, sym, span(len(sym))))
                i, col = i + len(sym), col + len(sym)
                break
        else:
            diags.append(error("E-LEX", f"unexpected character {ch!r}", span(1)))
            i, col = i + 1, col + 1
    tokens.append(Token(EOF, "", SourceSpan(file, line, col, line, col + 1)))
    return tokens, diags
