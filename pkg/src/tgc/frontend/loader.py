"""Reading ``.tg`` files and resolving ``include`` directives."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

from . import ast as A
from .diagnostics import Diagnostic, error
from .parser import parse_text


class LoadError(Exception):
    """An input path could not be read."""

    code = "E-IO"


def expand(paths: Iterable[str | Path]) -> list[Path]:
    """Directories expand to their ``*.tg`` files, sorted by name."""
    out: list[Path] = []
    for p in map(Path, paths):
        if p.is_dir():
            out.extend(sorted(p.glob("*.tg")))
        elif p.is_file():
            out.append(p)
        else:
            raise LoadError(f"no such file or directory: {p}")
    return out


def load(paths: Iterable[str | Path]) -> tuple[A.Ast, list[Diagnostic], list[tuple[str, bytes]]]:
    """Parse ``paths`` and everything they include.

    Included files come before the including file, each file is read once, and
    the raw bytes of every file read are returned in load order.
    """
    seen: set[Path] = set()
    ast = A.Ast()
    diags: list[Diagnostic] = []
    raw: list[tuple[str, bytes]] = []

    def visit(path: Path, shown: str) -> None:
        nonlocal ast
        key = path.resolve()
        if key in seen:
            return
        seen.add(key)
        data = path.read_bytes()
        raw.append((shown, data))
        a, d = parse_text(data.decode("utf-8", errors="replace"), shown)
        diags.extend(d)
        for decl in a.decls:
            if isinstance(decl, A.IncludeDecl):
                target = path.parent / decl.path
                if not target.is_file():
                    diags.append(error("E-IO", f"cannot include {decl.path!r}", decl.span))
                    continue
                visit(target, str(Path(shown).parent / decl.path))
        ast = ast + A.Ast(tuple(x for x in a.decls if not isinstance(x, A.IncludeDecl)))

    for p in expand(paths):
        visit(p, str(p))
    return ast, diags, raw
