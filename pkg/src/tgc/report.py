"""The report value behind every CLI command, in text and JSON form."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable

from . import __version__
from .frontend.diagnostics import Diagnostic

SCHEMA = "tgc-report/1"


def input_digest(files: Iterable[tuple[str, bytes]]) -> str:
    h = hashlib.sha256()
    for path, data in files:
        h.update(path.encode())
        h.update(b"\0")
        h.update(hashlib.sha256(data).digest())
    return "sha256:" + h.hexdigest()


@dataclass(frozen=True)
class Item:
    kind: str
    id: str
    status: str
    details: dict = field(default_factory=dict)
    diagnostics: tuple[Diagnostic, ...] = ()

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "id": self.id,
            "status": self.status,
            "details": self.details,
            "diagnostics": [d.as_dict() for d in self.diagnostics],
        }


@dataclass
class Report:
    command: str
    digest: str = ""
    items: list[Item] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    exit_status: int = 0
    output: str = ""  # declaration text printed by ``transport``

    def add(self, kind: str, id: str, status: str, **details) -> None:
        self.items.append(Item(kind, id, status, details))

    @property
    def summary(self) -> dict:
        statuses: dict[str, dict[str, int]] = {}
        for it in self.items:
            per = statuses.setdefault(it.kind, {})
            per[it.status] = per.get(it.status, 0) + 1
        return {
            "errors": sum(d.is_error for d in self.diagnostics),
            "warnings": sum(not d.is_error for d in self.diagnostics),
            "items": {k: dict(sorted(v.items())) for k, v in sorted(statuses.items())},
        }

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool": "tgc",
            "version": __version__,
            "command": self.command,
            "input_digest": self.digest,
            "exit_status": self.exit_status,
            "summary": self.summary,
            "diagnostics": [d.as_dict() for d in self.diagnostics],
            "items": [it.as_dict() for it in self.items],
            "output": self.output,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [str(d) for d in self.diagnostics]
        for it in self.items:
            line = f"{it.kind} {it.id}: {it.status}"
            note = it.details.get("note")
            if note:
                line += f" ({note})"
            lines.append(line)
        s = self.summary
        counts = "; ".join(
            f"{k}: " + ", ".join(f"{n} {st}" for st, n in v.items()) for k, v in s["items"].items()
        )
        tail = f"{s['errors']} errors, {s['warnings']} warnings"
        lines.append(tail + (f"; {counts}" if counts else ""))
        if self.output:
            lines.append("")
            lines.append(self.output.rstrip("\n"))
        return "\n".join(lines) + "\n"
