from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True, order=True)
class SourceSpan:
    """1-based positions; the start is inclusive and the end exclusive."""

    file: str
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"

    def to(self, other: "SourceSpan") -> "SourceSpan":
        return SourceSpan(self.file, self.line, self.col, other.end_line, other.end_col)

    def contains(self, other: "SourceSpan") -> bool:
        return (
            self.file == other.file
            and (self.line, self.col) <= (other.line, other.col)
            and (other.end_line, other.end_col) <= (self.end_line, self.end_col)
        )

    def as_dict(self) -> dict:
        return {
            "file": self.file,
            "line": self.line,
            "col": self.col,
            "end_line": self.end_line,
            "end_col": self.end_col,
        }


NO_SPAN = SourceSpan("<none>", 1, 1, 1, 2)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    message: str
    span: SourceSpan
    notes: tuple[str, ...] = field(default=())

    @property
    def is_error(self) -> bool:
        return self.severity == "error"

    def __str__(self) -> str:
        text = f"{self.span}: {self.severity} {self.code}: {self.message}"
        for n in self.notes:
            text += f"\n    note: {n}"
        return text

    def as_dict(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "span": self.span.as_dict(),
            "notes": list(self.notes),
        }


def error(code: str, message: str, span: SourceSpan, *notes: str) -> Diagnostic:
    return Diagnostic("error", code, message, span, tuple(notes))


def warning(code: str, message: str, span: SourceSpan, *notes: str) -> Diagnostic:
    return Diagnostic("warning", code, message, span, tuple(notes))
