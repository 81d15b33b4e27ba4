"""Exceptions raised by the logic kernel.

Well-formedness errors carry ``position``: the path of child indices from the
root of the checked expression to the offending subterm.
"""
from __future__ import annotations


class KernelError(Exception):
    code = "E-KERNEL"


class WellFormednessError(KernelError):
    code = "E-ILL-FORMED"

    def __init__(self, message: str, position: tuple[int, ...] = ()):
        super().__init__(message)
        self.position = position


class UnknownSymbol(WellFormednessError):
    code = "E-UNKNOWN-SYMBOL"


class UnknownVariable(WellFormednessError):
    code = "E-UNKNOWN-VARIABLE"


class ArityMismatch(WellFormednessError):
    code = "E-ARITY"


class SortMismatch(WellFormednessError):
    code = "E-SORT-MISMATCH"


class EqSortMismatch(SortMismatch):
    code = "E-EQ-SORT-MISMATCH"


class UnknownSort(KernelError):
    code = "E-UNKNOWN-SORT"

    def __init__(self, sort: str, symbol: str | None = None):
        where = f" in the arity of {symbol}" if symbol else ""
        super().__init__(f"unknown sort {sort!r}{where}")
        self.sort = sort
        self.symbol = symbol


class DuplicateSymbol(KernelError):
    code = "E-DUP-NAME"

    def __init__(self, name: str):
        super().__init__(f"symbol {name!r} declared twice")
        self.name = name


class IllFormedFormula(KernelError):
    """A formula inside a derivation failed the well-formedness check."""

    code = "E-ILL-FORMED"

    def __init__(self, step_id: str, cause: WellFormednessError):
        super().__init__(f"step {step_id}: {cause}")
        self.step_id = step_id
        self.cause = cause


class BadRuleApplication(KernelError):
    code = "E-BAD-RULE"

    def __init__(self, step_id: str, reason: str):
        super().__init__(f"step {step_id}: {reason}")
        self.step_id = step_id
        self.reason = reason


class EigenvariableViolation(BadRuleApplication):
    code = "E-EIGENVARIABLE"


class UnknownAxiom(KernelError):
    code = "E-UNKNOWN-AXIOM"

    def __init__(self, step_id: str, name: str):
        super().__init__(f"step {step_id}: no axiom named {name!r}")
        self.step_id = step_id
        self.name = name
