from __future__ import annotations

from typing import Mapping

from .errors import (
    ArityMismatch,
    EqSortMismatch,
    SortMismatch,
    UnknownSymbol,
    UnknownVariable,
    WellFormednessError,
)
from .syntax import (
    And,
    App,
    Bot,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    Signature,
    Term,
    Top,
    Var,
    free_vars,
    term_vars,
)


def wf_term(sig: Signature, ctx: Mapping[str, str], t: Term, pos: tuple[int, ...] = ()) -> str:
    """Return the sort of ``t`` or raise a WellFormednessError."""
    match t:
        case Var(name, sort):
            if name not in ctx:
                raise UnknownVariable(f"unbound variable {name!r}", pos)
            if ctx[name] != sort:
                raise SortMismatch(
                    f"variable {name!r} has sort {ctx[name]} but is used at sort {sort}", pos
                )
            return sort
        case App(fn, args):
            if fn not in sig.functions:
                raise UnknownSymbol(f"unknown function symbol {fn!r}", pos)
            arg_sorts, result = sig.functions[fn]
            if len(args) != len(arg_sorts):
                raise ArityMismatch(
                    f"{fn} expects {len(arg_sorts)} argument(s), got {len(args)}", pos
                )
            for i, (a, want) in enumerate(zip(args, arg_sorts)):
                got = wf_term(sig, ctx, a, pos + (i,))
                if got != want:
                    raise SortMismatch(
                        f"argument {i + 1} of {fn} has sort {got}, expected {want}", pos + (i,)
                    )
            return result
    raise TypeError(f"not a term: {t!r}")


def wf_formula(sig: Signature, ctx: Mapping[str, str], f: Formula, pos: tuple[int, ...] = ()) -> None:
    match f:
        case Pred(name, args):
            if name not in sig.predicates:
                raise UnknownSymbol(f"unknown predicate symbol {name!r}", pos)
            want = sig.predicates[name]
            if len(args) != len(want):
                raise ArityMismatch(
                    f"{name} expects {len(want)} argument(s), got {len(args)}", pos
                )
            for i, (a, s) in enumerate(zip(args, want)):
                got = wf_term(sig, ctx, a, pos + (i,))
                if got != s:
                    raise SortMismatch(
                        f"argument {i + 1} of {name} has sort {got}, expected {s}", pos + (i,)
                    )
        case Eq(l, r):
            ls = wf_term(sig, ctx, l, pos + (0,))
            rs = wf_term(sig, ctx, r, pos + (1,))
            if ls != rs:
                raise EqSortMismatch(f"equation between sorts {ls} and {rs}", pos)
        case Top() | Bot():
            pass
        case Not(b):
            wf_formula(sig, ctx, b, pos + (0,))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            wf_formula(sig, ctx, l, pos + (0,))
            wf_formula(sig, ctx, r, pos + (1,))
        case Forall(x, s, b) | Exists(x, s, b):
            if s not in sig.sorts:
                raise SortMismatch(f"binder {x} ranges over unknown sort {s!r}", pos)
            wf_formula(sig, {**ctx, x: s}, b, pos + (0,))
        case _:
            raise TypeError(f"not a formula: {f!r}")


def implicit_context(pairs) -> dict[str, str]:
    """Context read off the annotated free variables; one sort per name."""
    ctx: dict[str, str] = {}
    for name, sort in sorted(pairs):
        if ctx.setdefault(name, sort) != sort:
            raise SortMismatch(f"variable {name!r} used at sorts {ctx[name]} and {sort}")
    return ctx


def check_closed_or_annotated(sig: Signature, f: Formula) -> None:
    """Well-formedness with free variables taken at their annotated sorts."""
    wf_formula(sig, implicit_context(free_vars(f)), f)


def check_term_annotated(sig: Signature, t: Term) -> str:
    return wf_term(sig, implicit_context(term_vars(t)), t)


__all__ = [
    "wf_term",
    "wf_formula",
    "implicit_context",
    "check_closed_or_annotated",
    "check_term_annotated",
    "WellFormednessError",
]
