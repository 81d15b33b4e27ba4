"""Canonical concrete syntax for kernel terms and formulas.

The output re-parses (given the signature and the free-variable sorts) to an
alpha-equal formula.  Binders whose name collides with a name in ``reserved``
(normally the signature's symbols) are renamed so that the result stays
unambiguous.
"""
from __future__ import annotations

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
    Term,
    Top,
    Var,
    all_var_names,
    fresh_name,
    substitute,
)

_OPS = {Iff: ("<->", 1), Implies: ("->", 2), Or: ("\\/", 3), And: ("/\\", 4)}
_NOT_PREC = 5


def format_term(t: Term) -> str:
    match t:
        case Var(name, _):
            return name
        case App(fn, ()):
            return fn
        case App(fn, args):
            return f"{fn}({','.join(format_term(a) for a in args)})"
    raise TypeError(f"not a term: {t!r}")


def format_formula(f: Formula, reserved: frozenset[str] | set[str] = frozenset()) -> str:
    return _fmt(f, frozenset(reserved))


def _binders(f: Formula, reserved):
    """Collect a run of same-kind quantifiers, renaming reserved binder names."""
    kind = type(f)
    binds = []
    while type(f) is kind:
        x, s, body = f.var, f.sort, f.body
        if x in reserved:
            y = fresh_name(x, set(reserved) | all_var_names(body))
            body = substitute(body, {x: Var(y, s)})
            x = y
        binds.append((x, s))
        f = body
    return binds, f


def _fmt(f: Formula, reserved, ctx_prec: int = 0) -> str:
    match f:
        case Top():
            return "true"
        case Bot():
            return "false"
        case Pred(name, ()):
            return name
        case Pred(name, args):
            return f"{name}({','.join(format_term(a) for a in args)})"
        case Eq(l, r):
            return f"{format_term(l)} = {format_term(r)}"
        case Not(b):
            return "~" + _fmt(b, reserved, _NOT_PREC)
        case Forall() | Exists():
            kw = "forall" if isinstance(f, Forall) else "exists"
            binds, body = _binders(f, reserved)
            text = f"{kw} {', '.join(f'{x}:{s}' for x, s in binds)}. {_fmt(body, reserved)}"
            return f"({text})" if ctx_prec > 0 else text
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            op, prec = _OPS[type(f)]
            right_assoc = isinstance(f, (Implies, Iff))
            lp = prec + 1 if right_assoc else prec
            rp = prec if right_assoc else prec + 1
            if isinstance(f, Iff):
                lp = rp = prec + 1
            text = f"{_fmt(l, reserved, lp)} {op} {_fmt(r, reserved, rp)}"
            return f"({text})" if ctx_prec > prec else text
    raise TypeError(f"not a formula: {f!r}")
