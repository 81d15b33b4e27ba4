"""Terms, formulas and signatures of many-sorted first-order logic with equality.

Variables are identified by name; the sort is carried on every occurrence and
on every binder.  All values are immutable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union


@dataclass(frozen=True)
class Var:
    name: str
    sort: str


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple["Term", ...] = ()


Term = Union[Var, App]


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    sort: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    sort: str
    body: "Formula"


Formula = Union[Pred, Eq, Top, Bot, Not, And, Or, Implies, Iff, Forall, Exists]
Binary = (And, Or, Implies, Iff)
Quantifier = (Forall, Exists)

TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class Signature:
    sorts: tuple[str, ...] = ()
    functions: Mapping[str, tuple[tuple[str, ...], str]] = field(default_factory=dict)
    predicates: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def symbols(self) -> set[str]:
        return set(self.functions) | set(self.predicates)

    def has_sort(self, s: str) -> bool:
        return s in self.sorts

    def validate(self) -> None:
        """Raise if an arity mentions an undeclared sort or a name is reused."""
        from .errors import DuplicateSymbol, UnknownSort

        clash = set(self.functions) & set(self.predicates)
        if clash:
            raise DuplicateSymbol(sorted(clash)[0])
        for name, (args, res) in self.functions.items():
            for s in (*args, res):
                if s not in self.sorts:
                    raise UnknownSort(s, symbol=name)
        for name, args in self.predicates.items():
            for s in args:
                if s not in self.sorts:
                    raise UnknownSort(s, symbol=name)

    def extend(self, sorts: Iterable[str] = (), functions=None, predicates=None) -> "Signature":
        new_sorts = tuple(self.sorts) + tuple(s for s in sorts if s not in self.sorts)
        return Signature(
            new_sorts,
            {**self.functions, **(functions or {})},
            {**self.predicates, **(predicates or {})},
        )

    def contains(self, other: "Signature") -> bool:
        """True iff every entry of ``other`` occurs here with the same arity."""
        return (
            all(s in self.sorts for s in other.sorts)
            and all(self.functions.get(f) == a for f, a in other.functions.items())
            and all(self.predicates.get(p) == a for p, a in other.predicates.items())
        )


EMPTY_SIGNATURE = Signature()


# ---------------------------------------------------------------------------
# traversal helpers


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def term_vars(t: Term) -> set[tuple[str, str]]:
    return {(s.name, s.sort) for s in subterms(t) if isinstance(s, Var)}


def term_var_names(t: Term) -> set[str]:
    return {s.name for s in subterms(t) if isinstance(s, Var)}


def free_vars(f: Formula) -> set[tuple[str, str]]:
    """Variables with a free occurrence, as (name, sort) pairs."""
    out: set[tuple[str, str]] = set()
    _free(f, frozenset(), out)
    return out


def _free(f: Formula, bound: frozenset, out: set) -> None:
    match f:
        case Pred(_, args):
            for a in args:
                out.update(v for v in term_vars(a) if v[0] not in bound)
        case Eq(l, r):
            out.update(v for v in term_vars(l) | term_vars(r) if v[0] not in bound)
        case Top() | Bot():
            pass
        case Not(b):
            _free(b, bound, out)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            _free(l, bound, out)
            _free(r, bound, out)
        case Forall(x, _, b) | Exists(x, _, b):
            _free(b, bound | {x}, out)
        case _:
            raise TypeError(f"not a formula: {f!r}")


def free_var_names(f: Formula) -> set[str]:
    return {n for n, _ in free_vars(f)}


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def all_var_names(f: Formula) -> set[str]:
    """Every variable name occurring in ``f``, bound or free."""
    match f:
        case Pred(_, args):
            return set().union(*(term_var_names(a) for a in args))
        case Eq(l, r):
            return term_var_names(l) | term_var_names(r)
        case Top() | Bot():
            return set()
        case Not(b):
            return all_var_names(b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return all_var_names(l) | all_var_names(r)
        case Forall(x, _, b) | Exists(x, _, b):
            return all_var_names(b) | {x}
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# substitution


_SUFFIX = re.compile(r"\d+$")


def fresh_name(base: str, avoid: set[str]) -> str:
    """``base`` with its numeric suffix replaced by the smallest unused one."""
    stem = _SUFFIX.sub("", base) or base
    n = 1
    while f"{stem}{n}" in avoid:
        n += 1
    return f"{stem}{n}"


def substitute_term(t: Term, subst: Mapping[str, Term]) -> Term:
    match t:
        case Var(name, _):
            return subst.get(name, t)
        case App(fn, args):
            if not args:
                return t
            return App(fn, tuple(substitute_term(a, subst) for a in args))
    raise TypeError(f"not a term: {t!r}")


def substitute(f: Formula, subst: Mapping[str, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    if not subst:
        return f
    match f:
        case Pred(name, args):
            return Pred(name, tuple(substitute_term(a, subst) for a in args))
        case Eq(l, r):
            return Eq(substitute_term(l, subst), substitute_term(r, subst))
        case Top() | Bot():
            return f
        case Not(b):
            return Not(substitute(b, subst))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(f)(substitute(l, subst), substitute(r, subst))
        case Forall(x, s, b) | Exists(x, s, b):
            body_free = free_var_names(b)
            inner = {k: v for k, v in subst.items() if k != x and k in body_free}
            if not inner:
                return f
            range_vars = set().union(*(term_var_names(t) for t in inner.values()))
            if x in range_vars:
                avoid = range_vars | body_free | set(inner)
                y = fresh_name(x, avoid)
                inner[x] = Var(y, s)
                return type(f)(y, s, substitute(b, inner))
            return type(f)(x, s, substitute(b, inner))
    raise TypeError(f"not a formula: {f!r}")


def compose_substitutions(s1: Mapping[str, Term], s2: Mapping[str, Term]) -> dict[str, Term]:
    """The substitution equivalent to applying ``s1`` and then ``s2``."""
    out = {x: substitute_term(t, s2) for x, t in s1.items()}
    for x, t in s2.items():
        out.setdefault(x, t)
    return out


# ---------------------------------------------------------------------------
# alpha-equivalence


def alpha_eq(a: Formula, b: Formula) -> bool:
    """Equality up to consistent renaming of bound variables."""
    return _alpha(a, b, {}, {}, 0)


def _alpha_term(s: Term, t: Term, env_a: dict, env_b: dict) -> bool:
    match s, t:
        case Var(x, sx), Var(y, sy):
            if sx != sy:
                return False
            lx, ly = env_a.get(x), env_b.get(y)
            if lx is None and ly is None:
                return x == y
            return lx == ly
        case App(f, fa), App(g, ga):
            return (
                f == g
                and len(fa) == len(ga)
                and all(_alpha_term(p, q, env_a, env_b) for p, q in zip(fa, ga))
            )
    return False


def _alpha(a: Formula, b: Formula, env_a: dict, env_b: dict, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    match a:
        case Pred(name, args):
            return (
                name == b.name
                and len(args) == len(b.args)
                and all(_alpha_term(p, q, env_a, env_b) for p, q in zip(args, b.args))
            )
        case Eq(l, r):
            return _alpha_term(l, b.left, env_a, env_b) and _alpha_term(r, b.right, env_a, env_b)
        case Top() | Bot():
            return True
        case Not(body):
            return _alpha(body, b.body, env_a, env_b, depth)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return _alpha(l, b.left, env_a, env_b, depth) and _alpha(
                r, b.right, env_a, env_b, depth
            )
        case Forall(x, s, body) | Exists(x, s, body):
            if s != b.sort:
                return False
            return _alpha(
                body, b.body, {**env_a, x: depth}, {**env_b, b.var: depth}, depth + 1
            )
    raise TypeError(f"not a formula: {a!r}")


def alpha_member(f: Formula, fs: Iterable[Formula]) -> bool:
    return any(alpha_eq(f, g) for g in fs)


def children(f: Formula) -> tuple[Formula, ...]:
    match f:
        case Not(b) | Forall(_, _, b) | Exists(_, _, b):
            return (b,)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return (l, r)
    return ()


def symbols_of_formula(f: Formula) -> tuple[set[str], set[str], set[str]]:
    """(sorts, function symbols, predicate symbols) mentioned in ``f``."""
    sorts: set[str] = set()
    funcs: set[str] = set()
    preds: set[str] = set()

    def term(t: Term) -> None:
        match t:
            case Var(_, s):
                sorts.add(s)
            case App(fn, args):
                funcs.add(fn)
                for a in args:
                    term(a)

    def walk(g: Formula) -> None:
        match g:
            case Pred(name, args):
                preds.add(name)
                for a in args:
                    term(a)
            case Eq(l, r):
                term(l)
                term(r)
            case Forall(_, s, b) | Exists(_, s, b):
                sorts.add(s)
                walk(b)
            case _:
                for c in children(g):
                    walk(c)

    walk(f)
    return sorts, funcs, preds
