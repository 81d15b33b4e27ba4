"""Theory morphisms.

A morphism is generated by an :class:`Assignment` that sends every sort to a
sort and every function/predicate symbol to a parameterised target expression.
Translation is its homomorphic extension.  Meaning preservation is certified
per source axiom by an :class:`Obligation`.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping, Union

from .kernel import (
    And,
    App,
    Bot,
    Derivation,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    KernelError,
    Not,
    Or,
    Pred,
    Signature,
    Term,
    Top,
    Var,
    WellFormednessError,
    alpha_eq,
    check_derivation,
    substitute,
    substitute_term,
    wf_formula,
    wf_term,
)
from .theory import DerivationMismatch, Theory, extends


class MorphismError(Exception):
    code = "E-MORPHISM"


class UnmappedSymbol(MorphismError):
    code = "E-UNMAPPED-SYMBOL"


class IllTypedAssignment(MorphismError):
    code = "E-ILL-TYPED-ASSIGNMENT"


class TheoryMismatch(MorphismError):
    code = "E-THEORY-MISMATCH"


class NoSuchAxiom(MorphismError):
    code = "E-OBLIGATION-FAIL"


class AxiomNotAlphaEqual(MorphismError):
    code = "E-OBLIGATION-FAIL"


@dataclass(frozen=True)
class SymbolImage:
    """Image ``body`` of a symbol, abstracted over ``params`` (one per argument)."""

    params: tuple[Var, ...]
    body: Union[Term, Formula]

    def apply(self, args) -> Union[Term, Formula]:
        s = {p.name: a for p, a in zip(self.params, args)}
        if isinstance(self.body, (Var, App)):
            return substitute_term(self.body, s)
        return substitute(self.body, s)


def _params(sorts) -> tuple[Var, ...]:
    return tuple(Var(f"p{i}", s) for i, s in enumerate(sorts, 1))


@dataclass(frozen=True, eq=False)
class Assignment:
    sort_map: Mapping[str, str] = field(default_factory=dict)
    func_map: Mapping[str, SymbolImage] = field(default_factory=dict)
    pred_map: Mapping[str, SymbolImage] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("sort_map", "func_map", "pred_map"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))

    def sort(self, s: str) -> str:
        try:
            return self.sort_map[s]
        except KeyError:
            raise UnmappedSymbol(f"sort {s!r} is not mapped") from None


def identity_assignment(sig: Signature) -> Assignment:
    funcs = {}
    for f, (args, _) in sig.functions.items():
        ps = _params(args)
        funcs[f] = SymbolImage(ps, App(f, ps))
    preds = {}
    for p, args in sig.predicates.items():
        ps = _params(args)
        preds[p] = SymbolImage(ps, Pred(p, ps))
    return Assignment({s: s for s in sig.sorts}, funcs, preds)


# ---------------------------------------------------------------------------
# translation


def translate_term(a: Assignment, t: Term) -> Term:
    match t:
        case Var(x, s):
            return Var(x, a.sort(s))
        case App(fn, args):
            if fn not in a.func_map:
                raise UnmappedSymbol(f"function {fn!r} is not mapped")
            return a.func_map[fn].apply([translate_term(a, x) for x in args])
    raise TypeError(f"not a term: {t!r}")


def translate_formula(a: Assignment, f: Formula) -> Formula:
    match f:
        case Pred(name, args):
            if name not in a.pred_map:
                raise UnmappedSymbol(f"predicate {name!r} is not mapped")
            return a.pred_map[name].apply([translate_term(a, x) for x in args])
        case Eq(l, r):
            return Eq(translate_term(a, l), translate_term(a, r))
        case Top() | Bot():
            return f
        case Not(b):
            return Not(translate_formula(a, b))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(f)(translate_formula(a, l), translate_formula(a, r))
        case Forall(x, s, b) | Exists(x, s, b):
            return type(f)(x, a.sort(s), translate_formula(a, b))
    raise TypeError(f"not a formula: {f!r}")


def check_assignment(a: Assignment, src: Signature, tgt: Signature) -> None:
    """Raise unless ``a`` is total on ``src`` and sort-correct into ``tgt``."""
    for s in src.sorts:
        if s not in a.sort_map:
            raise UnmappedSymbol(f"sort {s!r} is not mapped")
        if a.sort_map[s] not in tgt.sorts:
            raise IllTypedAssignment(f"sort {s!r} is sent to unknown sort {a.sort_map[s]!r}")
    for table, kind in ((src.functions, "function"), (src.predicates, "predicate")):
        images = a.func_map if kind == "function" else a.pred_map
        for name in table:
            if name not in images:
                raise UnmappedSymbol(f"{kind} {name!r} is not mapped")
    extra = (
        set(a.sort_map) - set(src.sorts)
        or set(a.func_map) - set(src.functions)
        or set(a.pred_map) - set(src.predicates)
    )
    if extra:
        raise IllTypedAssignment(f"{sorted(extra)[0]!r} is not a symbol of the source")

    def check_params(name, img, arg_sorts):
        if len(img.params) != len(arg_sorts):
            raise IllTypedAssignment(
                f"image of {name} takes {len(img.params)} parameter(s), arity is {len(arg_sorts)}"
            )
        if len({p.name for p in img.params}) != len(img.params):
            raise IllTypedAssignment(f"image of {name} repeats a parameter")
        for p, s in zip(img.params, arg_sorts):
            if p.sort != a.sort_map[s]:
                raise IllTypedAssignment(
                    f"parameter {p.name} of {name} has sort {p.sort}, expected {a.sort_map[s]}"
                )
        return {p.name: p.sort for p in img.params}

    for name, (args, res) in src.functions.items():
        img = a.func_map[name]
        ctx = check_params(name, img, args)
        if not isinstance(img.body, (Var, App)):
            raise IllTypedAssignment(f"image of function {name} must be a term")
        try:
            got = wf_term(tgt, ctx, img.body)
        except WellFormednessError as e:
            raise IllTypedAssignment(f"image of {name}: {e}") from e
        if got != a.sort_map[res]:
            raise IllTypedAssignment(
                f"image of {name} has sort {got}, expected {a.sort_map[res]}"
            )
    for name, args in src.predicates.items():
        img = a.pred_map[name]
        ctx = check_params(name, img, args)
        if isinstance(img.body, (Var, App)):
            raise IllTypedAssignment(f"image of predicate {name} must be a formula")
        try:
            wf_formula(tgt, ctx, img.body)
        except WellFormednessError as e:
            raise IllTypedAssignment(f"image of {name}: {e}") from e


def is_identity_assignment(a: Assignment) -> bool:
    if any(k != v for k, v in a.sort_map.items()):
        return False
    for name, img in a.func_map.items():
        if img.body != App(name, img.params):
            return False
    for name, img in a.pred_map.items():
        if img.body != Pred(name, img.params):
            return False
    return True


# ---------------------------------------------------------------------------
# obligations


@dataclass(frozen=True)
class Proved:
    ref: str
    derivation: Derivation = field(compare=False, repr=False)


@dataclass(frozen=True)
class ByAxiom:
    axiom: str


@dataclass(frozen=True)
class Assumed:
    reason: str


@dataclass(frozen=True)
class Pending:
    pass


@dataclass(frozen=True)
class ByComposition:
    components: tuple[str, ...]


Status = Union[Proved, ByAxiom, Assumed, Pending, ByComposition]
PENDING = Pending()


def is_discharged(s: Status) -> bool:
    return isinstance(s, (Proved, ByAxiom, ByComposition))


def status_name(s: Status) -> str:
    return {
        Proved: "proved",
        ByAxiom: "by-axiom",
        Assumed: "assumed",
        Pending: "pending",
        ByComposition: "by-composition",
    }[type(s)]


@dataclass(frozen=True)
class Obligation:
    axiom_name: str
    translated: Formula
    status: Status = PENDING


@dataclass(frozen=True, eq=False)
class Morphism:
    id: str
    source: str
    target: str
    assignment: Assignment
    obligations: tuple[Obligation, ...] = ()

    def obligation(self, axiom_name: str) -> Obligation:
        for o in self.obligations:
            if o.axiom_name == axiom_name:
                return o
        raise KeyError(axiom_name)


def generate_obligations(m: Morphism, src: Theory, tgt: Theory) -> tuple[Obligation, ...]:
    """One obligation per source axiom, pre-discharged when the target has it as an axiom."""
    check_assignment(m.assignment, src.signature, tgt.signature)
    out = []
    for name, ax in src.axioms.items():
        phi = translate_formula(m.assignment, ax)
        status: Status = PENDING
        for tname, tax in tgt.axioms.items():
            if alpha_eq(phi, tax):
                status = ByAxiom(tname)
                break
        out.append(Obligation(name, phi, status))
    return tuple(out)


def make_morphism(id: str, src: Theory, tgt: Theory, assignment: Assignment) -> Morphism:
    if src.logic != tgt.logic:
        raise TheoryMismatch(f"logics differ: {src.logic} vs {tgt.logic}")
    m = Morphism(id, src.id, tgt.id, assignment)
    return replace(m, obligations=generate_obligations(m, src, tgt))


def identity_morphism(t: Theory, id: str | None = None) -> Morphism:
    return make_morphism(id or f"id_{t.id}", t, t, identity_assignment(t.signature))


def discharge(o: Obligation, method: Status, tgt: Theory) -> Obligation:
    match method:
        case ByAxiom(name):
            if name not in tgt.axioms:
                raise NoSuchAxiom(f"{tgt.id} has no axiom {name!r}")
            if not alpha_eq(tgt.axioms[name], o.translated):
                raise AxiomNotAlphaEqual(
                    f"axiom {name} of {tgt.id} is not the translation of {o.axiom_name}"
                )
        case Proved(ref, d):
            try:
                seq = check_derivation(tgt.signature, tgt.axioms, d)
            except KernelError as e:
                raise DerivationMismatch(f"derivation {ref} does not check: {e}") from e
            if seq.hypotheses or not alpha_eq(seq.conclusion, o.translated):
                raise DerivationMismatch(
                    f"derivation {ref} does not prove the translation of {o.axiom_name}"
                )
        case Assumed() | Pending():
            pass
        case ByComposition():
            raise MorphismError("composition status is assigned by compose only")
    return replace(o, status=method)


def discharge_in(m: Morphism, axiom_name: str, method: Status, tgt: Theory) -> Morphism:
    obligations = tuple(
        discharge(o, method, tgt) if o.axiom_name == axiom_name else o for o in m.obligations
    )
    if all(o.axiom_name != axiom_name for o in m.obligations):
        raise NoSuchAxiom(f"{m.source} has no axiom {axiom_name!r}")
    return replace(m, obligations=obligations)


@dataclass(frozen=True)
class VerificationStatus:
    open: tuple[str, ...] = ()

    @property
    def verified(self) -> bool:
        return not self.open

    def __str__(self) -> str:
        if self.verified:
            return "Verified"
        return f"PartiallyVerified([{', '.join(self.open)}])"


def verify(m: Morphism) -> VerificationStatus:
    return VerificationStatus(
        tuple(o.axiom_name for o in m.obligations if not is_discharged(o.status))
    )


def compose(m1: Morphism, m2: Morphism) -> Morphism:
    """``m1`` followed by ``m2`` (source of ``m1`` to target of ``m2``)."""
    if m1.target != m2.source:
        raise TheoryMismatch(
            f"cannot compose {m1.id}: {m1.source}->{m1.target} with {m2.id}: {m2.source}->{m2.target}"
        )
    a1, a2 = m1.assignment, m2.assignment

    def through(img: SymbolImage) -> SymbolImage:
        params = tuple(Var(p.name, a2.sort(p.sort)) for p in img.params)
        if isinstance(img.body, (Var, App)):
            return SymbolImage(params, translate_term(a2, img.body))
        return SymbolImage(params, translate_formula(a2, img.body))

    assignment = Assignment(
        {s: a2.sort(t) for s, t in a1.sort_map.items()},
        {f: through(img) for f, img in a1.func_map.items()},
        {p: through(img) for p, img in a1.pred_map.items()},
    )
    both = verify(m1).verified and verify(m2).verified
    ids = _components(m1) + _components(m2)
    obligations = tuple(
        Obligation(
            o.axiom_name,
            translate_formula(a2, o.translated),
            ByComposition(ids) if both else PENDING,
        )
        for o in m1.obligations
    )
    return Morphism(";".join(ids), m1.source, m2.target, assignment, obligations)


def _components(m: Morphism) -> tuple[str, ...]:
    return tuple(m.id.split(";"))


def is_inclusion(m: Morphism, src: Theory, tgt: Theory) -> bool:
    return extends(src, tgt) and is_identity_assignment(m.assignment)


def assignments_alpha_equal(a: Assignment, b: Assignment) -> bool:
    """Pointwise equality of two assignments, images compared up to alpha."""
    if dict(a.sort_map) != dict(b.sort_map):
        return False
    for mine, theirs in ((a.func_map, b.func_map), (a.pred_map, b.pred_map)):
        if set(mine) != set(theirs):
            return False
        for name, img in mine.items():
            other = theirs[name]
            if len(img.params) != len(other.params):
                return False
            # rename the other image's parameters onto ours before comparing
            renamed = other.apply(img.params)
            if isinstance(img.body, (Var, App)):
                if renamed != img.body:
                    return False
            elif not alpha_eq(renamed, img.body):
                return False
    return True
