"""Syntax trees for ``.tg`` sources.

Names are unresolved here: whether ``x`` is a variable, a constant or a nullary
predicate is decided during elaboration.  Spans never take part in equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .diagnostics import NO_SPAN, SourceSpan


def _span():
    return field(default=NO_SPAN, compare=False, repr=False)


# --- expressions


@dataclass(frozen=True)
class RName:
    """``name`` or ``name(args)``; ``args is None`` for a bare identifier."""

    name: str
    args: tuple["RName", ...] | None = None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class RAtom:
    term: RName
    span: SourceSpan = _span()


@dataclass(frozen=True)
class REq:
    left: RName
    right: RName
    span: SourceSpan = _span()


@dataclass(frozen=True)
class RConst:
    value: bool
    span: SourceSpan = _span()


@dataclass(frozen=True)
class RNot:
    body: "RFormula"
    span: SourceSpan = _span()


@dataclass(frozen=True)
class RBin:
    op: str  # "/\\", "\\/", "->", "<->"
    left: "RFormula"
    right: "RFormula"
    span: SourceSpan = _span()


@dataclass(frozen=True)
class RQuant:
    kind: str  # "forall" | "exists"
    binders: tuple[tuple[str, str], ...]
    body: "RFormula"
    span: SourceSpan = _span()


RFormula = Union[RAtom, REq, RConst, RNot, RBin, RQuant]


@dataclass(frozen=True)
class Ident:
    name: str
    span: SourceSpan = _span()


# --- theories


@dataclass(frozen=True)
class SortItem:
    name: Ident
    span: SourceSpan = _span()


@dataclass(frozen=True)
class FuncItem:
    name: Ident
    args: tuple[Ident, ...]
    result: Ident
    span: SourceSpan = _span()


@dataclass(frozen=True)
class PredItem:
    name: Ident
    args: tuple[Ident, ...]
    span: SourceSpan = _span()


@dataclass(frozen=True)
class AxiomItem:
    name: Ident
    formula: RFormula
    span: SourceSpan = _span()


TheoryItem = Union[SortItem, FuncItem, PredItem, AxiomItem]


@dataclass(frozen=True)
class TheoryDecl:
    name: Ident
    extends: tuple[Ident, ...]
    items: tuple[TheoryItem, ...]
    span: SourceSpan = _span()


# --- morphisms


@dataclass(frozen=True)
class SortMap:
    source: Ident
    target: Ident
    span: SourceSpan = _span()


@dataclass(frozen=True)
class SymbolMap:
    kind: str  # "func" | "pred"
    name: Ident
    params: tuple[Ident, ...]
    body: Union[RName, RFormula]
    span: SourceSpan = _span()


@dataclass(frozen=True)
class IdentityItem:
    span: SourceSpan = _span()


@dataclass(frozen=True)
class ObligationItem:
    axiom: Ident
    method: str  # "axiom" | "derivation" | "assumption"
    arg: str
    span: SourceSpan = _span()


MorphismItem = Union[SortMap, SymbolMap, IdentityItem, ObligationItem]


@dataclass(frozen=True)
class MorphismDecl:
    name: Ident
    source: Ident
    target: Ident
    items: tuple[MorphismItem, ...]
    span: SourceSpan = _span()


# --- theorems and derivations


@dataclass(frozen=True)
class TransportEvidence:
    theory: Ident
    theorem: Ident
    via: tuple[Ident, ...]
    span: SourceSpan = _span()


@dataclass(frozen=True)
class AssumptionEvidence:
    reason: str
    span: SourceSpan = _span()


@dataclass(frozen=True)
class TheoremDecl:
    name: Ident
    theory: Ident
    formula: RFormula
    evidence: Union[TransportEvidence, AssumptionEvidence, None] = None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class MotiveParam:
    var: str
    sort: str
    body: RFormula
    span: SourceSpan = _span()


StepParam = Union[RName, MotiveParam]


@dataclass(frozen=True)
class StepDecl:
    id: Ident
    rule: Ident
    premises: tuple[Ident, ...]
    axiom: Ident | None
    params: tuple[StepParam, ...]
    conclusion: RFormula
    span: SourceSpan = _span()


@dataclass(frozen=True)
class DerivationDecl:
    name: Ident
    theory: Ident
    proves: Ident | None
    vars: tuple[tuple[Ident, Ident], ...]
    steps: tuple[StepDecl, ...]
    span: SourceSpan = _span()


# --- proof documents and cross checks


@dataclass(frozen=True)
class InformalItem:
    label: Ident | None
    text: str
    claims: RFormula | None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class FormalItem:
    derivation: Ident
    label: Ident | None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class CheckListItem:
    checks: tuple[Ident, ...]
    span: SourceSpan = _span()


DocItem = Union[InformalItem, FormalItem, CheckListItem]


@dataclass(frozen=True)
class ProofDocDecl:
    name: Ident
    theory: Ident
    thm: Ident
    formula: RFormula | None
    items: tuple[DocItem, ...]
    span: SourceSpan = _span()


@dataclass(frozen=True)
class StructuralDecl:
    name: Ident
    proof1: tuple[Ident, Ident]  # (derivation, theory)
    proof2: tuple[Ident, Ident]
    correspondence: tuple[tuple[Ident, Ident], ...] | None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class SemanticDecl:
    name: Ident
    a1: tuple[RFormula, Ident]
    a2: tuple[RFormula, Ident]
    via: tuple[Ident, ...]
    witness: Ident | None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class IncludeDecl:
    path: str
    span: SourceSpan = _span()


Decl = Union[
    TheoryDecl,
    MorphismDecl,
    TheoremDecl,
    DerivationDecl,
    ProofDocDecl,
    StructuralDecl,
    SemanticDecl,
    IncludeDecl,
]


@dataclass(frozen=True)
class Ast:
    decls: tuple[Decl, ...] = ()

    def __add__(self, other: "Ast") -> "Ast":
        return Ast(self.decls + other.decls)
