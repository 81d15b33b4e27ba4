"""Axiomatic theories: a logic, a signature, named axioms, and theorems with provenance."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .kernel import (
    LOGIC_ID,
    Derivation,
    Formula,
    Signature,
    WellFormednessError,
    alpha_eq,
    check_derivation,
    free_vars,
    wf_formula,
)
from .kernel.errors import KernelError


class TheoryError(Exception):
    code = "E-THEORY"


class DuplicateTheoryId(TheoryError):
    code = "E-DUP-NAME"


class DuplicateName(TheoryError):
    code = "E-DUP-NAME"


class OpenFormula(TheoryError):
    code = "E-OPEN-FORMULA"


class IllFormed(TheoryError):
    code = "E-ILL-FORMED"


class DerivationMismatch(TheoryError):
    code = "E-DERIVATION-MISMATCH"


@dataclass(frozen=True)
class Derived:
    ref: str
    derivation: Derivation = field(compare=False, repr=False)


@dataclass(frozen=True)
class Transported:
    source_theory: str
    source_theorem: str
    path: tuple[str, ...]
    # set when the path was not fully verified and the caller allowed it
    partial: bool = False


@dataclass(frozen=True)
class Assumed:
    reason: str


Provenance = Union[Derived, Transported, Assumed]


def is_flagged(p: Provenance) -> bool:
    """Provenance that rests on trust rather than a checked witness."""
    return isinstance(p, Assumed) or (isinstance(p, Transported) and p.partial)


@dataclass(frozen=True)
class Theorem:
    name: str
    formula: Formula
    provenance: Provenance


def _frozen(d: Mapping) -> Mapping:
    return MappingProxyType(dict(d))


@dataclass(frozen=True, eq=False)
class Theory:
    id: str
    signature: Signature
    axioms: Mapping[str, Formula] = field(default_factory=dict)
    theorems: Mapping[str, Theorem] = field(default_factory=dict)
    logic: str = LOGIC_ID

    def __post_init__(self):
        object.__setattr__(self, "axioms", _frozen(self.axioms))
        object.__setattr__(self, "theorems", _frozen(self.theorems))

    def names(self) -> set[str]:
        return set(self.axioms) | set(self.theorems)

    def statement(self, name: str) -> Formula | None:
        """Formula of the axiom or theorem called ``name``."""
        if name in self.axioms:
            return self.axioms[name]
        if name in self.theorems:
            return self.theorems[name].formula
        return None

    def find_content(self, f: Formula) -> str | None:
        """Name of an axiom or theorem alpha-equal to ``f``, if any."""
        for name, g in self.axioms.items():
            if alpha_eq(f, g):
                return name
        for name, thm in self.theorems.items():
            if alpha_eq(f, thm.formula):
                return name
        return None

    def __repr__(self) -> str:
        return f"Theory({self.id!r}, {len(self.axioms)} axioms, {len(self.theorems)} theorems)"


def new_theory(id: str, signature: Signature, taken: Iterable[str] = ()) -> Theory:
    if id in set(taken):
        raise DuplicateTheoryId(f"theory {id!r} already exists")
    signature.validate()
    return Theory(id, signature)


def check_statement(t: Theory, f: Formula) -> None:
    """Raise unless ``f`` is a closed formula of ``t``'s signature."""
    opened = free_vars(f)
    if opened:
        names = ", ".join(sorted(n for n, _ in opened))
        raise OpenFormula(f"formula has free variable(s) {names}")
    try:
        wf_formula(t.signature, {}, f)
    except WellFormednessError as e:
        raise IllFormed(str(e)) from e


def add_axiom(t: Theory, name: str, f: Formula) -> Theory:
    if name in t.names():
        raise DuplicateName(f"{t.id} already declares {name!r}")
    check_statement(t, f)
    return replace(t, axioms={**t.axioms, name: f})


def check_derived(t: Theory, f: Formula, d: Derivation) -> None:
    """Raise DerivationMismatch unless ``d`` proves ``{} |- f`` from ``t``'s axioms."""
    try:
        seq = check_derivation(t.signature, t.axioms, d)
    except KernelError as e:
        raise DerivationMismatch(f"derivation does not check: {e}") from e
    if seq.hypotheses:
        raise DerivationMismatch("derivation leaves hypotheses open")
    if not alpha_eq(seq.conclusion, f):
        raise DerivationMismatch("derivation concludes a different formula")


def add_theorem(t: Theory, name: str, f: Formula, p: Provenance) -> Theory:
    if name in t.names():
        raise DuplicateName(f"{t.id} already declares {name!r}")
    check_statement(t, f)
    if isinstance(p, Derived):
        check_derived(t, f, p.derivation)
    return replace(t, theorems={**t.theorems, name: Theorem(name, f, p)})


def extends(sub: Theory, sup: Theory) -> bool:
    """True iff ``sup`` has all of ``sub``'s signature and (up to alpha) axioms."""
    if sub.logic != sup.logic:
        return False
    if not sup.signature.contains(sub.signature):
        return False
    return all(
        any(alpha_eq(a, b) for b in sup.axioms.values()) for a in sub.axioms.values()
    )


def recheck_theorem(t: Theory, name: str) -> bool:
    """Re-run the kernel on a Derived theorem's stored derivation."""
    thm = t.theorems[name]
    if not isinstance(thm.provenance, Derived):
        return True
    try:
        check_derived(t, thm.formula, thm.provenance.derivation)
    except DerivationMismatch:
        return False
    return True
