"""Flexiformal proof documents.

A document has a home theory, a theorem, an argument made of informal and
formal steps, and a list of attached cross checks.  Formal steps are kernel
derivations; they may cite earlier steps as pseudo-axioms named
``step:<label>``.  Citing a claim that nothing formal establishes opens a gap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .crosscheck import CheckReport, CrossCheck, run_all
from .graph import TheoryGraph
from .kernel import (
    Derivation,
    Formula,
    KernelError,
    Step,
    alpha_eq,
    check_derivation,
    format_formula,
    steps_of,
)
from .theory import Derived, Theory, TheoryError, add_theorem, check_statement

STEP_PREFIX = "step:"


class ProofDocError(Exception):
    code = "E-PROOFDOC"


class IllFormedTheorem(ProofDocError):
    code = "E-ILL-FORMED"


class IllFormedStep(ProofDocError):
    code = "E-ILL-FORMED"


class UnknownCheck(ProofDocError):
    code = "E-UNKNOWN-REF"


class NotEstablished(ProofDocError):
    code = "E-NOT-ESTABLISHED"


class AssumedContent(ProofDocError):
    code = "E-ASSUMED-CONTENT"


@dataclass(frozen=True)
class Informal:
    text: str
    claimed: Formula | None = None
    label: str | None = None


@dataclass(frozen=True)
class Formal:
    label: str
    derivation: str


ArgStep = Union[Informal, Formal]


@dataclass(frozen=True)
class ProofDoc:
    id: str
    home: str
    thm: Formula
    arg: tuple[ArgStep, ...] = ()
    cc: tuple[str, ...] = ()
    thm_name: str | None = None


@dataclass(frozen=True)
class Gap:
    index: int | None  # None: the theorem itself
    formula: Formula | None = None
    text: str = ""

    def describe(self) -> str:
        where = "theorem" if self.index is None else f"step {self.index}"
        what = format_formula(self.formula) if self.formula is not None else self.text
        return f"{where}: {what}"


ESTABLISHED, FLEXIFORMAL = "established", "flexiformal"


@dataclass(frozen=True)
class DocReport:
    doc: str
    thm_status: str
    coverage: Fraction
    gaps: tuple[Gap, ...] = ()
    cc_report: CheckReport = field(default_factory=CheckReport)
    flags: tuple[str, ...] = ()
    errors: tuple[str, ...] = ()
    closing: str | None = None

    @property
    def established(self) -> bool:
        return self.thm_status == ESTABLISHED


def formal_coverage(d: ProofDoc) -> Fraction:
    if not d.arg:
        return Fraction(0)
    return Fraction(sum(isinstance(s, Formal) for s in d.arg), len(d.arg))


@dataclass
class _Fact:
    formula: Formula
    gaps: tuple[Gap, ...]
    derivation: Derivation | None = None


def _citations(d: Derivation) -> list[Step]:
    return [
        s
        for s in steps_of(d)
        if s.rule == "axiom" and s.params and str(s.params[0]).startswith(STEP_PREFIX)
    ]


def _dedup(gaps) -> tuple[Gap, ...]:
    out: list[Gap] = []
    for gp in gaps:
        if not any(
            gp.index == o.index
            and (gp.formula is None) == (o.formula is None)
            and (gp.formula is None or alpha_eq(gp.formula, o.formula))
            for o in out
        ):
            out.append(gp)
    return tuple(sorted(out, key=lambda gp: (gp.index is None, gp.index or 0)))


def _analyse(d: ProofDoc, g: TheoryGraph):
    """Walk the argument; return (facts by label, formal results, errors, claims)."""
    home = g.theory(d.home)
    try:
        check_statement(home, d.thm)
    except TheoryError as e:
        raise IllFormedTheorem(f"{d.id}: theorem is not a closed formula of {d.home}: {e}") from e
    labels: set[str] = set()
    facts: dict[str, _Fact] = {}
    claims: dict[str, tuple[int, Formula]] = {}
    formal: list[tuple[int, Formal, _Fact | None]] = []
    errors: list[str] = []
    for i, st in enumerate(d.arg):
        label = st.label
        if label is not None:
            if label in labels:
                raise IllFormedStep(f"{d.id}: step label {label!r} used twice")
            labels.add(label)
        if isinstance(st, Informal):
            if st.claimed is not None:
                try:
                    check_statement(home, st.claimed)
                except TheoryError as e:
                    raise IllFormedStep(f"{d.id}: step {i} claim: {e}") from e
                if label is not None:
                    claims[label] = (i, st.claimed)
            continue
        nd = g.derivation(st.derivation)
        if nd.theory != d.home:
            raise IllFormedStep(f"{d.id}: derivation {st.derivation} belongs to {nd.theory}")
        fact = _check_formal(i, nd.derivation, home, facts, claims, errors)
        formal.append((i, st, fact))
        if fact is not None:
            facts[st.label] = fact
            # a formal step concluding an informal claim covers it
            for cl, (_, cf) in list(claims.items()):
                if cl not in facts and not fact.gaps and alpha_eq(cf, fact.formula):
                    facts[cl] = _Fact(cf, (), fact.derivation)
    return home, facts, claims, formal, errors


def _check_formal(i, der, home: Theory, facts, claims, errors) -> _Fact | None:
    pseudo: dict[str, Formula] = {}
    gaps: list[Gap] = []
    for leaf in _citations(der):
        name = leaf.params[0]
        label = name[len(STEP_PREFIX):]
        if label in facts:
            pseudo[name] = facts[label].formula
            gaps.extend(facts[label].gaps)
        elif label in claims:
            idx, cf = claims[label]
            pseudo[name] = cf
            gaps.append(Gap(idx, cf))
        else:
            # the cited step is missing: its expected conclusion is a gap here
            pseudo[name] = leaf.conclusion
            gaps.append(Gap(i, leaf.conclusion))
    try:
        seq = check_derivation(home.signature, {**home.axioms, **pseudo}, der)
    except KernelError as e:
        errors.append(f"step {i}: {e}")
        return None
    if seq.hypotheses:
        errors.append(f"step {i}: derivation leaves hypotheses open")
        return None
    return _Fact(seq.conclusion, _dedup(gaps), der)


def check_doc(
    d: ProofDoc, g: TheoryGraph, checks: Mapping[str, CrossCheck] | None = None
) -> DocReport:
    """Check a document against its home theory; read-only."""
    checks = checks or {}
    home, facts, claims, formal, errors = _analyse(d, g)
    missing = [c for c in d.cc if c not in checks]
    if missing:
        raise UnknownCheck(f"{d.id}: unknown cross check(s) {', '.join(missing)}")
    cc_report = run_all(g, [checks[c] for c in d.cc])
    flags = tuple(f"{o.id} relies on assumed obligation {a}" for o in cc_report.outcomes for a in o.assumed)

    closing = formal[-1] if formal else None
    if closing is not None and closing[2] is not None:
        i, st, fact = closing
        if alpha_eq(fact.formula, d.thm) and not fact.gaps:
            return DocReport(
                d.id, ESTABLISHED, formal_coverage(d), (), cc_report, flags, tuple(errors), st.label
            )
    gaps: list[Gap] = []
    for i, st, fact in formal:
        if fact is None:
            gaps.append(Gap(i, text=f"formal step {st.label} does not check"))
        else:
            gaps.extend(fact.gaps)
    for label, (i, cf) in claims.items():
        if label not in facts:
            gaps.append(Gap(i, cf))
    for i, st in enumerate(d.arg):
        if isinstance(st, Informal) and st.label is None and st.claimed is not None:
            if not any(alpha_eq(st.claimed, f.formula) and not f.gaps for f in facts.values()):
                gaps.append(Gap(i, st.claimed))
    gaps.append(Gap(None, d.thm))
    return DocReport(
        d.id, FLEXIFORMAL, formal_coverage(d), _dedup(gaps), cc_report, flags, tuple(errors)
    )


def _splice(der: Derivation, facts: Mapping[str, _Fact]) -> Derivation:
    """Replace ``step:`` citations by the derivations that establish them."""
    memo: dict[int, Step] = {}

    def go(s: Step) -> Step:
        if id(s) in memo:
            return memo[id(s)]
        if s.rule == "axiom" and s.params and str(s.params[0]).startswith(STEP_PREFIX):
            fact = facts[s.params[0][len(STEP_PREFIX):]]
            out = go(fact.derivation)
        else:
            out = Step(s.id, s.rule, tuple(go(p) for p in s.premises), s.params, s.conclusion, s.hypotheses)
        memo[id(s)] = out
        return out

    return go(der)


def promote(
    d: ProofDoc, g: TheoryGraph, checks: Mapping[str, CrossCheck] | None = None
) -> tuple[TheoryGraph, Theory]:
    """Record an Established document's theorem in its home theory.

    Idempotent by content: an alpha-equal statement already present leaves the
    graph unchanged.
    """
    report = check_doc(d, g, checks)
    if not report.established:
        raise NotEstablished(f"{d.id} is {report.thm_status}")
    if report.flags:
        raise AssumedContent(f"{d.id}: " + "; ".join(report.flags))
    home = g.theory(d.home)
    if home.find_content(d.thm) is not None:
        return g, home
    _, facts, _, formal, _ = _analyse(d, g)
    label = report.closing
    closing = _splice(facts[label].derivation, facts)
    ref = next(st.derivation for _, st, _ in formal if st.label == label)
    home = add_theorem(home, d.thm_name or d.id, d.thm, Derived(ref, closing))
    return g.update_theory(home), home


__all__ = [
    "ProofDoc",
    "Informal",
    "Formal",
    "Gap",
    "DocReport",
    "check_doc",
    "formal_coverage",
    "promote",
    "NotEstablished",
    "AssumedContent",
    "IllFormedTheorem",
]
