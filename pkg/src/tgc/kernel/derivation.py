"""Natural-deduction derivations and their checker.

A derivation is a tree of :class:`Step` values.  The checker recomputes every
step's sequent from its premises and compares it with the claimed conclusion;
it performs no search.  Hypotheses are tracked as a duplicate-free list (up to
alpha-equivalence) of the open assumptions each step depends on.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import (
    BadRuleApplication,
    EigenvariableViolation,
    IllFormedFormula,
    UnknownAxiom,
    WellFormednessError,
)
from .syntax import (
    BOT,
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
    Signature,
    Term,
    Top,
    Var,
    alpha_eq,
    alpha_member,
    free_var_names,
    substitute,
)
from .wellformed import check_closed_or_annotated, check_term_annotated


@dataclass(frozen=True)
class Motive:
    """``var. body``: the context of an equality rewrite in ``eq-subst``."""

    var: str
    sort: str
    body: Formula

    def at(self, t: Term) -> Formula:
        return substitute(self.body, {self.var: t})


Param = Union[str, Term, Motive]


@dataclass(frozen=True)
class Sequent:
    hypotheses: tuple[Formula, ...]
    conclusion: Formula

    def same_as(self, other: "Sequent") -> bool:
        return alpha_eq(self.conclusion, other.conclusion) and _same_set(
            self.hypotheses, other.hypotheses
        )


@dataclass(frozen=True, eq=False)
class Step:
    id: str
    rule: str
    premises: tuple["Step", ...]
    params: tuple[Param, ...]
    conclusion: Formula
    hypotheses: tuple[Formula, ...] | None = None


Derivation = Step

RULE_ARITY = {
    "hypothesis": 0,
    "axiom": 0,
    "truth-intro": 0,
    "falsity-elim": 1,
    "and-intro": 2,
    "and-elim-left": 1,
    "and-elim-right": 1,
    "or-intro-left": 1,
    "or-intro-right": 1,
    "or-elim": 3,
    "impl-intro": 1,
    "impl-elim": 2,
    "iff-intro": 2,
    "iff-elim-left": 1,
    "iff-elim-right": 1,
    "neg-intro": 1,
    "classical-contradiction": 1,
    "forall-intro": 1,
    "forall-elim": 1,
    "exists-intro": 1,
    "exists-elim": 2,
    "eq-refl": 0,
    "eq-subst": 2,
}
RULES = tuple(RULE_ARITY)

# number of parameters each rule takes; eq-refl's term is optional
RULE_PARAMS = {
    "axiom": 1,
    "forall-intro": 1,
    "forall-elim": 1,
    "exists-intro": 1,
    "exists-elim": 1,
    "eq-subst": 1,
}


def _union(*groups) -> tuple[Formula, ...]:
    out: list[Formula] = []
    for g in groups:
        for f in g:
            if not alpha_member(f, out):
                out.append(f)
    return tuple(out)


def _remove(hyps, f: Formula) -> tuple[Formula, ...]:
    return tuple(h for h in hyps if not alpha_eq(h, f))


def _same_set(a, b) -> bool:
    return all(alpha_member(x, b) for x in a) and all(alpha_member(y, a) for y in b)


def _fv_all(fs) -> set[str]:
    return set().union(*(free_var_names(f) for f in fs)) if fs else set()


class _Checker:
    def __init__(self, sig: Signature, axioms: Mapping[str, Formula]):
        self.sig = sig
        self.axioms = axioms
        self.done: dict[int, Sequent] = {}

    def run(self, step: Step) -> Sequent:
        key = id(step)
        if key not in self.done:
            self.done[key] = self.check(step)
        return self.done[key]

    def bad(self, step: Step, reason: str):
        return BadRuleApplication(step.id, reason)

    def wf(self, step: Step, f: Formula) -> None:
        try:
            check_closed_or_annotated(self.sig, f)
        except WellFormednessError as e:
            raise IllFormedFormula(step.id, e) from e

    def wf_term(self, step: Step, t: Term) -> str:
        try:
            return check_term_annotated(self.sig, t)
        except WellFormednessError as e:
            raise IllFormedFormula(step.id, e) from e

    def expect(self, step: Step, want: Formula, what: str) -> None:
        if not alpha_eq(step.conclusion, want):
            raise self.bad(step, f"conclusion does not match {what}")

    def param(self, step: Step, kind):
        if len(step.params) != 1 or not isinstance(step.params[0], kind):
            raise self.bad(step, f"{step.rule} needs exactly one {kind_name(kind)} parameter")
        return step.params[0]

    def check(self, step: Step) -> Sequent:
        if step.rule not in RULE_ARITY:
            raise self.bad(step, f"unknown rule {step.rule!r}")
        if len(step.premises) != RULE_ARITY[step.rule]:
            raise self.bad(
                step,
                f"{step.rule} takes {RULE_ARITY[step.rule]} premise(s), got {len(step.premises)}",
            )
        if step.rule not in RULE_PARAMS and step.rule != "eq-refl" and step.params:
            raise self.bad(step, f"{step.rule} takes no parameters")
        self.wf(step, step.conclusion)
        prem = [self.run(p) for p in step.premises]
        hyps = getattr(self, "rule_" + step.rule.replace("-", "_"))(step, prem)
        if step.hypotheses is not None:
            for h in step.hypotheses:
                self.wf(step, h)
            if not _same_set(step.hypotheses, hyps):
                raise self.bad(step, "claimed hypotheses differ from the open assumptions")
        return Sequent(hyps, step.conclusion)

    # --- leaves

    def rule_hypothesis(self, step, prem):
        return (step.conclusion,)

    def rule_axiom(self, step, prem):
        name = self.param(step, str)
        if name not in self.axioms:
            raise UnknownAxiom(step.id, name)
        self.expect(step, self.axioms[name], f"axiom {name}")
        return ()

    def rule_truth_intro(self, step, prem):
        if not isinstance(step.conclusion, Top):
            raise self.bad(step, "truth-intro concludes true")
        return ()

    def rule_eq_refl(self, step, prem):
        c = step.conclusion
        if not isinstance(c, Eq) or c.left != c.right:
            raise self.bad(step, "eq-refl concludes t = t")
        if step.params:
            t = self.param(step, (Var, App))
            self.wf_term(step, t)
            if t != c.left:
                raise self.bad(step, "eq-refl parameter differs from the equated term")
        return ()

    # --- propositional

    def rule_falsity_elim(self, step, prem):
        if not isinstance(prem[0].conclusion, Bot):
            raise self.bad(step, "falsity-elim premise must conclude false")
        return prem[0].hypotheses

    def rule_and_intro(self, step, prem):
        self.expect(step, And(prem[0].conclusion, prem[1].conclusion), "the conjunction of the premises")
        return _union(prem[0].hypotheses, prem[1].hypotheses)

    def _and_elim(self, step, prem, side):
        c = prem[0].conclusion
        if not isinstance(c, And):
            raise self.bad(step, f"{step.rule} premise must be a conjunction")
        self.expect(step, getattr(c, side), f"the {side} conjunct")
        return prem[0].hypotheses

    def rule_and_elim_left(self, step, prem):
        return self._and_elim(step, prem, "left")

    def rule_and_elim_right(self, step, prem):
        return self._and_elim(step, prem, "right")

    def _or_intro(self, step, prem, side):
        c = step.conclusion
        if not isinstance(c, Or):
            raise self.bad(step, f"{step.rule} concludes a disjunction")
        if not alpha_eq(getattr(c, side), prem[0].conclusion):
            raise self.bad(step, f"premise is not the {side} disjunct")
        return prem[0].hypotheses

    def rule_or_intro_left(self, step, prem):
        return self._or_intro(step, prem, "left")

    def rule_or_intro_right(self, step, prem):
        return self._or_intro(step, prem, "right")

    def rule_or_elim(self, step, prem):
        d, left, right = prem
        if not isinstance(d.conclusion, Or):
            raise self.bad(step, "or-elim first premise must be a disjunction")
        self.expect(step, left.conclusion, "the left case")
        self.expect(step, right.conclusion, "the right case")
        return _union(
            d.hypotheses,
            _remove(left.hypotheses, d.conclusion.left),
            _remove(right.hypotheses, d.conclusion.right),
        )

    def rule_impl_intro(self, step, prem):
        c = step.conclusion
        if not isinstance(c, Implies):
            raise self.bad(step, "impl-intro concludes an implication")
        if not alpha_eq(c.right, prem[0].conclusion):
            raise self.bad(step, "consequent differs from the premise's conclusion")
        return _remove(prem[0].hypotheses, c.left)

    def rule_impl_elim(self, step, prem):
        major, minor = prem
        match major.conclusion:
            case Implies(a, b):
                pass
            case Not(a):
                b = BOT
            case _:
                raise self.bad(step, "impl-elim first premise must be an implication")
        if not alpha_eq(a, minor.conclusion):
            raise self.bad(step, "second premise does not prove the antecedent")
        self.expect(step, b, "the consequent")
        return _union(major.hypotheses, minor.hypotheses)

    def rule_iff_intro(self, step, prem):
        fwd, back = prem[0].conclusion, prem[1].conclusion
        c = step.conclusion
        if not isinstance(c, Iff):
            raise self.bad(step, "iff-intro concludes a biconditional")
        if not alpha_eq(fwd, Implies(c.left, c.right)):
            raise self.bad(step, "first premise must be the forward implication")
        if not alpha_eq(back, Implies(c.right, c.left)):
            raise self.bad(step, "second premise must be the backward implication")
        return _union(prem[0].hypotheses, prem[1].hypotheses)

    def _iff_elim(self, step, prem, forward):
        c = prem[0].conclusion
        if not isinstance(c, Iff):
            raise self.bad(step, f"{step.rule} premise must be a biconditional")
        want = Implies(c.left, c.right) if forward else Implies(c.right, c.left)
        self.expect(step, want, "the extracted implication")
        return prem[0].hypotheses

    def rule_iff_elim_left(self, step, prem):
        return self._iff_elim(step, prem, True)

    def rule_iff_elim_right(self, step, prem):
        return self._iff_elim(step, prem, False)

    def rule_neg_intro(self, step, prem):
        c = step.conclusion
        if not isinstance(c, Not):
            raise self.bad(step, "neg-intro concludes a negation")
        if not isinstance(prem[0].conclusion, Bot):
            raise self.bad(step, "neg-intro premise must conclude false")
        return _remove(prem[0].hypotheses, c.body)

    def rule_classical_contradiction(self, step, prem):
        if not isinstance(prem[0].conclusion, Bot):
            raise self.bad(step, "classical-contradiction premise must conclude false")
        return _remove(prem[0].hypotheses, Not(step.conclusion))

    # --- quantifiers

    def rule_forall_intro(self, step, prem):
        c = step.conclusion
        if not isinstance(c, Forall):
            raise self.bad(step, "forall-intro concludes a universal formula")
        y = self.param(step, Var)
        if y.sort != c.sort:
            raise self.bad(step, f"eigenvariable {y.name} has sort {y.sort}, binder has {c.sort}")
        hyps = prem[0].hypotheses
        if y.name in _fv_all(hyps):
            raise EigenvariableViolation(step.id, f"{y.name} is free in an open hypothesis")
        if y.name in free_var_names(c):
            raise EigenvariableViolation(step.id, f"{y.name} is free in the conclusion")
        if not alpha_eq(substitute(c.body, {c.var: y}), prem[0].conclusion):
            raise self.bad(step, "premise is not the body instantiated at the eigenvariable")
        return hyps

    def rule_forall_elim(self, step, prem):
        c = prem[0].conclusion
        if not isinstance(c, Forall):
            raise self.bad(step, "forall-elim premise must be a universal formula")
        t = self.param(step, (Var, App))
        if self.wf_term(step, t) != c.sort:
            raise self.bad(step, f"instance term is not of sort {c.sort}")
        self.expect(step, substitute(c.body, {c.var: t}), "the instantiated body")
        return prem[0].hypotheses

    def rule_exists_intro(self, step, prem):
        c = step.conclusion
        if not isinstance(c, Exists):
            raise self.bad(step, "exists-intro concludes an existential formula")
        t = self.param(step, (Var, App))
        if self.wf_term(step, t) != c.sort:
            raise self.bad(step, f"witness term is not of sort {c.sort}")
        if not alpha_eq(substitute(c.body, {c.var: t}), prem[0].conclusion):
            raise self.bad(step, "premise is not the body instantiated at the witness")
        return prem[0].hypotheses

    def rule_exists_elim(self, step, prem):
        ex, body = prem
        c = ex.conclusion
        if not isinstance(c, Exists):
            raise self.bad(step, "exists-elim first premise must be an existential formula")
        y = self.param(step, Var)
        if y.sort != c.sort:
            raise self.bad(step, f"eigenvariable {y.name} has sort {y.sort}, binder has {c.sort}")
        instance = substitute(c.body, {c.var: y})
        self.expect(step, body.conclusion, "the second premise's conclusion")
        rest = _remove(body.hypotheses, instance)
        if y.name in free_var_names(c):
            raise EigenvariableViolation(step.id, f"{y.name} is free in the existential premise")
        if y.name in free_var_names(step.conclusion):
            raise EigenvariableViolation(step.id, f"{y.name} is free in the conclusion")
        if y.name in _fv_all(rest):
            raise EigenvariableViolation(step.id, f"{y.name} is free in an open hypothesis")
        return _union(ex.hypotheses, rest)

    # --- equality

    def rule_eq_subst(self, step, prem):
        eq, src = prem
        if not isinstance(eq.conclusion, Eq):
            raise self.bad(step, "eq-subst first premise must be an equation")
        m = self.param(step, Motive)
        a, b = eq.conclusion.left, eq.conclusion.right
        if self.wf_term(step, a) != m.sort:
            raise self.bad(step, f"rewritten terms are not of sort {m.sort}")
        if not alpha_eq(m.at(a), src.conclusion):
            raise self.bad(step, "second premise is not the motive at the left-hand side")
        self.expect(step, m.at(b), "the motive at the right-hand side")
        return _union(eq.hypotheses, src.hypotheses)



def kind_name(kind) -> str:
    if kind is str:
        return "name"
    if kind is Var:
        return "variable"
    if kind is Motive:
        return "motive"
    return "term"


def check_derivation(sig: Signature, axioms: Mapping[str, Formula], d: Derivation) -> Sequent:
    """Check ``d`` and return its root sequent.

    Raises BadRuleApplication, EigenvariableViolation, UnknownAxiom or
    IllFormedFormula on the first faulty step (premises are checked first).
    """
    return _Checker(sig, axioms).run(d)


def steps_of(d: Derivation) -> list[Step]:
    """Distinct steps in premise-first order."""
    seen: dict[int, Step] = {}

    def walk(s: Step) -> None:
        if id(s) in seen:
            return
        for p in s.premises:
            walk(p)
        seen[id(s)] = s

    walk(d)
    return list(seen.values())


def axiom_leaves(d: Derivation) -> list[str]:
    return [s.params[0] for s in steps_of(d) if s.rule == "axiom" and s.params]
