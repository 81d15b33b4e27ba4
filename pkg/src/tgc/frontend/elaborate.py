"""Elaboration: from an Ast to a theory graph plus documents and cross checks.

Names are collected first, bodies second, so declarations may refer forward.
Bodies are processed by kind: theories, derivations, morphisms, theorems,
documents, cross checks.  Every failure becomes a diagnostic at the span of
the offending construct; elaboration never stops at the first error.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .. import crosscheck as cc
from .. import morphism as mo
from .. import proofdoc as pd
from ..graph import GraphError, NamedDerivation, TheoryGraph, make_path, transport
from ..kernel import (
    BOT,
    TOP,
    And,
    App,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    KernelError,
    Motive,
    Not,
    Or,
    Pred,
    Signature,
    Step,
    Term,
    Var,
    alpha_eq,
    check_derivation,
    steps_of,
)
from ..theory import (
    Assumed,
    Derived,
    Theory,
    TheoryError,
    Transported,
    add_axiom,
    add_theorem,
)
from . import ast as A
from .diagnostics import Diagnostic, SourceSpan, error, warning


class ElabError(Exception):
    def __init__(self, code: str, message: str, span: SourceSpan, *notes: str):
        super().__init__(message)
        self.diag = error(code, message, span, *notes)


@dataclass
class Elaboration:
    graph: TheoryGraph = field(default_factory=TheoryGraph)
    docs: dict[str, pd.ProofDoc] = field(default_factory=dict)
    checks: dict[str, cc.CrossCheck] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    spans: dict[tuple[str, str], SourceSpan] = field(default_factory=dict)

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]


# ---------------------------------------------------------------------------
# expressions


def resolve_term(sig: Signature, ctx: Mapping[str, str], t: A.RName) -> tuple[Term, str]:
    """Resolve names in ``t``; returns the kernel term and its sort."""
    if t.args is None and t.name in ctx:
        return Var(t.name, ctx[t.name]), ctx[t.name]
    if t.name not in sig.functions:
        if t.args is None:
            raise ElabError("E-UNKNOWN-SYMBOL", f"unknown variable or constant {t.name!r}", t.span)
        raise ElabError("E-UNKNOWN-SYMBOL", f"unknown function symbol {t.name!r}", t.span)
    arg_sorts, result = sig.functions[t.name]
    args = t.args or ()
    if len(args) != len(arg_sorts):
        raise ElabError(
            "E-ARITY", f"{t.name} expects {len(arg_sorts)} argument(s), got {len(args)}", t.span
        )
    out = []
    for a, want in zip(args, arg_sorts):
        term, got = resolve_term(sig, ctx, a)
        if got != want:
            raise ElabError(
                "E-SORT-MISMATCH", f"argument of {t.name} has sort {got}, expected {want}", a.span
            )
        out.append(term)
    return App(t.name, tuple(out)), result


_BIN = {"/\\": And, "\\/": Or, "->": Implies, "<->": Iff}


def resolve_formula(sig: Signature, ctx: Mapping[str, str], f: A.RFormula) -> Formula:
    match f:
        case A.RConst(v):
            return TOP if v else BOT
        case A.RAtom(t):
            if t.name not in sig.predicates:
                if t.args is None and (t.name in ctx or t.name in sig.functions):
                    raise ElabError("E-ILL-FORMED", f"{t.name!r} is a term, not a formula", t.span)
                raise ElabError("E-UNKNOWN-SYMBOL", f"unknown predicate symbol {t.name!r}", t.span)
            want = sig.predicates[t.name]
            args = t.args or ()
            if len(args) != len(want):
                raise ElabError(
                    "E-ARITY", f"{t.name} expects {len(want)} argument(s), got {len(args)}", t.span
                )
            out = []
            for a, s in zip(args, want):
                term, got = resolve_term(sig, ctx, a)
                if got != s:
                    raise ElabError(
                        "E-SORT-MISMATCH", f"argument of {t.name} has sort {got}, expected {s}", a.span
                    )
                out.append(term)
            return Pred(t.name, tuple(out))
        case A.REq(l, r):
            lt, ls = resolve_term(sig, ctx, l)
            rt, rs = resolve_term(sig, ctx, r)
            if ls != rs:
                raise ElabError("E-SORT-MISMATCH", f"equation between sorts {ls} and {rs}", f.span)
            return Eq(lt, rt)
        case A.RNot(b):
            return Not(resolve_formula(sig, ctx, b))
        case A.RBin(op, l, r):
            return _BIN[op](resolve_formula(sig, ctx, l), resolve_formula(sig, ctx, r))
        case A.RQuant(kind, binders, body):
            inner = dict(ctx)
            for x, s in binders:
                if s not in sig.sorts:
                    raise ElabError("E-UNKNOWN-SORT", f"unknown sort {s!r}", f.span)
                inner[x] = s
            out = resolve_formula(sig, inner, body)
            q = Forall if kind == "forall" else Exists
            for x, s in reversed(binders):
                out = q(x, s, out)
            return out
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------


_KIND_NAMES = {
    A.TheoryDecl: "theory",
    A.MorphismDecl: "morphism",
    A.TheoremDecl: "theorem",
    A.DerivationDecl: "derivation",
    A.ProofDocDecl: "proofdoc",
    A.StructuralDecl: "crosscheck",
    A.SemanticDecl: "crosscheck",
}


class Elaborator:
    def __init__(self, ast: A.Ast):
        self.ast = ast
        self.out = Elaboration()
        self.g = TheoryGraph()
        self.decls: dict[str, dict[str, A.Decl]] = {k: {} for k in set(_KIND_NAMES.values())}
        self.theory_state: dict[str, str] = {}

    def diag(self, d: Diagnostic) -> None:
        self.out.diagnostics.append(d)

    def guard(self, fn, *args):
        try:
            return fn(*args)
        except ElabError as e:
            self.diag(e.diag)
        return None

    def run(self) -> Elaboration:
        self.collect()
        for name in self.decls["theory"]:
            self.guard(self.theory, name)
        for d in self.decls["derivation"].values():
            self.guard(self.derivation, d)
        for d in self.decls["morphism"].values():
            self.guard(self.morphism, d)
        theorems = list(self.decls["theorem"].values())
        for d in sorted(theorems, key=lambda d: isinstance(d.evidence, A.TransportEvidence)):
            self.guard(self.theorem, d)
        for d in self.decls["proofdoc"].values():
            self.guard(self.proofdoc, d)
        for d in self.decls["crosscheck"].values():
            self.guard(self.crosscheck, d)
        for d in self.decls["derivation"].values():
            self.guard(self.check_standalone, d)
        self.out.graph = self.g
        return self.out

    # --- pass 1

    def collect(self) -> None:
        for d in self.ast.decls:
            kind = _KIND_NAMES.get(type(d))
            if kind is None:
                continue
            if kind == "theorem":
                key = f"{d.theory.name}.{d.name.name}"
            else:
                key = d.name.name
            table = self.decls[kind]
            if key in table:
                first = table[key].span
                self.diag(
                    error(
                        "E-DUP-NAME",
                        f"{kind} {d.name.name!r} is already declared",
                        d.name.span,
                        f"first declared at {first}",
                    )
                )
                continue
            table[key] = d
            self.out.spans[(kind, key)] = d.span

    # --- helpers

    def theory_ref(self, ident: A.Ident) -> Theory:
        if ident.name not in self.g.theories:
            if ident.name in self.decls["theory"]:
                raise ElabError("E-UNKNOWN-REF", f"theory {ident.name!r} failed to elaborate", ident.span)
            raise ElabError("E-UNKNOWN-REF", f"unknown theory {ident.name!r}", ident.span)
        return self.g.theories[ident.name]

    def sorts_exist(self, sig: Signature, idents) -> None:
        for s in idents:
            if s.name not in sig.sorts:
                raise ElabError("E-UNKNOWN-SORT", f"unknown sort {s.name!r}", s.span)

    # --- theories

    def theory(self, name: str) -> None:
        state = self.theory_state.get(name)
        if state == "done":
            return
        if state == "active":
            d = self.decls["theory"][name]
            raise ElabError("E-CYCLE", f"theory {name!r} extends itself", d.name.span)
        self.theory_state[name] = "active"
        try:
            self._theory(self.decls["theory"][name])
        finally:
            self.theory_state[name] = "done"

    def _theory(self, d: A.TheoryDecl) -> None:
        sig = Signature()
        axioms: dict[str, Formula] = {}
        for p in d.extends:
            if p.name not in self.decls["theory"]:
                raise ElabError("E-UNKNOWN-REF", f"unknown theory {p.name!r}", p.span)
            self.theory(p.name)
            parent = self.theory_ref(p)
            sig = sig.extend(parent.signature.sorts, parent.signature.functions, parent.signature.predicates)
            for k, v in parent.axioms.items():
                axioms.setdefault(k, v)
        t = Theory(d.name.name, sig, axioms)
        for it in d.items:
            try:
                t = self._theory_item(t, it)
            except ElabError as e:
                self.diag(e.diag)
        self.g = self.g.add_theory(t)

    def _theory_item(self, t: Theory, it: A.TheoryItem) -> Theory:
        sig = t.signature
        match it:
            case A.SortItem(name):
                if name.name in sig.sorts:
                    raise ElabError("E-DUP-NAME", f"sort {name.name!r} declared twice", name.span)
                return Theory(t.id, sig.extend([name.name]), t.axioms, t.theorems)
            case A.FuncItem(name, args, res):
                self._fresh_symbol(sig, name)
                self.sorts_exist(sig, (*args, res))
                fs = {name.name: (tuple(a.name for a in args), res.name)}
                return Theory(t.id, sig.extend(functions=fs), t.axioms, t.theorems)
            case A.PredItem(name, args):
                self._fresh_symbol(sig, name)
                self.sorts_exist(sig, args)
                ps = {name.name: tuple(a.name for a in args)}
                return Theory(t.id, sig.extend(predicates=ps), t.axioms, t.theorems)
            case A.AxiomItem(name, f):
                if name.name in t.axioms:
                    raise ElabError("E-DUP-NAME", f"axiom {name.name!r} declared twice", name.span)
                phi = resolve_formula(sig, {}, f)
                try:
                    return add_axiom(t, name.name, phi)
                except TheoryError as e:
                    raise ElabError(e.code, str(e), f.span) from e
        raise TypeError(it)

    def _fresh_symbol(self, sig: Signature, name: A.Ident) -> None:
        if name.name in sig.functions or name.name in sig.predicates:
            raise ElabError("E-DUP-NAME", f"symbol {name.name!r} declared twice", name.span)

    # --- derivations

    def derivation(self, d: A.DerivationDecl) -> None:
        t = self.theory_ref(d.theory)
        sig = t.signature
        ctx: dict[str, str] = {}
        for v, s in d.vars:
            self.sorts_exist(sig, [s])
            ctx[v.name] = s.name
        steps: dict[str, Step] = {}
        for sd in d.steps:
            if sd.id.name in steps:
                raise ElabError("E-DUP-NAME", f"step {sd.id.name!r} defined twice", sd.id.span)
            prem = []
            for p in sd.premises:
                if p.name not in steps:
                    raise ElabError("E-UNKNOWN-REF", f"unknown earlier step {p.name!r}", p.span)
                prem.append(steps[p.name])
            params: list = []
            if sd.axiom is not None:
                params.append(sd.axiom.name)
            for p in sd.params:
                if isinstance(p, A.MotiveParam):
                    if p.sort not in sig.sorts:
                        raise ElabError("E-UNKNOWN-SORT", f"unknown sort {p.sort!r}", p.span)
                    body = resolve_formula(sig, {**ctx, p.var: p.sort}, p.body)
                    params.append(Motive(p.var, p.sort, body))
                else:
                    params.append(resolve_term(sig, ctx, p)[0])
            concl = resolve_formula(sig, ctx, sd.conclusion)
            steps[sd.id.name] = Step(sd.id.name, sd.rule.name, tuple(prem), tuple(params), concl)
        if not steps:
            raise ElabError("E-ILL-FORMED", f"derivation {d.name.name} has no steps", d.span)
        root = steps[d.steps[-1].id.name]
        proves = d.proves.name if d.proves is not None else None
        if proves is not None and f"{t.id}.{proves}" not in self.decls["theorem"]:
            raise ElabError("E-UNKNOWN-REF", f"{t.id} declares no theorem {proves!r}", d.proves.span)
        self.g = self.g.add_derivation(NamedDerivation(d.name.name, t.id, root, proves))

    def check_standalone(self, d: A.DerivationDecl) -> None:
        """Kernel-check derivations that cite only real axioms."""
        if d.name.name not in self.g.derivations:
            return
        nd = self.g.derivations[d.name.name]
        if any(":" in str(s.params[0]) for s in steps_of(nd.derivation) if s.rule == "axiom" and s.params):
            return
        if nd.proves is not None:
            return  # checked when the theorem is recorded
        t = self.g.theories[nd.theory]
        try:
            check_derivation(t.signature, t.axioms, nd.derivation)
        except KernelError as e:
            raise ElabError(e.code, str(e), self._step_span(d, getattr(e, "step_id", None))) from e

    def _step_span(self, d: A.DerivationDecl, step_id: str | None) -> SourceSpan:
        for sd in d.steps:
            if sd.id.name == step_id:
                return sd.span
        return d.span

    def derivation_ref(self, ident: A.Ident) -> NamedDerivation:
        if ident.name not in self.g.derivations:
            why = "failed to elaborate" if ident.name in self.decls["derivation"] else "is not declared"
            raise ElabError("E-UNKNOWN-REF", f"derivation {ident.name!r} {why}", ident.span)
        return self.g.derivations[ident.name]

    # --- morphisms

    def morphism(self, d: A.MorphismDecl) -> None:
        src, tgt = self.theory_ref(d.source), self.theory_ref(d.target)
        ssig, tsig = src.signature, tgt.signature
        sort_map: dict[str, str] = {}
        funcs: dict[str, mo.SymbolImage] = {}
        preds: dict[str, mo.SymbolImage] = {}
        identity = any(isinstance(it, A.IdentityItem) for it in d.items)
        for it in d.items:
            if isinstance(it, A.SortMap):
                if it.source.name not in ssig.sorts:
                    raise ElabError("E-UNKNOWN-SORT", f"{src.id} has no sort {it.source.name!r}", it.source.span)
                if it.target.name not in tsig.sorts:
                    raise ElabError("E-UNKNOWN-SORT", f"{tgt.id} has no sort {it.target.name!r}", it.target.span)
                sort_map[it.source.name] = it.target.name
        if identity:
            for s in ssig.sorts:
                if s in tsig.sorts:
                    sort_map.setdefault(s, s)
        for it in d.items:
            if not isinstance(it, A.SymbolMap):
                continue
            table = ssig.functions if it.kind == "func" else ssig.predicates
            if it.name.name not in table:
                raise ElabError(
                    "E-UNKNOWN-SYMBOL", f"{src.id} has no {it.kind} {it.name.name!r}", it.name.span
                )
            arg_sorts = table[it.name.name][0] if it.kind == "func" else table[it.name.name]
            if len(it.params) != len(arg_sorts):
                raise ElabError(
                    "E-ARITY",
                    f"{it.name.name} has arity {len(arg_sorts)}, image takes {len(it.params)} parameter(s)",
                    it.span,
                )
            ctx = {}
            for p, s in zip(it.params, arg_sorts):
                if s not in sort_map:
                    raise ElabError("E-UNMAPPED-SYMBOL", f"sort {s!r} is not mapped", it.span)
                ctx[p.name] = sort_map[s]
            params = tuple(Var(p.name, ctx[p.name]) for p in it.params)
            if it.kind == "func":
                body = resolve_term(tsig, ctx, it.body)[0]
                funcs[it.name.name] = mo.SymbolImage(params, body)
            else:
                preds[it.name.name] = mo.SymbolImage(params, resolve_formula(tsig, ctx, it.body))
        if identity:
            ident = mo.identity_assignment(ssig)
            for f, img in ident.func_map.items():
                if f in tsig.functions:
                    funcs.setdefault(f, img)
            for p, img in ident.pred_map.items():
                if p in tsig.predicates:
                    preds.setdefault(p, img)
        assignment = mo.Assignment(sort_map, funcs, preds)
        try:
            m = mo.make_morphism(d.name.name, src, tgt, assignment)
        except mo.MorphismError as e:
            raise ElabError(e.code, f"morphism {d.name.name}: {e}", d.name.span) from e
        for it in d.items:
            if isinstance(it, A.ObligationItem):
                try:
                    m = self._obligation(m, tgt, it)
                except ElabError as e:
                    self.diag(e.diag)
        self.g = self.g.add_morphism(m)
        status = mo.verify(m)
        if not status.verified:
            pending = [o.axiom_name for o in m.obligations if isinstance(o.status, mo.Pending)]
            assumed = [o.axiom_name for o in m.obligations if isinstance(o.status, mo.Assumed)]
            notes = []
            if pending:
                notes.append("pending: " + ", ".join(pending))
            if assumed:
                notes.append("assumed: " + ", ".join(assumed))
            self.diag(
                warning(
                    "W-PARTIAL-MORPHISM",
                    f"morphism {m.id} is {status}",
                    d.name.span,
                    *notes,
                )
            )

    def _obligation(self, m: mo.Morphism, tgt: Theory, it: A.ObligationItem) -> mo.Morphism:
        if all(o.axiom_name != it.axiom.name for o in m.obligations):
            raise ElabError(
                "E-OBLIGATION-FAIL", f"{m.source} has no axiom {it.axiom.name!r}", it.axiom.span
            )
        if it.method == "axiom":
            method = mo.ByAxiom(it.arg)
        elif it.method == "derivation":
            ident = A.Ident(it.arg, it.span)
            nd = self.derivation_ref(ident)
            if nd.theory != tgt.id:
                raise ElabError(
                    "E-OBLIGATION-FAIL",
                    f"derivation {it.arg} belongs to {nd.theory}, not {tgt.id}",
                    it.span,
                )
            method = mo.Proved(it.arg, nd.derivation)
        else:
            method = mo.Assumed(it.arg)
        try:
            return mo.discharge_in(m, it.axiom.name, method, tgt)
        except (mo.MorphismError, TheoryError) as e:
            raise ElabError("E-OBLIGATION-FAIL", str(e), it.span) from e

    # --- theorems

    def theorem(self, d: A.TheoremDecl) -> None:
        t = self.theory_ref(d.theory)
        phi = resolve_formula(t.signature, {}, d.formula)
        name = d.name.name
        provers = [
            nd for nd in self.g.derivations.values() if nd.theory == t.id and nd.proves == name
        ]
        ev = d.evidence
        if provers:
            prov = Derived(provers[0].id, provers[0].derivation)
        elif isinstance(ev, A.AssumptionEvidence):
            prov = Assumed(ev.reason)
        elif isinstance(ev, A.TransportEvidence):
            prov = self._transport_evidence(t, name, phi, ev)
        else:
            prov = Assumed("declared without a derivation")
        try:
            t = add_theorem(t, name, phi, prov)
        except TheoryError as e:
            span = d.span
            if provers:
                span = self.out.spans.get(("derivation", provers[0].id), d.span)
            raise ElabError(e.code, f"theorem {name}: {e}", span) from e
        self.g = self.g.update_theory(t)
        if isinstance(prov, Assumed):
            self.diag(warning("W-ASSUMED-THEOREM", f"theorem {name} is assumed: {prov.reason}", d.name.span))
        elif isinstance(prov, Transported) and prov.partial:
            self.diag(
                warning("W-PARTIAL-TRANSPORT", f"theorem {name} was transported along an unverified path", d.name.span)
            )

    def _transport_evidence(self, t: Theory, name: str, phi: Formula, ev: A.TransportEvidence):
        src = self.theory_ref(ev.theory)
        for v in ev.via:
            if v.name not in self.g.morphisms:
                raise ElabError("E-UNKNOWN-REF", f"unknown morphism {v.name!r}", v.span)
        try:
            path = make_path(self.g, [v.name for v in ev.via])
            if path.target != t.id:
                raise ElabError("E-ILL-FORMED", f"path ends at {path.target}, not {t.id}", ev.span)
            res = transport(self.g, src.id, ev.theorem.name, path, allow_partial=True, name=f"__probe_{name}")
        except GraphError as e:
            raise ElabError(e.code, str(e), ev.span) from e
        if not alpha_eq(res.formula, phi):
            raise ElabError(
                "E-TRANSPORT-MISMATCH",
                f"{name} is not the image of {src.id}.{ev.theorem.name} along the path",
                ev.span,
            )
        return Transported(src.id, ev.theorem.name, path.edges, partial=res.flagged)

    # --- documents

    def statement_ref(self, t: Theory, ident: A.Ident) -> Formula:
        f = t.statement(ident.name)
        if f is None:
            key = f"{t.id}.{ident.name}"
            why = "failed to elaborate" if key in self.decls["theorem"] else "is not declared"
            raise ElabError("E-UNKNOWN-REF", f"{t.id} theorem {ident.name!r} {why}", ident.span)
        return f

    def proofdoc(self, d: A.ProofDocDecl) -> None:
        t = self.theory_ref(d.theory)
        if d.formula is not None:
            thm = resolve_formula(t.signature, {}, d.formula)
        else:
            thm = self.statement_ref(t, d.thm)
        steps: list = []
        checks: list[str] = []
        for it in d.items:
            match it:
                case A.InformalItem(label, text, claims):
                    claimed = resolve_formula(t.signature, {}, claims) if claims is not None else None
                    steps.append(pd.Informal(text, claimed, label.name if label else None))
                case A.FormalItem(der, label):
                    nd = self.derivation_ref(der)
                    if nd.theory != t.id:
                        raise ElabError(
                            "E-ILL-FORMED", f"derivation {der.name} belongs to {nd.theory}", der.span
                        )
                    steps.append(pd.Formal(label.name if label else der.name, der.name))
                case A.CheckListItem(ids):
                    for c in ids:
                        if c.name not in self.decls["crosscheck"]:
                            raise ElabError("E-UNKNOWN-REF", f"unknown cross check {c.name!r}", c.span)
                        checks.append(c.name)
        labels = [s.label for s in steps if s.label is not None]
        dup = next((x for x in labels if labels.count(x) > 1), None)
        if dup is not None:
            raise ElabError("E-DUP-NAME", f"step label {dup!r} used twice", d.span)
        self.out.docs[d.name.name] = pd.ProofDoc(
            d.name.name, t.id, thm, tuple(steps), tuple(checks), d.thm.name
        )

    # --- cross checks

    def crosscheck(self, d) -> None:
        if isinstance(d, A.StructuralDecl):
            (d1, t1), (d2, t2) = d.proof1, d.proof2
            for der, th in ((d1, t1), (d2, t2)):
                theory = self.theory_ref(th)
                nd = self.derivation_ref(der)
                if nd.theory != theory.id:
                    raise ElabError("E-ILL-FORMED", f"derivation {der.name} belongs to {nd.theory}", der.span)
            corr = None
            if d.correspondence is not None:
                corr = {a.name: b.name for a, b in d.correspondence}
            self.out.checks[d.name.name] = cc.StructuralCheck(
                d.name.name, (t1.name, d1.name), (t2.name, d2.name), corr
            )
            return
        (f1, t1), (f2, t2) = d.a1, d.a2
        th1, th2 = self.theory_ref(t1), self.theory_ref(t2)
        a1, a1_name = self._statement_or_formula(th1, f1)
        a2, _ = self._statement_or_formula(th2, f2)
        for v in d.via:
            if v.name not in self.decls["morphism"]:
                raise ElabError("E-UNKNOWN-REF", f"unknown morphism {v.name!r}", v.span)
        witness = None
        if d.witness is not None:
            witness = self.derivation_ref(d.witness).id
        self.out.checks[d.name.name] = cc.SemanticCheck(
            d.name.name, (th1.id, a1), (th2.id, a2), tuple(v.name for v in d.via), witness, a1_name
        )

    def _statement_or_formula(self, t: Theory, f: A.RFormula) -> tuple[Formula, str]:
        if isinstance(f, A.RAtom) and f.term.args is None and f.term.name not in t.signature.predicates:
            return self.statement_ref(t, A.Ident(f.term.name, f.span)), f.term.name
        return resolve_formula(t.signature, {}, f), "A1"


def elaborate(ast: A.Ast) -> Elaboration:
    return Elaborator(ast).run()
