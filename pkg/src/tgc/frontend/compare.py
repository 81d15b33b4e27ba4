"""Content equality of two elaborations, formulas compared up to alpha."""
from __future__ import annotations

from .. import crosscheck as cc
from .. import proofdoc as pd
from ..kernel import Forall, Motive, Step, alpha_eq
from ..morphism import assignments_alpha_equal, status_name
from .elaborate import Elaboration


def _same_step(a: Step, b: Step) -> bool:
    if a.rule != b.rule or len(a.premises) != len(b.premises) or len(a.params) != len(b.params):
        return False
    for p, q in zip(a.params, b.params):
        if isinstance(p, Motive) and isinstance(q, Motive):
            if not alpha_eq(Forall(p.var, p.sort, p.body), Forall(q.var, q.sort, q.body)):
                return False
        elif p != q:
            return False
    if not alpha_eq(a.conclusion, b.conclusion):
        return False
    return all(_same_step(x, y) for x, y in zip(a.premises, b.premises))


def _same_arg(a: pd.ArgStep, b: pd.ArgStep) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, pd.Formal):
        return a == b
    if a.text != b.text or a.label != b.label or (a.claimed is None) != (b.claimed is None):
        return False
    return a.claimed is None or alpha_eq(a.claimed, b.claimed)


def _same_check(a: cc.CrossCheck, b: cc.CrossCheck) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, cc.StructuralCheck):
        return a == b
    return (
        a.a1[0] == b.a1[0]
        and a.a2[0] == b.a2[0]
        and alpha_eq(a.a1[1], b.a1[1])
        and alpha_eq(a.a2[1], b.a2[1])
        and (a.via, a.witness, a.a1_name) == (b.via, b.witness, b.a1_name)
    )


def differences(x: Elaboration, y: Elaboration) -> list[str]:
    """Human-readable differences; empty iff the contents agree."""
    out: list[str] = []
    gx, gy = x.graph, y.graph
    if list(gx.theories) != list(gy.theories):
        out.append(f"theories {list(gx.theories)} vs {list(gy.theories)}")
    for tid in set(gx.theories) & set(gy.theories):
        s, t = gx.theories[tid], gy.theories[tid]
        if s.signature != t.signature:
            out.append(f"{tid}: signatures differ")
        for kind, ma, mb in (("axiom", s.axioms, t.axioms), ("theorem", s.theorems, t.theorems)):
            if list(ma) != list(mb):
                out.append(f"{tid}: {kind} names differ")
                continue
            for n in ma:
                fa = ma[n] if kind == "axiom" else ma[n].formula
                fb = mb[n] if kind == "axiom" else mb[n].formula
                if not alpha_eq(fa, fb):
                    out.append(f"{tid}.{n}: statements differ")
                if kind == "theorem" and type(ma[n].provenance) is not type(mb[n].provenance):
                    out.append(f"{tid}.{n}: provenance differs")
    if list(gx.morphisms) != list(gy.morphisms):
        out.append("morphism ids differ")
    for mid in set(gx.morphisms) & set(gy.morphisms):
        m, n = gx.morphisms[mid], gy.morphisms[mid]
        if (m.source, m.target) != (n.source, n.target):
            out.append(f"{mid}: endpoints differ")
        elif not assignments_alpha_equal(m.assignment, n.assignment):
            out.append(f"{mid}: assignments differ")
        elif [status_name(o.status) for o in m.obligations] != [status_name(o.status) for o in n.obligations]:
            out.append(f"{mid}: obligation statuses differ")
    if list(gx.derivations) != list(gy.derivations):
        out.append("derivation ids differ")
    for did in set(gx.derivations) & set(gy.derivations):
        a, b = gx.derivations[did], gy.derivations[did]
        if (a.theory, a.proves) != (b.theory, b.proves) or not _same_step(a.derivation, b.derivation):
            out.append(f"derivation {did} differs")
    if list(x.docs) != list(y.docs):
        out.append("document ids differ")
    for did in set(x.docs) & set(y.docs):
        a, b = x.docs[did], y.docs[did]
        if (
            (a.home, a.cc, a.thm_name) != (b.home, b.cc, b.thm_name)
            or not alpha_eq(a.thm, b.thm)
            or len(a.arg) != len(b.arg)
            or not all(_same_arg(p, q) for p, q in zip(a.arg, b.arg))
        ):
            out.append(f"document {did} differs")
    if list(x.checks) != list(y.checks):
        out.append("cross-check ids differ")
    for cid in set(x.checks) & set(y.checks):
        if not _same_check(x.checks[cid], y.checks[cid]):
            out.append(f"cross check {cid} differs")
    if [(d.severity, d.code) for d in x.diagnostics] != [(d.severity, d.code) for d in y.diagnostics]:
        out.append("diagnostic codes differ")
    return sorted(out)


def equivalent(x: Elaboration, y: Elaboration) -> bool:
    return not differences(x, y)
