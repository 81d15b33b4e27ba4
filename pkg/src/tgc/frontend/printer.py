"""Canonical source text for an Ast."""
from __future__ import annotations

from . import ast as A

_PREC = {"<->": 1, "->": 2, "\\/": 3, "/\\": 4}


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def term(t: A.RName) -> str:
    if t.args is None:
        return t.name
    return f"{t.name}({','.join(term(a) for a in t.args)})"


def formula(f: A.RFormula, ctx_prec: int = 0) -> str:
    match f:
        case A.RConst(v):
            return "true" if v else "false"
        case A.RAtom(t):
            return term(t)
        case A.REq(l, r):
            return f"{term(l)} = {term(r)}"
        case A.RNot(b):
            return "~" + formula(b, 5)
        case A.RQuant(kind, binders, body):
            text = f"{kind} {', '.join(f'{x}:{s}' for x, s in binders)}. {formula(body)}"
            return f"({text})" if ctx_prec > 0 else text
        case A.RBin(op, l, r):
            prec = _PREC[op]
            if op == "<->":
                lp = rp = prec + 1
            elif op == "->":
                lp, rp = prec + 1, prec
            else:
                lp, rp = prec, prec + 1
            text = f"{formula(l, lp)} {op} {formula(r, rp)}"
            return f"({text})" if ctx_prec > prec else text
    raise TypeError(f"not a formula: {f!r}")


def _theory(d: A.TheoryDecl) -> list[str]:
    head = f"theory {d.name.name}"
    if d.extends:
        head += " extends " + ", ".join(p.name for p in d.extends)
    lines = [head + " {"]
    for it in d.items:
        match it:
            case A.SortItem(name):
                lines.append(f"  sort {name.name}")
            case A.FuncItem(name, args, res):
                if args:
                    lines.append(f"  func {name.name} : {', '.join(a.name for a in args)} -> {res.name}")
                else:
                    lines.append(f"  func {name.name} : {res.name}")
            case A.PredItem(name, args):
                tail = f" : {', '.join(a.name for a in args)}" if args else ""
                lines.append(f"  pred {name.name}{tail}")
            case A.AxiomItem(name, f):
                lines.append(f"  axiom {name.name} : {formula(f)}")
    lines.append("}")
    return lines


def _morphism(d: A.MorphismDecl) -> list[str]:
    lines = [f"morphism {d.name.name} : {d.source.name} -> {d.target.name} {{"]
    for it in d.items:
        match it:
            case A.IdentityItem():
                lines.append("  identity")
            case A.SortMap(s, t):
                lines.append(f"  sort {s.name} -> {t.name}")
            case A.SymbolMap(kind, name, params, body):
                ps = f"({','.join(p.name for p in params)})" if params else ""
                rhs = term(body) if kind == "func" else formula(body)
                lines.append(f"  {kind} {name.name}{ps} -> {rhs}")
            case A.ObligationItem(ax, method, arg):
                shown = _quote(arg) if method == "assumption" else arg
                lines.append(f"  obligation {ax.name} by {method} {shown}")
    lines.append("}")
    return lines


def _theorem(d: A.TheoremDecl) -> list[str]:
    lines = [f"theorem {d.name.name} in {d.theory.name} :", f"  {formula(d.formula)}"]
    match d.evidence:
        case A.AssumptionEvidence(reason):
            lines.append(f"  by assumption {_quote(reason)}")
        case A.TransportEvidence(theory, thm, via):
            lines.append(
                f"  by transport {theory.name}.{thm.name} via {', '.join(v.name for v in via)}"
            )
    return lines


def _param(p: A.StepParam) -> str:
    if isinstance(p, A.MotiveParam):
        return f"[{p.var}:{p.sort}. {formula(p.body)}]"
    return f"[{term(p)}]"


def _derivation(d: A.DerivationDecl) -> list[str]:
    head = f"derivation {d.name.name} in {d.theory.name}"
    if d.proves is not None:
        head += f" proves {d.proves.name}"
    lines = [head + " {"]
    if d.vars:
        lines.append("  vars " + ", ".join(f"{v.name}:{s.name}" for v, s in d.vars))
    for s in d.steps:
        parts = [f"{s.id.name} : {s.rule.name}"]
        if s.axiom is not None:
            parts.append(s.axiom.name)
        parts.extend(p.name for p in s.premises)
        parts.extend(_param(p) for p in s.params)
        parts.append(f"|- {formula(s.conclusion)}")
        lines.append("  " + " ".join(parts))
    lines.append("}")
    return lines


def _proofdoc(d: A.ProofDocDecl) -> list[str]:
    head = f"proofdoc {d.name.name} in {d.theory.name} shows {d.thm.name}"
    if d.formula is not None:
        head += f" : {formula(d.formula)}"
    lines = [head + " {"]
    for it in d.items:
        match it:
            case A.InformalItem(label, text, claims):
                line = "  informal"
                if label is not None:
                    line += f" {label.name}"
                line += f" {_quote(text)}"
                if claims is not None:
                    line += f" claims {formula(claims)}"
                lines.append(line)
            case A.FormalItem(der, label):
                line = f"  formal {der.name}"
                if label is not None:
                    line += f" as {label.name}"
                lines.append(line)
            case A.CheckListItem(checks):
                lines.append("  crosscheck " + " ".join(c.name for c in checks))
    lines.append("}")
    return lines


def _structural(d: A.StructuralDecl) -> list[str]:
    (d1, t1), (d2, t2) = d.proof1, d.proof2
    line = f"crosscheck {d.name.name} : structural({d1.name} in {t1.name}, {d2.name} in {t2.name})"
    if d.correspondence is not None:
        pairs = ", ".join(f"{a.name} -> {b.name}" for a, b in d.correspondence)
        line += f" with {{ {pairs} }}" if pairs else " with { }"
    return [line]


def _semantic(d: A.SemanticDecl) -> list[str]:
    (f1, t1), (f2, t2) = d.a1, d.a2
    via = ", ".join(v.name for v in d.via)
    tail = f", witness {d.witness.name}" if d.witness is not None else ""
    return [
        f"crosscheck {d.name.name} : semantic({formula(f1)} in {t1.name},",
        f"  {formula(f2)} in {t2.name}, via {via}{tail})",
    ]


def pretty_print(a: A.Ast) -> str:
    blocks: list[list[str]] = []
    for d in a.decls:
        match d:
            case A.IncludeDecl(path):
                blocks.append([f"include {_quote(path)}"])
            case A.TheoryDecl():
                blocks.append(_theory(d))
            case A.MorphismDecl():
                blocks.append(_morphism(d))
            case A.TheoremDecl():
                blocks.append(_theorem(d))
            case A.DerivationDecl():
                blocks.append(_derivation(d))
            case A.ProofDocDecl():
                blocks.append(_proofdoc(d))
            case A.StructuralDecl():
                blocks.append(_structural(d))
            case A.SemanticDecl():
                blocks.append(_semantic(d))
    if not blocks:
        return ""
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"
