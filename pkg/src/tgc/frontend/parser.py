"""Recursive-descent parser for the declaration language.

Syntax errors are collected as diagnostics; after an error the parser skips to
the next top-level keyword outside braces and carries on.
"""
from __future__ import annotations

from typing import Iterable

from . import ast as A
from .diagnostics import Diagnostic, SourceSpan, error
from .lexer import EOF, IDENT, STRING, SYM, Token, tokenize

TOP_LEVEL = ("theory", "morphism", "theorem", "derivation", "proofdoc", "crosscheck", "include")
BINARY = {"<->": 1, "->": 2, "\\/": 3, "/\\": 4}


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.span = span


class Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    # --- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.tok
        if t.kind != EOF:
            self.pos += 1
        return t

    def at(self, kind: str, value: str | None = None) -> bool:
        return self.tok.is_(kind, value)

    def at_kw(self, word: str) -> bool:
        return self.at(IDENT, word)

    def accept(self, kind: str, value: str | None = None) -> Token | None:
        if self.at(kind, value):
            return self.advance()
        return None

    def expect(self, kind: str, value: str | None = None, what: str | None = None) -> Token:
        if self.at(kind, value):
            return self.advance()
        want = what or (repr(value) if value else kind)
        got = repr(self.tok.value) if self.tok.kind != EOF else "end of file"
        raise ParseError(f"expected {want}, found {got}", self.tok.span)

    def sym(self, value: str) -> Token:
        return self.expect(SYM, value)

    def kw(self, word: str) -> Token:
        return self.expect(IDENT, word, f"keyword {word!r}")

    def ident(self, what: str = "identifier") -> A.Ident:
        t = self.expect(IDENT, what=what)
        return A.Ident(t.value, t.span)

    def string(self) -> str:
        return self.expect(STRING, what="string literal").value

    def span_from(self, start: SourceSpan) -> SourceSpan:
        prev = self.toks[self.pos - 1] if self.pos > 0 else self.tok
        return start.to(prev.span)

    # --- file level

    def parse_file(self) -> tuple[list[A.Decl], list[Diagnostic]]:
        decls: list[A.Decl] = []
        diags: list[Diagnostic] = []
        while not self.at(EOF):
            start = self.pos
            try:
                decls.append(self.decl())
            except ParseError as e:
                diags.append(error("E-PARSE", str(e), e.span))
                self.recover(start)
        return decls, diags

    def recover(self, start: int) -> None:
        # brace depth is counted from the failing declaration's first token;
        # a keyword in column 1 also ends the skip, in case a brace is missing
        self.pos = start + 1
        depth = 0
        while not self.at(EOF):
            t = self.tok
            if t.kind == IDENT and t.value in TOP_LEVEL and (depth <= 0 or t.span.col == 1):
                return
            if t.is_(SYM, "{"):
                depth += 1
            elif t.is_(SYM, "}"):
                depth -= 1
            self.advance()

    def decl(self) -> A.Decl:
        t = self.tok
        if t.kind != IDENT or t.value not in TOP_LEVEL:
            raise ParseError(
                f"expected a declaration ({', '.join(TOP_LEVEL)}), found {t.value or 'end of file'!r}",
                t.span,
            )
        return getattr(self, "decl_" + t.value)()

    def decl_include(self) -> A.IncludeDecl:
        start = self.kw("include").span
        path = self.string()
        return A.IncludeDecl(path, self.span_from(start))

    def decl_theory(self) -> A.TheoryDecl:
        start = self.kw("theory").span
        name = self.ident("theory name")
        parents: list[A.Ident] = []
        if self.accept(IDENT, "extends"):
            parents.append(self.ident("theory name"))
            while self.accept(SYM, ","):
                parents.append(self.ident("theory name"))
        self.sym("{")
        items = []
        while not self.at(SYM, "}"):
            items.append(self.theory_item())
        self.sym("}")
        return A.TheoryDecl(name, tuple(parents), tuple(items), self.span_from(start))

    def theory_item(self) -> A.TheoryItem:
        start = self.tok.span
        if self.accept(IDENT, "sort"):
            return A.SortItem(self.ident("sort name"), self.span_from(start))
        if self.accept(IDENT, "func"):
            name = self.ident("function name")
            self.sym(":")
            sorts = self.sort_list()
            if self.accept(SYM, "->"):
                result = self.ident("sort name")
                return A.FuncItem(name, tuple(sorts), result, self.span_from(start))
            if len(sorts) != 1:
                raise ParseError("expected '->' and a result sort", self.tok.span)
            return A.FuncItem(name, (), sorts[0], self.span_from(start))
        if self.accept(IDENT, "pred"):
            name = self.ident("predicate name")
            sorts: list[A.Ident] = []
            if self.accept(SYM, ":"):
                sorts = self.sort_list()
            return A.PredItem(name, tuple(sorts), self.span_from(start))
        if self.accept(IDENT, "axiom"):
            name = self.ident("axiom name")
            self.sym(":")
            f = self.formula()
            return A.AxiomItem(name, f, self.span_from(start))
        raise ParseError(
            f"expected sort, func, pred or axiom, found {self.tok.value!r}", self.tok.span
        )

    def sort_list(self) -> list[A.Ident]:
        sorts = [self.ident("sort name")]
        while self.accept(SYM, ","):
            sorts.append(self.ident("sort name"))
        return sorts

    def decl_morphism(self) -> A.MorphismDecl:
        start = self.kw("morphism").span
        name = self.ident("morphism name")
        self.sym(":")
        src = self.ident("source theory")
        self.sym("->")
        tgt = self.ident("target theory")
        self.sym("{")
        items = []
        while not self.at(SYM, "}"):
            items.append(self.morphism_item())
        self.sym("}")
        return A.MorphismDecl(name, src, tgt, tuple(items), self.span_from(start))

    def morphism_item(self) -> A.MorphismItem:
        start = self.tok.span
        if self.accept(IDENT, "identity"):
            return A.IdentityItem(self.span_from(start))
        if self.accept(IDENT, "sort"):
            s = self.ident("sort name")
            self.sym("->")
            return A.SortMap(s, self.ident("sort name"), self.span_from(start))
        for kind in ("func", "pred"):
            if self.accept(IDENT, kind):
                name = self.ident(f"{kind} name")
                params: list[A.Ident] = []
                if self.accept(SYM, "("):
                    params.append(self.ident("parameter"))
                    while self.accept(SYM, ","):
                        params.append(self.ident("parameter"))
                    self.sym(")")
                self.sym("->")
                body = self.term() if kind == "func" else self.formula()
                return A.SymbolMap(kind, name, tuple(params), body, self.span_from(start))
        if self.accept(IDENT, "obligation"):
            ax = self.ident("axiom name")
            self.kw("by")
            if self.accept(IDENT, "axiom"):
                method, arg = "axiom", self.ident("axiom name").name
            elif self.accept(IDENT, "derivation"):
                method, arg = "derivation", self.ident("derivation name").name
            elif self.accept(IDENT, "assumption"):
                method, arg = "assumption", self.string()
            else:
                raise ParseError("expected 'axiom', 'derivation' or 'assumption'", self.tok.span)
            return A.ObligationItem(ax, method, arg, self.span_from(start))
        raise ParseError(
            f"expected sort, func, pred, identity or obligation, found {self.tok.value!r}",
            self.tok.span,
        )

    def decl_theorem(self) -> A.TheoremDecl:
        start = self.kw("theorem").span
        name = self.ident("theorem name")
        self.kw("in")
        theory = self.ident("theory name")
        self.sym(":")
        f = self.formula()
        evidence = None
        if self.at_kw("by"):
            ev_start = self.advance().span
            if self.accept(IDENT, "assumption"):
                evidence = A.AssumptionEvidence(self.string(), self.span_from(ev_start))
            elif self.accept(IDENT, "transport"):
                src = self.ident("theory name")
                self.sym(".")
                thm = self.ident("theorem name")
                self.kw("via")
                via = [self.ident("morphism name")]
                while self.accept(SYM, ","):
                    via.append(self.ident("morphism name"))
                evidence = A.TransportEvidence(src, thm, tuple(via), self.span_from(ev_start))
            else:
                raise ParseError("expected 'assumption' or 'transport'", self.tok.span)
        return A.TheoremDecl(name, theory, f, evidence, self.span_from(start))

    def decl_derivation(self) -> A.DerivationDecl:
        start = self.kw("derivation").span
        name = self.ident("derivation name")
        self.kw("in")
        theory = self.ident("theory name")
        proves = None
        if self.accept(IDENT, "proves"):
            proves = self.ident("theorem name")
        self.sym("{")
        vars_: list[tuple[A.Ident, A.Ident]] = []
        steps = []
        while not self.at(SYM, "}"):
            if self.at_kw("vars") and not self.peek().is_(SYM, ":"):
                self.advance()
                vars_.extend(self.binders())
                continue
            steps.append(self.step())
        self.sym("}")
        return A.DerivationDecl(name, theory, proves, tuple(vars_), tuple(steps), self.span_from(start))

    def binders(self) -> list[tuple[A.Ident, A.Ident]]:
        out = []
        while True:
            v = self.ident("variable")
            self.sym(":")
            out.append((v, self.ident("sort name")))
            if not self.accept(SYM, ","):
                return out

    def step(self) -> A.StepDecl:
        start = self.tok.span
        sid = self.ident("step id")
        self.sym(":")
        rule = self.ident("rule name")
        axiom = None
        if rule.name == "axiom":
            axiom = self.ident("axiom name")
            if self.at(SYM, ":") and self.peek().kind == IDENT:
                self.advance()
                tail = self.ident("axiom name")
                axiom = A.Ident(f"{axiom.name}:{tail.name}", axiom.span.to(tail.span))
        premises = []
        while self.at(IDENT):
            premises.append(self.ident())
        params = []
        while self.accept(SYM, "["):
            params.append(self.step_param())
            self.sym("]")
        self.sym("|-")
        concl = self.formula()
        return A.StepDecl(sid, rule, tuple(premises), axiom, tuple(params), concl, self.span_from(start))

    def step_param(self) -> A.StepParam:
        start = self.tok.span
        if self.at(IDENT) and self.peek().is_(SYM, ":"):
            var = self.ident("variable")
            self.sym(":")
            sort = self.ident("sort name")
            self.sym(".")
            body = self.formula()
            return A.MotiveParam(var.name, sort.name, body, self.span_from(start))
        return self.term()

    def decl_proofdoc(self) -> A.ProofDocDecl:
        start = self.kw("proofdoc").span
        name = self.ident("document name")
        self.kw("in")
        theory = self.ident("theory name")
        self.kw("shows")
        thm = self.ident("theorem name")
        formula = None
        if self.accept(SYM, ":"):
            formula = self.formula()
        self.sym("{")
        items = []
        while not self.at(SYM, "}"):
            items.append(self.doc_item())
        self.sym("}")
        return A.ProofDocDecl(name, theory, thm, formula, tuple(items), self.span_from(start))

    def doc_item(self) -> A.DocItem:
        start = self.tok.span
        if self.accept(IDENT, "informal"):
            label = self.ident("step label") if self.at(IDENT) else None
            text = self.string()
            claims = None
            if self.accept(IDENT, "claims"):
                claims = self.formula()
            return A.InformalItem(label, text, claims, self.span_from(start))
        if self.accept(IDENT, "formal"):
            d = self.ident("derivation name")
            label = None
            if self.accept(IDENT, "as"):
                label = self.ident("step label")
            return A.FormalItem(d, label, self.span_from(start))
        if self.accept(IDENT, "crosscheck"):
            ids = [self.ident("cross-check name")]
            while self.at(IDENT) and not self.at_kw("informal") and not self.at_kw("formal") and not self.at_kw("crosscheck"):
                ids.append(self.ident())
            return A.CheckListItem(tuple(ids), self.span_from(start))
        raise ParseError(
            f"expected informal, formal or crosscheck, found {self.tok.value!r}", self.tok.span
        )

    def decl_crosscheck(self) -> A.Decl:
        start = self.kw("crosscheck").span
        name = self.ident("cross-check name")
        self.sym(":")
        if self.accept(IDENT, "semantic"):
            self.sym("(")
            f1 = self.formula()
            self.kw("in")
            t1 = self.ident("theory name")
            self.sym(",")
            f2 = self.formula()
            self.kw("in")
            t2 = self.ident("theory name")
            self.sym(",")
            self.kw("via")
            via = [self.ident("morphism name")]
            witness = None
            while self.accept(SYM, ","):
                if self.accept(IDENT, "witness"):
                    witness = self.ident("derivation name")
                    break
                via.append(self.ident("morphism name"))
            self.sym(")")
            return A.SemanticDecl(name, (f1, t1), (f2, t2), tuple(via), witness, self.span_from(start))
        if self.accept(IDENT, "structural"):
            self.sym("(")
            d1 = self.ident("derivation name")
            self.kw("in")
            t1 = self.ident("theory name")
            self.sym(",")
            d2 = self.ident("derivation name")
            self.kw("in")
            t2 = self.ident("theory name")
            self.sym(")")
            corr = None
            if self.accept(IDENT, "with"):
                self.sym("{")
                corr = []
                if not self.at(SYM, "}"):
                    while True:
                        a = self.ident("symbol")
                        self.sym("->")
                        corr.append((a, self.ident("symbol")))
                        if not self.accept(SYM, ","):
                            break
                self.sym("}")
                corr = tuple(corr)
            return A.StructuralDecl(name, (d1, t1), (d2, t2), corr, self.span_from(start))
        raise ParseError("expected 'semantic' or 'structural'", self.tok.span)

    # --- formulas and terms

    def formula(self, min_prec: int = 1) -> A.RFormula:
        start = self.tok.span
        left = self.unary()
        while self.tok.kind == SYM and self.tok.value in BINARY:
            op = self.tok.value
            prec = BINARY[op]
            if prec < min_prec:
                break
            self.advance()
            right_assoc = op in ("->", "<->")
            right = self.formula(prec if right_assoc else prec + 1)
            left = A.RBin(op, left, right, self.span_from(start))
        return left

    def unary(self) -> A.RFormula:
        start = self.tok.span
        if self.accept(SYM, "~"):
            return A.RNot(self.unary(), self.span_from(start))
        if self.at_kw("forall") or self.at_kw("exists"):
            kind = self.advance().value
            binders = tuple((v.name, s.name) for v, s in self.binders())
            self.sym(".")
            body = self.formula()
            return A.RQuant(kind, binders, body, self.span_from(start))
        if self.accept(IDENT, "true"):
            return A.RConst(True, self.span_from(start))
        if self.accept(IDENT, "false"):
            return A.RConst(False, self.span_from(start))
        if self.accept(SYM, "("):
            f = self.formula()
            self.sym(")")
            return f
        t = self.term()
        if self.accept(SYM, "="):
            r = self.term()
            return A.REq(t, r, self.span_from(start))
        return A.RAtom(t, t.span)

    def term(self) -> A.RName:
        start = self.tok.span
        name = self.expect(IDENT, what="a term").value
        args = None
        if self.accept(SYM, "("):
            args = [self.term()]
            while self.accept(SYM, ","):
                args.append(self.term())
            self.sym(")")
            args = tuple(args)
        return A.RName(name, args, self.span_from(start))


def parse_text(text: str, file: str = "<input>") -> tuple[A.Ast, list[Diagnostic]]:
    tokens, diags = tokenize(text, file)
    decls, more = Parser(tokens).parse_file()
    return A.Ast(tuple(decls)), diags + more


def parse(files: Iterable[tuple[str, str]]) -> tuple[A.Ast, list[Diagnostic]]:
    """Parse ``(path, text)`` pairs into one merged Ast, in the given order."""
    ast = A.Ast()
    diags: list[Diagnostic] = []
    for path, text in files:
        a, d = parse_text(text, path)
        ast = ast + a
        diags.extend(d)
    return ast, diags


def parse_formula(text: str, file: str = "<formula>") -> A.RFormula:
    tokens, diags = tokenize(text, file)
    if diags:
        raise ParseError(diags[0].message, diags[0].span)
    p = Parser(tokens)
    f = p.formula()
    if not p.at(EOF):
        raise ParseError(f"unexpected {p.tok.value!r} after formula", p.tok.span)
    return f
