"""Cross checks between proofs and theorems of a theory graph.

A structural check compares two proofs by rule skeleton and asks their
conclusions to agree under a bijective renaming of symbols.  A semantic check
translates a statement along a morphism path and asks for the expected
statement to follow from the image in the target theory.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .graph import (
    GraphError,
    TheoryGraph,
    UnknownDerivation,
    make_path,
)
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
    Term,
    Top,
    Var,
    alpha_eq,
    check_derivation,
    format_formula,
)
from .morphism import Assumed as AssumedObligation
from .morphism import MorphismError, translate_formula
from .theory import TheoryError, check_statement


class CrossCheckError(Exception):
    code = "E-CROSSCHECK"


class IllFormedCheck(CrossCheckError):
    code = "E-ILL-FORMED"


SUCCESS, FAILURE, PENDING = "success", "failure", "pending"


@dataclass(frozen=True)
class StructuralCheck:
    id: str
    proof1: tuple[str, str]  # (theory id, derivation id)
    proof2: tuple[str, str]
    correspondence: Mapping[str, str] | None = None


@dataclass(frozen=True)
class SemanticCheck:
    id: str
    a1: tuple[str, Formula]
    a2: tuple[str, Formula]
    via: tuple[str, ...]
    witness: str | None = None
    # name under which the witness may cite the translated statement as "via:<name>"
    a1_name: str = "A1"


CrossCheck = Union[StructuralCheck, SemanticCheck]


@dataclass(frozen=True)
class CheckOutcome:
    id: str
    kind: str
    status: str
    reason: str = ""
    locus: str = ""
    details: Mapping[str, object] = field(default_factory=dict)
    assumed: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "status": self.status,
            "reason": self.reason,
            "locus": self.locus,
            "details": dict(self.details),
            "assumed": list(self.assumed),
        }


# ---------------------------------------------------------------------------
# skeletons


@dataclass(frozen=True)
class Skeleton:
    rule: str
    children: tuple["Skeleton", ...] = ()

    def __str__(self) -> str:
        if not self.children:
            return self.rule
        return f"{self.rule}({', '.join(map(str, self.children))})"


def skeleton(d: Derivation) -> Skeleton:
    return Skeleton(d.rule, tuple(skeleton(p) for p in d.premises))


def first_divergence(a: Skeleton, b: Skeleton, path: tuple[int, ...] = ()):
    """``(path, node_a, node_b)`` for the first differing node, or None."""
    if a.rule != b.rule or len(a.children) != len(b.children):
        return path, a, b
    for i, (x, y) in enumerate(zip(a.children, b.children)):
        hit = first_divergence(x, y, path + (i,))
        if hit is not None:
            return hit
    return None


def format_path(path: tuple[int, ...]) -> str:
    return "root" + "".join(f".{i}" for i in path)


# ---------------------------------------------------------------------------
# symbol correspondence


class _NoMatch(Exception):
    def __init__(self, locus: str):
        super().__init__(locus)
        self.locus = locus


class _Correspondence:
    """Bijective, incrementally built maps between symbols of two theories."""

    def __init__(self):
        self.fwd: dict[tuple[str, str], str] = {}
        self.bwd: dict[tuple[str, str], str] = {}

    def bind(self, kind: str, a: str, b: str) -> bool:
        have = self.fwd.get((kind, a))
        if have is not None:
            return have == b
        if (kind, b) in self.bwd:
            return False
        self.fwd[(kind, a)] = b
        self.bwd[(kind, b)] = a
        return True

    def as_dict(self) -> dict[str, str]:
        return {a: b for (_, a), b in sorted(self.fwd.items())}


def _match_term(c: _Correspondence, s: Term, t: Term, ea: dict, eb: dict) -> bool:
    match s, t:
        case Var(x, sx), Var(y, sy):
            if not c.bind("sort", sx, sy):
                return False
            lx, ly = ea.get(x), eb.get(y)
            return x == y if lx is None and ly is None else lx == ly
        case App(f, fa), App(g, ga):
            return (
                len(fa) == len(ga)
                and c.bind("func", f, g)
                and all(_match_term(c, p, q, ea, eb) for p, q in zip(fa, ga))
            )
    return False


def _match(c: _Correspondence, a: Formula, b: Formula, ea: dict, eb: dict, depth: int) -> None:
    def fail():
        raise _NoMatch(f"{format_formula(a)}  vs  {format_formula(b)}")

    if type(a) is not type(b):
        fail()
    match a:
        case Pred(name, args):
            if not (
                len(args) == len(b.args)
                and c.bind("pred", name, b.name)
                and all(_match_term(c, p, q, ea, eb) for p, q in zip(args, b.args))
            ):
                fail()
        case Eq(l, r):
            if not (_match_term(c, l, b.left, ea, eb) and _match_term(c, r, b.right, ea, eb)):
                fail()
        case Top() | Bot():
            pass
        case Not(body):
            _match(c, body, b.body, ea, eb, depth)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            _match(c, l, b.left, ea, eb, depth)
            _match(c, r, b.right, ea, eb, depth)
        case Forall(x, s, body) | Exists(x, s, body):
            if not c.bind("sort", s, b.sort):
                fail()
            _match(c, body, b.body, {**ea, x: depth}, {**eb, b.var: depth}, depth + 1)


def match_conclusions(
    f1: Formula, f2: Formula, sig1, declared: Mapping[str, str] | None = None
) -> tuple[bool, dict[str, str] | str]:
    """Find a bijective symbol map (extending ``declared``) sending f1 onto f2.

    Returns ``(True, map)`` or ``(False, locus)``.
    """
    c = _Correspondence()
    for a, b in (declared or {}).items():
        if a in sig1.sorts:
            kind = "sort"
        elif a in sig1.functions:
            kind = "func"
        elif a in sig1.predicates:
            kind = "pred"
        else:
            raise IllFormedCheck(f"{a!r} in the correspondence is not a symbol of the first theory")
        if not c.bind(kind, a, b):
            raise IllFormedCheck(f"declared correspondence is not injective at {a!r}")
    try:
        _match(c, f1, f2, {}, {}, 0)
    except _NoMatch as e:
        return False, e.locus
    return True, c.as_dict()


# ---------------------------------------------------------------------------
# running checks


def _check_proof(g: TheoryGraph, theory: str, ref: str):
    nd = g.derivation(ref)
    if nd.theory != theory:
        raise IllFormedCheck(f"derivation {ref} belongs to {nd.theory}, not {theory}")
    t = g.theory(theory)
    return t, nd.derivation, check_derivation(t.signature, t.axioms, nd.derivation)


def structural_run(c: StructuralCheck, g: TheoryGraph) -> CheckOutcome:
    def failure(reason, locus=""):
        return CheckOutcome(c.id, "structural", FAILURE, reason, locus)

    sides = []
    for label, (theory, ref) in (("P1", c.proof1), ("P2", c.proof2)):
        try:
            sides.append(_check_proof(g, theory, ref))
        except KernelError as e:
            return failure(f"{label} ({ref}) does not check: {e}", getattr(e, "step_id", ""))
        if sides[-1][2].hypotheses:
            return failure(f"{label} ({ref}) leaves hypotheses open")
    (t1, d1, seq1), (t2, d2, seq2) = sides
    hit = first_divergence(skeleton(d1), skeleton(d2))
    if hit is not None:
        path, n1, n2 = hit
        return failure(
            f"skeleton divergence: {n1.rule}/{len(n1.children)} vs {n2.rule}/{len(n2.children)}",
            format_path(path),
        )
    ok, found = match_conclusions(seq1.conclusion, seq2.conclusion, t1.signature, c.correspondence)
    if not ok:
        return failure("conclusions do not correspond", found)
    return CheckOutcome(c.id, "structural", SUCCESS, details={"correspondence": found})


def _path_assumptions(g: TheoryGraph, via) -> tuple[str, ...]:
    out = []
    for mid in via:
        for o in g.morphism(mid).obligations:
            if isinstance(o.status, AssumedObligation):
                out.append(f"{mid}.{o.axiom_name}")
    return tuple(out)


def semantic_run(c: SemanticCheck, g: TheoryGraph) -> CheckOutcome:
    (t1_id, a1), (t2_id, a2) = c.a1, c.a2
    t1, t2 = g.theory(t1_id), g.theory(t2_id)
    path = make_path(g, c.via)
    if path.source != t1_id or path.target != t2_id:
        raise IllFormedCheck(f"via path runs {path.source} -> {path.target}, not {t1_id} -> {t2_id}")
    try:
        check_statement(t1, a1)
        check_statement(t2, a2)
    except TheoryError as e:
        raise IllFormedCheck(str(e)) from e
    assumed = _path_assumptions(g, c.via)
    image = translate_formula(path.composite.assignment, a1)
    details = {"image": format_formula(image)}

    def outcome(status, reason="", locus=""):
        return CheckOutcome(c.id, "semantic", status, reason, locus, details, assumed)

    if alpha_eq(image, a2):
        return outcome(SUCCESS)
    if c.witness is None:
        return outcome(PENDING, "no witness derivation supplied")
    nd = g.derivation(c.witness)
    if nd.theory != t2_id:
        raise IllFormedCheck(f"witness {c.witness} belongs to {nd.theory}, not {t2_id}")
    axioms = {**t2.axioms, "via:A1": image, f"via:{c.a1_name}": image}
    try:
        seq = check_derivation(t2.signature, axioms, nd.derivation)
    except KernelError as e:
        return outcome(FAILURE, f"witness does not check: {e}", getattr(e, "step_id", ""))
    if seq.hypotheses:
        return outcome(FAILURE, "witness leaves hypotheses open", format_formula(seq.hypotheses[0]))
    if not alpha_eq(seq.conclusion, a2):
        return outcome(FAILURE, "witness proves a different formula", format_formula(seq.conclusion))
    return outcome(SUCCESS)


def run_check(c: CrossCheck, g: TheoryGraph) -> CheckOutcome:
    kind = "structural" if isinstance(c, StructuralCheck) else "semantic"
    try:
        if isinstance(c, StructuralCheck):
            return structural_run(c, g)
        return semantic_run(c, g)
    except (CrossCheckError, GraphError, MorphismError, KernelError) as e:
        return CheckOutcome(c.id, kind, FAILURE, f"{type(e).__name__}: {e}")


@dataclass(frozen=True)
class CheckReport:
    outcomes: tuple[CheckOutcome, ...] = ()

    def count(self, status: str) -> int:
        return sum(o.status == status for o in self.outcomes)

    @property
    def counts(self) -> dict[str, int]:
        return {s: self.count(s) for s in (SUCCESS, FAILURE, PENDING)}

    def get(self, id: str) -> CheckOutcome:
        for o in self.outcomes:
            if o.id == id:
                return o
        raise KeyError(id)


def run_all(g: TheoryGraph, checks: Iterable[CrossCheck]) -> CheckReport:
    """Run every check against the snapshot ``g``; outcomes ordered by id."""
    ordered = sorted(checks, key=lambda c: c.id)
    return CheckReport(tuple(run_check(c, g) for c in ordered))


__all__ = [
    "StructuralCheck",
    "SemanticCheck",
    "CheckOutcome",
    "CheckReport",
    "Skeleton",
    "skeleton",
    "structural_run",
    "semantic_run",
    "run_all",
    "run_check",
    "match_conclusions",
    "UnknownDerivation",
    "IllFormedCheck",
    "SUCCESS",
    "FAILURE",
    "PENDING",
]
