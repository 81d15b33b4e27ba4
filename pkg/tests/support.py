"""Shared corpus loading, derivation surgery and hypothesis strategies."""
from __future__ import annotations

from pathlib import Path

from hypothesis import strategies as st

from tgc.frontend import elaborate, load
from tgc.kernel import (
    BOT,
    TOP,
    And,
    App,
    Eq,
    Exists,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Step,
    Var,
)

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
DATA = ROOT / "tests" / "data"
BAD = DATA / "bad"
ERRORS = DATA / "errors"
NOWITNESS = DATA / "nowitness"


def build(*paths):
    ast, diags, _ = load([str(p) for p in paths])
    assert not diags, [str(d) for d in diags]
    return elaborate(ast)


# --- derivation surgery


def rebuild(root: Step, target: str, change) -> Step:
    """Copy ``root`` with the step ``target`` replaced by ``change(step)``."""
    memo: dict[int, Step] = {}

    def go(s: Step) -> Step:
        if id(s) not in memo:
            prem = tuple(go(p) for p in s.premises)
            new = Step(s.id, s.rule, prem, s.params, s.conclusion, s.hypotheses)
            memo[id(s)] = change(new) if s.id == target else new
        return memo[id(s)]

    return go(root)


def with_(s: Step, **kw) -> Step:
    fields = dict(id=s.id, rule=s.rule, premises=s.premises, params=s.params,
                  conclusion=s.conclusion, hypotheses=s.hypotheses)
    fields.update(kw)
    return Step(**fields)


# --- Monoid expressions

VARS = ("x", "y", "z", "u")


def monoid_terms(names=VARS, sort="M", unit="e", op="op"):
    leaves = st.sampled_from([Var(n, sort) for n in names] + [App(unit)])
    return st.recursive(leaves, lambda t: st.tuples(t, t).map(lambda p: App(op, p)), max_leaves=6)


def monoid_formulas(names=VARS, sort="M", unit="e", op="op"):
    """Formulas over the Monoid signature, free variables among ``names``."""
    terms = monoid_terms(names, sort, unit, op)
    atoms = st.one_of(
        st.tuples(terms, terms).map(lambda p: Eq(*p)),
        st.sampled_from([TOP, BOT]),
    )

    def extend(f):
        bin_ = st.tuples(f, f)
        return st.one_of(
            f.map(Not),
            bin_.map(lambda p: And(*p)),
            bin_.map(lambda p: Or(*p)),
            bin_.map(lambda p: Implies(*p)),
            bin_.map(lambda p: Iff(*p)),
            st.tuples(st.sampled_from(names), f).map(lambda p: Forall(p[0], sort, p[1])),
            st.tuples(st.sampled_from(names), f).map(lambda p: Exists(p[0], sort, p[1])),
        )

    return st.recursive(atoms, extend, max_leaves=8)


def closed_substitutions(names=VARS):
    """Maps from variables to closed or variable-bearing Monoid terms."""
    return st.dictionaries(st.sampled_from(names), monoid_terms(), max_size=3)


def random_formulas(n: int, seed: int = 0, names=VARS, sort="M", unit="e", op="op"):
    """A reproducible batch of Monoid formulas, for tests that count examples."""
    import random

    from tgc.kernel import BOT, TOP, And, Eq, Exists, Forall, Iff, Implies, Not, Or

    rng = random.Random(seed)

    def term(depth):
        if depth == 0 or rng.random() < 0.4:
            return rng.choice([Var(v, sort) for v in names] + [App(unit)])
        return App(op, (term(depth - 1), term(depth - 1)))

    def formula(depth):
        if depth == 0 or rng.random() < 0.25:
            return rng.choice([TOP, BOT]) if rng.random() < 0.1 else Eq(term(3), term(3))
        k = rng.randrange(7)
        if k == 0:
            return Not(formula(depth - 1))
        if k <= 4:
            return (And, Or, Implies, Iff)[k - 1](formula(depth - 1), formula(depth - 1))
        return (Forall, Exists)[k - 5](rng.choice(names), sort, formula(depth - 1))

    return [formula(4) for _ in range(n)]
