"""Theories as values: axioms, theorems with provenance, extension."""
import pytest

from tgc.kernel import App, Eq, Forall, Signature, Step, Var, alpha_eq
from tgc.theory import (
    Assumed,
    DerivationMismatch,
    Derived,
    DuplicateName,
    DuplicateTheoryId,
    IllFormed,
    OpenFormula,
    Theory,
    add_axiom,
    add_theorem,
    extends,
    is_flagged,
    new_theory,
    recheck_theorem,
)

MON = Signature(("M",), {"e": ((), "M"), "op": (("M", "M"), "M")}, {})
x = Var("x", "M")
e = App("e")


def op(a, b):
    return App("op", (a, b))


def test_new_theory():
    t = new_theory("Monoid", MON)
    assert (t.id, t.logic, dict(t.axioms), dict(t.theorems)) == ("Monoid", "MSFOL", {}, {})
    assert new_theory("Empty", Signature()).signature.sorts == ()
    with pytest.raises(DuplicateTheoryId):
        new_theory("Monoid", MON, taken={"Monoid"})


def test_add_axiom():
    t = new_theory("Monoid", MON)
    y, z = Var("y", "M"), Var("z", "M")
    assoc = Forall("x", "M", Forall("y", "M", Forall("z", "M", Eq(op(op(x, y), z), op(x, op(y, z))))))
    t2 = add_axiom(t, "assoc", assoc)
    assert t2.axioms["assoc"] == assoc and "assoc" not in t.axioms
    with pytest.raises(OpenFormula):
        add_axiom(t, "bad", Eq(op(e, x), x))
    with pytest.raises(DuplicateName):
        add_axiom(t2, "assoc", assoc)
    with pytest.raises(IllFormed):
        add_axiom(t, "ill", Eq(App("inv", (e,)), e))


def test_theorems_and_provenance(corpus):
    mon = corpus.graph.theory("Monoid")
    d = corpus.graph.derivation("d_id_unique").derivation
    stmt = mon.statement("id_unique")
    bare = Theory("Monoid", mon.signature, mon.axioms)
    t = add_theorem(bare, "id_unique", stmt, Derived("d_id_unique", d))
    assert recheck_theorem(t, "id_unique")
    other = Forall("x", "M", Eq(op(e, x), x))
    with pytest.raises(DerivationMismatch):
        add_theorem(bare, "wrong", other, Derived("d_id_unique", d))
    with pytest.raises(DuplicateName):
        add_theorem(t, "idl", other, Assumed("clash with an axiom"))
    conj = add_theorem(bare, "conjecture", Eq(e, e), Assumed("pending"))
    assert is_flagged(conj.theorems["conjecture"].provenance)
    assert not is_flagged(t.theorems["id_unique"].provenance)


def test_derived_theorems_need_closed_derivations(corpus):
    mon = corpus.graph.theory("Monoid")
    h = Step("h", "hypothesis", (), (), Eq(e, e))
    with pytest.raises(DerivationMismatch):
        add_theorem(Theory("Monoid", mon.signature, mon.axioms), "ee", Eq(e, e), Derived("h", h))


def test_extends(corpus):
    th = corpus.graph.theories
    assert extends(th["Monoid"], th["CommMonoid"])
    assert extends(th["Monoid"], th["Monoid"])
    assert not extends(th["CommMonoid"], th["Monoid"])
    assert not extends(th["Monoid"], th["Ring"])


def test_extends_is_a_preorder(corpus):
    ts = list(corpus.graph.theories.values())
    for a in ts:
        assert extends(a, a)
        for b in ts:
            for c in ts:
                if extends(a, b) and extends(b, c):
                    assert extends(a, c)


def test_every_derived_theorem_rechecks(corpus):
    for t in corpus.graph.theories.values():
        for name in t.theorems:
            assert recheck_theorem(t, name)


def test_theories_are_append_only(corpus):
    mon = corpus.graph.theory("Monoid")
    before = dict(mon.axioms)
    add_axiom(mon, "extra", Eq(e, e))
    assert dict(mon.axioms) == before
    with pytest.raises(TypeError):
        mon.axioms["extra"] = Eq(e, e)
    assert alpha_eq(mon.statement("idl"), Forall("y", "M", Eq(op(e, Var("y", "M")), Var("y", "M"))))
