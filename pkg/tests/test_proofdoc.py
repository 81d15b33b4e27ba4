"""Flexiformal proof documents."""
from dataclasses import replace
from fractions import Fraction

import pytest

from tgc import crosscheck as cc
from tgc import proofdoc as pd
from tgc.kernel import App, Eq, Var, alpha_member
from tgc.theory import Derived, Theory


def test_id_unique_doc(corpus):
    doc = corpus.docs["id_unique_doc"]
    r = pd.check_doc(doc, corpus.graph, corpus.checks)
    assert (r.thm_status, r.coverage, r.gaps) == (pd.ESTABLISHED, Fraction(1, 3), ())
    assert r.cc_report.counts[cc.SUCCESS] == 2
    for o in r.cc_report.outcomes:
        assert o == cc.run_all(corpus.graph, [corpus.checks[o.id]]).outcomes[0]


def test_formal_step_removed(corpus, bad):
    doc = corpus.docs["id_unique_doc"]
    cut = replace(doc, arg=tuple(s for s in doc.arg if not isinstance(s, pd.Formal)))
    r = pd.check_doc(cut, corpus.graph, corpus.checks)
    assert r.thm_status == pd.FLEXIFORMAL and r.coverage == 0
    claims = [s.claimed for s in doc.arg if isinstance(s, pd.Informal)]
    assert [gp.formula for gp in r.gaps if gp.index is not None] == claims
    with pytest.raises(pd.NotEstablished):
        pd.promote(cut, corpus.graph, corpus.checks)
    # the same document written in source
    r2 = pd.check_doc(bad.docs["id_unique_informal"], bad.graph, bad.checks)
    assert r2.gaps == r.gaps


def test_ill_formed_theorem(corpus):
    doc = replace(corpus.docs["e_idem_doc"], thm=Eq(App("op", (App("e"), Var("x", "M"))), App("e")))
    with pytest.raises(pd.IllFormedTheorem):
        pd.check_doc(doc, corpus.graph, corpus.checks)


def test_coverage():
    thm = Eq(App("e"), App("e"))
    informal, formal = pd.Informal("prose"), pd.Formal("f", "d")
    assert pd.formal_coverage(pd.ProofDoc("a", "T", thm, (informal, informal, formal))) == Fraction(1, 3)
    assert pd.formal_coverage(pd.ProofDoc("b", "T", thm, (formal,))) == 1
    assert pd.formal_coverage(pd.ProofDoc("c", "T", thm, (informal,))) == 0
    assert pd.formal_coverage(pd.ProofDoc("d", "T", thm)) == 0


def _without_theorem(g, name):
    mon = g.theory("Monoid")
    thms = {k: v for k, v in mon.theorems.items() if k != name}
    return g.update_theory(Theory(mon.id, mon.signature, mon.axioms, thms))


def test_promote(corpus):
    doc = corpus.docs["id_unique_doc"]
    g0 = _without_theorem(corpus.graph, "id_unique")
    g1, mon = pd.promote(doc, g0, corpus.checks)
    assert isinstance(mon.theorems["id_unique"].provenance, Derived)
    g2, _ = pd.promote(doc, g1, corpus.checks)
    assert g2 is g1
    g3, mon3 = pd.promote(corpus.docs["e_idem_doc"], corpus.graph, corpus.checks)
    assert "e_idem" in mon3.theorems


def test_promote_refuses_assumed_content(corpus):
    from tgc import morphism as mo

    g = corpus.graph
    addm = g.morphism("AddMon")
    shaky = mo.discharge_in(addm, "idl", mo.Assumed("trusted import"), g.theory("Ring"))
    g2 = _without_theorem(g.update_morphism(shaky), "id_unique")
    r = pd.check_doc(corpus.docs["id_unique_doc"], g2, corpus.checks)
    assert r.established and r.flags
    with pytest.raises(pd.AssumedContent):
        pd.promote(corpus.docs["id_unique_doc"], g2, corpus.checks)


def test_step_citations_chain_fragments(corpus):
    from tgc.kernel import Step

    g = corpus.graph
    e = App("e")
    ee = Eq(App("op", (e, e)), e)
    # formal fragment citing an informal claim that nothing proves
    cite = Step("c", "axiom", (), ("step:lemma",), ee)
    g2 = g.add_derivation(type(g.derivation("d_e_idem"))("d_cite", "Monoid", cite, None))
    doc = pd.ProofDoc("x", "Monoid", ee, (pd.Informal("by inspection", ee, "lemma"), pd.Formal("f", "d_cite")))
    r = pd.check_doc(doc, g2, {})
    assert r.thm_status == pd.FLEXIFORMAL
    assert any(gp.index == 0 for gp in r.gaps)
    # once the lemma has a formal proof the chain closes
    proof = pd.Formal("lemma", "d_e_idem")
    doc2 = replace(doc, arg=(proof, pd.Formal("f", "d_cite")))
    r2 = pd.check_doc(doc2, g2, {})
    assert r2.established
    g3, mon = pd.promote(replace(doc2, thm_name="ee"), g2, {})
    assert mon.theorems["ee"].provenance.derivation.rule == "forall-elim"


def test_removing_formal_steps_never_lies(corpus):
    for doc in corpus.docs.values():
        for i, st in enumerate(doc.arg):
            if not isinstance(st, pd.Formal):
                continue
            cut = replace(doc, arg=doc.arg[:i] + doc.arg[i + 1:])
            r = pd.check_doc(cut, corpus.graph, corpus.checks)
            if r.thm_status == pd.ESTABLISHED:
                continue
            removed = corpus.graph.derivation(st.derivation).derivation.conclusion
            assert alpha_member(removed, [gp.formula for gp in r.gaps if gp.formula is not None])


def test_established_is_stable(corpus):
    for doc in corpus.docs.values():
        a = pd.check_doc(doc, corpus.graph, corpus.checks)
        b = pd.check_doc(doc, corpus.graph, corpus.checks)
        assert a == b
