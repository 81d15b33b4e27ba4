"""Morphisms: translation, obligations, discharge, composition, inclusions."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import VARS, monoid_formulas, monoid_terms, random_formulas
from tgc import morphism as mo
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
    Pred,
    Signature,
    Step,
    Var,
    alpha_eq,
    substitute,
    wf_formula,
)
from tgc.theory import DerivationMismatch, Theory, add_axiom

x = Var("x", "M")
e = App("e")


def op(a, b):
    return App("op", (a, b))


# hand-written translation along AddMon: M to R, e to zero, op to add
def addmon_term(t):
    match t:
        case Var(n, "M"):
            return Var(n, "R")
        case App("e", ()):
            return App("zero")
        case App("op", (a, b)):
            return App("add", (addmon_term(a), addmon_term(b)))
    raise AssertionError(t)


def addmon(f):
    match f:
        case Eq(l, r):
            return Eq(addmon_term(l), addmon_term(r))
        case Not(b):
            return Not(addmon(b))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(f)(addmon(l), addmon(r))
        case Forall(v, "M", b) | Exists(v, "M", b):
            return type(f)(v, "R", addmon(b))
    return f


def distributes(a: mo.Assignment, f) -> bool:
    """translate(f) has f's outer connective, applied to the translated parts."""
    img = mo.translate_formula(a, f)
    match f:
        case Not(b):
            return img == Not(mo.translate_formula(a, b)) and distributes(a, b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return (
                img == type(f)(mo.translate_formula(a, l), mo.translate_formula(a, r))
                and distributes(a, l)
                and distributes(a, r)
            )
        case Forall(v, s, b) | Exists(v, s, b):
            return img == type(f)(v, a.sort_map[s], mo.translate_formula(a, b)) and distributes(a, b)
        case Eq(l, r):
            return img == Eq(mo.translate_term(a, l), mo.translate_term(a, r))
    return img == f


RING_CTX = {v: "R" for v in VARS}


def test_translate_examples(g):
    addmon_m, mulmon = g.morphism("AddMon"), g.morphism("MulMon")
    a = addmon_m.assignment
    assert mo.translate_term(a, op(e, x)) == App("add", (App("zero"), Var("x", "R")))
    assert mo.translate_term(a, x) == Var("x", "R")
    assert mo.translate_formula(a, TOP) == TOP
    idl = g.theory("Monoid").axioms["idl"]
    assert alpha_eq(mo.translate_formula(a, idl), Forall("x", "R", Eq(App("add", (App("zero"), Var("x", "R"))), Var("x", "R"))))
    assert alpha_eq(mo.translate_formula(mulmon.assignment, idl), Forall("x", "R", Eq(App("mul", (App("one"), Var("x", "R"))), Var("x", "R"))))
    ident = mo.identity_assignment(g.theory("Monoid").signature)
    assert mo.translate_term(ident, op(op(e, x), x)) == op(op(e, x), x)


def test_unmapped_symbols_are_rejected(g):
    partial = mo.Assignment({"M": "R"}, {"e": mo.SymbolImage((), App("zero"))})
    with pytest.raises(mo.UnmappedSymbol):
        mo.translate_term(partial, op(e, e))
    with pytest.raises(mo.UnmappedSymbol):
        mo.make_morphism("P", g.theory("Monoid"), g.theory("Ring"), partial)


def test_ill_typed_assignments(g):
    mon, ring = g.theory("Monoid"), g.theory("Ring")
    p1, p2 = Var("p1", "R"), Var("p2", "R")
    wrong_arity = mo.Assignment({"M": "R"}, {"e": mo.SymbolImage((), App("zero")), "op": mo.SymbolImage((p1,), p1)})
    with pytest.raises(mo.IllTypedAssignment):
        mo.make_morphism("W", mon, ring, wrong_arity)
    free = mo.Assignment({"M": "R"}, {"e": mo.SymbolImage((), Var("q", "R")), "op": mo.SymbolImage((p1, p2), App("add", (p1, p2)))})
    with pytest.raises(mo.IllTypedAssignment):
        mo.make_morphism("F", mon, ring, free)


@settings(max_examples=300, deadline=None)
@given(monoid_formulas())
def test_homomorphism_property(g, f):
    a = g.morphism("AddMon").assignment
    assert mo.translate_formula(a, f) == addmon(f)
    assert distributes(a, f)
    wf_formula(g.theory("Ring").signature, RING_CTX, mo.translate_formula(a, f))


def test_homomorphism_on_a_fixed_batch(g):
    a = g.morphism("AddMon").assignment
    batch = random_formulas(500, seed=1)
    assert all(mo.translate_formula(a, f) == addmon(f) and distributes(a, f) for f in batch)


@settings(max_examples=200, deadline=None)
@given(monoid_formulas(), st.dictionaries(st.sampled_from(VARS), monoid_terms(), max_size=3))
def test_translation_commutes_with_substitution(g, f, s):
    a = g.morphism("AddMon").assignment
    lhs = mo.translate_formula(a, substitute(f, s))
    rhs = substitute(mo.translate_formula(a, f), {v: mo.translate_term(a, t) for v, t in s.items()})
    assert alpha_eq(lhs, rhs)


# --- predicate images and capture


def _orders():
    src = Theory("Preorder", Signature(("P",), {}, {"le": ("P", "P")}))
    tgt = Theory("Additive", Signature(("N",), {"add": (("N", "N"), "N")}, {}))
    p1, p2, z = Var("p1", "N"), Var("p2", "N"), Var("z", "N")
    le = mo.SymbolImage((p1, p2), Exists("z", "N", Eq(App("add", (p1, z)), p2)))
    return src, tgt, mo.Assignment({"P": "N"}, {}, {"le": le})


def test_predicate_images_avoid_capture():
    src, tgt, a = _orders()
    m = mo.make_morphism("Ord", src, tgt, a)
    zp, xp = Var("z", "P"), Var("x", "P")
    f = Forall("z", "P", Pred("le", (zp, xp)))
    out = mo.translate_formula(m.assignment, f)
    zn, xn = Var("z", "N"), Var("x", "N")
    want = Forall("z", "N", Exists("w", "N", Eq(App("add", (zn, Var("w", "N"))), xn)))
    assert alpha_eq(out, want)
    wf_formula(tgt.signature, {"x": "N"}, out)


# --- obligations


def test_obligations_of_the_corpus(g):
    for mid, prefix in (("AddMon", "add_"), ("MulMon", "mul_")):
        m = g.morphism(mid)
        assert [o.axiom_name for o in m.obligations] == ["assoc", "idl", "idr"]
        assert [o.status for o in m.obligations] == [mo.ByAxiom(prefix + n) for n in ("assoc", "idl", "idr")]
        assert mo.verify(m).verified


def test_obligations_from_the_empty_theory():
    empty = Theory("Empty", Signature())
    m = mo.make_morphism("E", empty, empty, mo.Assignment())
    assert m.obligations == ()


def test_badmon(bad):
    m = bad.graph.morphism("BadMon")
    assert mo.status_name(m.obligation("assoc").status) == "pending"
    assert str(mo.verify(m)) == "PartiallyVerified([assoc])"


def test_discharge(g, bad):
    ring = g.theory("Ring")
    pending = mo.Obligation("assoc", g.morphism("AddMon").obligation("assoc").translated)
    assert mo.discharge(pending, mo.ByAxiom("add_assoc"), ring).status == mo.ByAxiom("add_assoc")
    assumed = mo.discharge(pending, mo.Assumed("trusted import"), ring)
    assert isinstance(assumed.status, mo.Assumed)
    with pytest.raises(mo.AxiomNotAlphaEqual):
        mo.discharge(pending, mo.ByAxiom("add_comm"), ring)
    with pytest.raises(mo.NoSuchAxiom):
        mo.discharge(pending, mo.ByAxiom("nope"), ring)
    wrong = g.derivation("d_add_id").derivation
    with pytest.raises(DerivationMismatch):
        mo.discharge(pending, mo.Proved("d_add_id", wrong), ring)
    badmon = bad.graph.morphism("BadMon")
    m = mo.discharge_in(badmon, "assoc", mo.Assumed("trusted import"), bad.graph.theory("UnitalMagma"))
    assert str(mo.verify(m)) == "PartiallyVerified([assoc])"


def test_discharged_obligations_recheck(corpus):
    from tgc.kernel import check_derivation

    for m in corpus.graph.morphisms.values():
        tgt = corpus.graph.theory(m.target)
        for o in m.obligations:
            match o.status:
                case mo.ByAxiom(name):
                    assert alpha_eq(tgt.axioms[name], o.translated)
                case mo.Proved(_, d):
                    seq = check_derivation(tgt.signature, tgt.axioms, d)
                    assert seq.hypotheses == () and alpha_eq(seq.conclusion, o.translated)


# --- composition


def test_compose_example(g):
    c = mo.compose(g.morphism("AddMon"), g.morphism("RingToInt"))
    assert c.id == "AddMon;RingToInt" and (c.source, c.target) == ("Monoid", "Int")
    assert c.assignment.func_map["e"].body == App("zeroZ")
    p1, p2 = Var("p1", "Z"), Var("p2", "Z")
    assert c.assignment.func_map["op"].apply((p1, p2)) == App("addZ", (p1, p2))
    assert all(isinstance(o.status, mo.ByComposition) for o in c.obligations)
    assert mo.verify(c).verified
    with pytest.raises(mo.TheoryMismatch):
        mo.compose(g.morphism("RingToInt"), g.morphism("AddMon"))


def test_compose_with_unverified_part_is_pending(bad):
    gb = bad.graph
    ident = mo.identity_morphism(gb.theory("Monoid"))
    c = mo.compose(ident, gb.morphism("BadMon"))
    assert all(isinstance(o.status, mo.Pending) for o in c.obligations)


def test_compose_with_an_inclusion(g):
    inc, addm = g.morphism("MonoidInComm"), g.morphism("AddMon")
    assert mo.is_inclusion(inc, g.theory("Monoid"), g.theory("CommMonoid"))
    ident = mo.identity_morphism(g.theory("Monoid"))
    assert mo.assignments_alpha_equal(mo.compose(ident, addm).assignment, addm.assignment)


CHAINS = [("AddMon", "RingToInt"), ("MulMon", "RingToInt")]


@settings(max_examples=200, deadline=None)
@given(monoid_formulas(), st.sampled_from(CHAINS))
def test_composition_coherence(g, f, chain):
    m1, m2 = (g.morphism(i) for i in chain)
    c = mo.compose(m1, m2)
    twice = mo.translate_formula(m2.assignment, mo.translate_formula(m1.assignment, f))
    assert alpha_eq(mo.translate_formula(c.assignment, f), twice)


def test_associativity_and_identity(g):
    ident = mo.identity_morphism(g.theory("Monoid"))
    id_int = mo.identity_morphism(g.theory("Int"))
    a, b, c = g.morphism("AddMon"), g.morphism("RingToInt"), id_int
    for x1, x2, x3 in ((ident, a, b), (a, b, c)):
        left = mo.compose(mo.compose(x1, x2), x3)
        right = mo.compose(x1, mo.compose(x2, x3))
        assert mo.assignments_alpha_equal(left.assignment, right.assignment)
        assert left.id == right.id
    for m in (a, g.morphism("MulMon")):
        id_r = mo.identity_morphism(g.theory("Ring"))
        assert mo.assignments_alpha_equal(mo.compose(ident, m).assignment, m.assignment)
        assert mo.assignments_alpha_equal(mo.compose(m, id_r).assignment, m.assignment)


def test_inclusions(g):
    th = g.theories
    assert mo.is_inclusion(g.morphism("MonoidInComm"), th["Monoid"], th["CommMonoid"])
    assert not mo.is_inclusion(g.morphism("AddMon"), th["Monoid"], th["Ring"])
    assert mo.is_inclusion(mo.identity_morphism(th["Ring"]), th["Ring"], th["Ring"])
    # identity symbols but the target lacks idl: not an inclusion
    assert not mo.is_inclusion(g.morphism("BtoA"), th["CommMonoidB"], th["CommMonoidA"])
