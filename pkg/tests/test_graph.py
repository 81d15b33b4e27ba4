"""The theory graph store and its queries."""
import pytest

from tgc import graph as G
from tgc import morphism as mo
from tgc.kernel import App, Eq, Forall, Implies, Var, alpha_eq
from tgc.theory import Theory, Transported


def test_add_theory_and_morphism(g):
    small = G.TheoryGraph().add_theory(g.theory("Monoid")).add_theory(g.theory("Ring"))
    one = small.add_morphism(g.morphism("AddMon"))
    assert list(one.morphisms) == ["AddMon"]
    two = one.add_morphism(g.morphism("MulMon"))
    assert [m.id for m in two.incoming("Ring")] == ["AddMon", "MulMon"]
    with pytest.raises(G.DanglingEndpoint):
        G.TheoryGraph().add_theory(g.theory("Monoid")).add_morphism(g.morphism("AddMon"))
    with pytest.raises(G.DuplicateId):
        one.add_morphism(g.morphism("AddMon"))
    with pytest.raises(G.DuplicateId):
        small.add_theory(g.theory("Ring"))


def test_backward_reach(g):
    ring = G.backward_reach(g, "Ring", 1)
    assert [(s, p.edges) for s, p in ring] == [("Monoid", ("AddMon",)), ("Monoid", ("MulMon",))]
    assert G.backward_reach(g, "Monoid", 3) == []
    ints = [(s, p.edges) for s, p in G.backward_reach(g, "Int", 2)]
    assert ("Monoid", ("AddMon", "RingToInt")) in ints
    with pytest.raises(G.UnknownTheory):
        G.backward_reach(g, "NoSuch", 1)


def test_backward_reach_invariants(g):
    for target in g.theories:
        previous = []
        for depth in range(1, 5):
            found = G.backward_reach(g, target, depth)
            for src, path in found:
                ms = [g.morphism(e) for e in path.edges]
                assert ms[0].source == src and ms[-1].target == target
                assert all(a.target == b.source for a, b in zip(ms, ms[1:]))
                assert len(set(path.edges)) == len(path.edges) <= depth
            assert [p.edges for _, p in previous] == [p.edges for _, p in found][: len(previous)]
            keys = [(len(p.edges), p.edges) for _, p in found]
            assert keys == sorted(keys)
            previous = found


def test_backward_reach_terminates_on_cycles(g):
    paths = G.backward_reach(g, "CommMonoidA", 6)
    assert [p.edges for _, p in paths] == [("BtoA",), ("AtoB", "BtoA")]


def _hand(fn, unit, sort):
    u, x = Var("u", sort), Var("x", sort)
    return Forall("u", sort, Implies(Forall("x", sort, Eq(App(fn, (u, x)), x)), Eq(u, App(unit))))


def test_transport(g):
    res = G.transport(g, "Monoid", "id_unique", G.make_path(g, ["AddMon"]))
    assert alpha_eq(res.formula, _hand("add", "zero", "R"))
    assert res.name == "id_unique_AddMon" and res.duplicate_of is None
    prov = res.theory.theorems[res.name].provenance
    assert prov == Transported("Monoid", "id_unique", ("AddMon",))
    g2 = res.graph
    res2 = G.transport(g2, "Monoid", "id_unique", G.make_path(g2, ["MulMon"]))
    assert alpha_eq(res2.formula, _hand("mul", "one", "R"))
    again = G.transport(res2.graph, "Monoid", "id_unique", G.make_path(g2, ["AddMon"]), name="other")
    assert again.duplicate_of == "id_unique_AddMon" and again.graph is res2.graph
    assert G.recheck_transported(res2.graph, "Ring", "id_unique_AddMon")
    # only the target theory changed
    for tid, t in g.theories.items():
        if tid != "Ring":
            assert res2.graph.theory(tid) is t


def test_transport_errors(g, bad):
    with pytest.raises(G.UnknownTheorem):
        G.transport(g, "Monoid", "nope", G.make_path(g, ["AddMon"]))
    with pytest.raises(G.PathMismatch):
        G.transport(g, "Ring", "add_idl", G.make_path(g, ["AddMon"]))
    with pytest.raises(G.PathMismatch):
        G.make_path(g, ["RingToInt", "AddMon"])
    gb = bad.graph
    with pytest.raises(G.UnverifiedPath):
        G.transport(gb, "Monoid", "id_unique", G.make_path(gb, ["BadMon"]))
    res = G.transport(gb, "Monoid", "id_unique", G.make_path(gb, ["BadMon"]), allow_partial=True)
    assert res.flagged and res.theory.theorems[res.name].provenance.partial


def test_instances_of(g):
    assert sorted(G.instances_of(g, "Monoid")) == ["CommMonoid", "Ring", "Ring"]
    assert G.instances_of(g, "Int") == []
    assert G.instances_of(g, "Ring") == ["Int"]


def test_realm_candidates(g, bad):
    assert G.realm_candidates(g) == [("CommMonoidA", "CommMonoidB", "AtoB", "BtoA")]
    assert G.realm_candidates(bad.graph) == G.realm_candidates(g)
    # drop the proof for one direction: the pair disappears
    ab = g.morphism("AtoB")
    weak = mo.discharge_in(ab, "idl", mo.Pending(), g.theory("CommMonoidB"))
    assert G.realm_candidates(g.update_morphism(weak)) == []
    # the same graph built in another order reports the same pair
    rebuilt = G.TheoryGraph()
    for t in reversed(list(g.theories.values())):
        rebuilt = rebuilt.add_theory(t)
    for m in reversed(list(g.morphisms.values())):
        rebuilt = rebuilt.add_morphism(m)
    assert G.realm_candidates(rebuilt) == G.realm_candidates(g)


def test_graph_values_are_read_only(g):
    with pytest.raises(TypeError):
        g.theories["X"] = Theory("X", g.theory("Monoid").signature)
