"""Mutation soundness: every single-step mutant of a valid derivation is rejected."""
import pytest

from mutants import eigenvariable_mutants, mutants
from tgc.kernel import KernelError, check_derivation

# corpus derivations that prove closed statements outright
CLOSED = ["d_id_unique", "d_e_idem", "d_idl_in_B", "d_idr_in_A", "d_add_id"]


def _axioms(corpus, nd):
    t = corpus.graph.theory(nd.theory)
    axioms = dict(t.axioms)
    if nd.id == "d_idl_special":
        axioms["via:A1"] = corpus.graph.theory("Ring").axioms["add_idl"]
    return t.signature, axioms


def all_mutants(corpus):
    out = []
    for name in CLOSED + ["d_idl_special"]:
        nd = corpus.graph.derivation(name)
        out += mutants(name, nd.derivation) + eigenvariable_mutants(name, nd.derivation)
    return out


@pytest.mark.parametrize("name", CLOSED + ["d_idl_special"])
def test_originals_check(corpus, name):
    nd = corpus.graph.derivation(name)
    seq = check_derivation(*_axioms(corpus, nd), nd.derivation)
    assert seq.hypotheses == ()


def test_enough_mutants_of_every_kind(corpus):
    ms = all_mutants(corpus)
    assert len(ms) >= 20
    assert {m.kind for m in ms} == {"rename", "permute", "parameter", "eigenvariable"}


def test_every_mutant_is_rejected(corpus):
    accepted = []
    for m in all_mutants(corpus):
        nd = corpus.graph.derivation(m.derivation)
        try:
            check_derivation(*_axioms(corpus, nd), m.root)
        except KernelError:
            continue
        accepted.append((m.derivation, m.step, m.kind))
    assert accepted == []


def test_eigenvariable_mutants_fail_for_the_right_reason(corpus):
    from tgc.kernel import EigenvariableViolation

    ms = [m for m in all_mutants(corpus) if m.kind == "eigenvariable"]
    assert ms
    for m in ms:
        nd = corpus.graph.derivation(m.derivation)
        with pytest.raises(EigenvariableViolation):
            check_derivation(*_axioms(corpus, nd), m.root)
