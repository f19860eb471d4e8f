import numpy as np
import pytest

import corpus
from hopflab import builders, gfp, hopf, locality
from hopflab.errors import PreconditionError


def brute_local(H) -> bool:
    """Every element of the augmentation ideal is nilpotent (Wedderburn)."""
    aug = hopf.augmentation_ideal(H)
    return all(H.alg.is_nilpotent_element(v) for v in gfp.all_vectors(H.field, aug.basis))


def note(rep, name):
    return next(c.passed for c in rep.notes if c.name == name)


SMALL = [("truncated", 3), ("witt", 2), ("divided", 2), ("heisenberg", 2), ("cyclic", 2, 4),
         ("cyclic", 2, 3), ("cyclic", 3, 2), ("klein", 2), ("B", 2, 0), ("B", 2, 1),
         ("A", 2, 0, 0, 0), ("A", 2, 1, 0, 1), ("smash", 3), ("smash-trivial", 2), ("dual", "B", 2, 0)]


@pytest.mark.parametrize("key", SMALL, ids=corpus.ids(SMALL))
def test_is_local_matches_enumeration(key):
    H = corpus.build(*key)
    assert locality.is_local(H).is_local == brute_local(H)


def test_is_local_examples():
    k = builders.group_algebra(builders.cyclic_group(1), 3)
    v = locality.is_local(k)
    assert v.is_local and v.nilpotency_index == 1
    assert locality.is_local(corpus.build("cyclic", 5, 5)).is_local
    assert not locality.is_local(corpus.build("B", 3, 0)).is_local


@pytest.mark.parametrize("key", corpus.COCOMMUTATIVE, ids=corpus.ids(corpus.COCOMMUTATIVE))
def test_theorem_a_on_cocommutative(key):
    H = corpus.build(*key)
    r = locality.theorem_a_check(H)
    assert r.cocommutative and r.equivalence_holds and not r.counterexample_flag
    assert r.to_report().overall


@pytest.mark.parametrize("key", corpus.NON_COCOMMUTATIVE, ids=corpus.ids(corpus.NON_COCOMMUTATIVE))
def test_theorem_a_counterexamples(key):
    H = corpus.build(*key)
    r = locality.theorem_a_check(H)
    assert not r.cocommutative and not r.h_local.is_local and r.gamma1_local.is_local
    assert r.counterexample_flag
    assert r.to_report().overall  # reported, not asserted
    assert r.gamma1_dim == H.p**2


def test_theorem_a_smash():
    r = locality.theorem_a_check(corpus.build("smash", 3))
    assert not r.h_local.is_local and not r.gamma1_local.is_local and r.equivalence_holds


def test_corollary_b_examples():
    rep = locality.corollary_b_check(corpus.build("heisenberg", 3))
    assert rep.overall
    assert note(rep, "(i) H local") and note(rep, "(ii) u(g) local")
    assert note(rep, "(iii) all primitives nilpotent") is True
    assert note(rep, "lower central series dims") == [3, 1, 0]
    W = corpus.build("witt", 5)
    rep = locality.corollary_b_check(W)
    assert rep.overall
    assert [note(rep, k) for k in ("(i) H local", "(ii) u(g) local", "(iii) all primitives nilpotent")] \
        == [False, False, False]
    x = np.array(note(rep, "non-nilpotent primitive"))
    assert np.array_equal(W.alg.power(x, 5), x)
    rep = locality.corollary_b_check(corpus.build("B", 2, 0))
    assert rep.overall
    assert note(rep, "(iii) all primitives nilpotent") is True and note(rep, "(i) H local") is False
    assert note(rep, "(i) <=> (ii) [non-cocommutative, not asserted]") is False
    with pytest.raises(PreconditionError):
        locality.corollary_b_check(corpus.build("cyclic", 3, 2))


def test_engel_budget_fallback():
    H = corpus.build("heisenberg", 2)
    from hopflab import structure
    cert = locality.engel_certificate(structure.primitives(H), budget=1)
    assert cert.all_elements_nilpotent == "unknown(budget)"
    rep = locality.corollary_b_check(H, budget=1)
    assert rep.overall and note(rep, "(iii) derived from (ii)") is True


def test_pmap_chain():
    D = corpus.build("divided", 3)
    chain, terminated = locality.pmap_chain(D, D.basis_vector("x"))
    assert terminated and len(chain) == 3
    W = corpus.build("witt", 3)
    chain, terminated = locality.pmap_chain(W, W.basis_vector("x"))
    assert not terminated


def test_pointed_decomposition_examples():
    rep = locality.pointed_decomposition_check(corpus.build("heisenberg", 2))
    assert rep.overall
    rep = locality.pointed_decomposition_check(corpus.build("smash", 3))
    assert rep.overall
    assert note(rep, "H local, H_e local, k[G] local") == (False, True, False)
    rep = locality.pointed_decomposition_check(corpus.build("smash-trivial", 2))
    assert rep.overall and note(rep, "H local, H_e local, k[G] local") == (True, True, True)
    with pytest.raises(PreconditionError):
        locality.pointed_decomposition_check(corpus.build("B", 2, 0))


def test_subalgebra_locality():
    rep = locality.subalgebra_locality_check(corpus.build("heisenberg", 3), trials=20, seed=corpus.SEED)
    assert rep.overall and len(rep.checks) == 20
    with pytest.raises(PreconditionError):
        locality.subalgebra_locality_check(corpus.build("witt", 3))
    for key in corpus.COCOMMUTATIVE:
        H = corpus.build(*key)
        if locality.is_local(H).is_local:
            assert locality.is_local(locality.gamma1(H).as_hopf).is_local


def test_analyze_examples():
    a = locality.analyze(corpus.build("B", 2, 0))
    d = a.to_dict()
    assert d["schema"] == "hopflab.analysis/1"
    assert d["dim"] == 8 and d["connected"] and not d["cocommutative"] and not d["local"]["is_local"]
    assert d["theorem_a"]["gamma1_local"]["is_local"]
    assert d["coradical_dims"][:2] == [1, 3]
    assert a.overall
    a = locality.analyze(corpus.build("dual", "cyclic", 2, 3))
    assert a.data["group_likes"]["complete"] is False
    assert any(s.startswith("pointed decomposition") for s in a.skipped)
    k = builders.group_algebra(builders.cyclic_group(1), 2)
    a = locality.analyze(k)
    assert a.overall and a.data["dim"] == 1 and a.data["local"]["is_local"]
    a = locality.analyze(corpus.fault_corpus()["antipode zeroed"])
    assert not a.overall and a.data["axioms"] is False
