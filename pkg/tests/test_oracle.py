from __future__ import annotations

import numpy as np
import pytest

from coxeter353 import oracle as orc
from coxeter353 import tessellation_stats as ts
from coxeter353.verification import complement_is_regular, verify_q

FAST_Q = [9, 11, 16, 19, 25]


@pytest.mark.parametrize("q", FAST_Q + [29])
def test_small_group_is_closed(q):
    G = orc.small_group(q)
    assert len(G.psl) == G.psl_order == q * (q * q - 1) // (2 if q % 2 else 1)
    sample = G.psl[:: max(1, len(G.psl) // 50)]
    prods = G.mul(sample[:, None], sample[None, :]).ravel()
    assert G.in_psl[prods].all()
    assert (G.mul(sample, G.inverse(sample)) == G.identity).all()
    assert len(G.closure(G.psl_generators())) == G.psl_order


@pytest.mark.parametrize("q,count", [(9, 2), (11, 1), (16, 1), (19, 2), (25, 1)])
def test_kernel_classes(q, count):
    kc = orc.kernel_classes(q)
    assert kc.count == count
    G = orc.small_group(q)
    assert kc.generating_triples() == count * G.aut_order


@pytest.mark.slow
def test_kernel_classes_q29():
    assert orc.kernel_classes(29, allow_slow=True).count == 2


def test_q29_requires_opt_in():
    with pytest.raises(ValueError):
        orc.kernel_classes(29)


def test_unsupported_q():
    with pytest.raises(ValueError):
        orc.kernel_classes(13)


def test_triples_satisfy_relations():
    G = orc.small_group(11)
    for tri in orc.enumerate_epimorphisms(11)[:50]:
        assert orc.relations_hold(G, tri.alpha, tri.beta, tri.gamma)
        assert orc.generates(G, (tri.alpha, tri.beta, tri.gamma))


def test_coset_action_q11_doubly_transitive():
    G = orc.small_group(11)
    rep = orc.kernel_classes(11).representatives()[0]
    act = orc.tessellation_action(G, rep, "cells")
    assert act.degree == 11
    assert orc.burnside_rank(act) == 2


def test_coset_action_whole_group():
    G = orc.small_group(11)
    act = orc.coset_action(G, G.psl_generators())
    assert act.degree == 1


def test_permutation_character_examples():
    G = orc.small_group(11)
    rep = orc.kernel_classes(11).representatives()[0]
    act = orc.tessellation_action(G, rep, "vertices")
    inv = int(G.psl[G.orders[G.psl] == 2][0])
    assert orc.permutation_character(act, inv) == 3
    assert orc.permutation_character(act, G.identity) == 11
    faces = orc.tessellation_action(G, rep, "faces")
    assert orc.burnside_rank(faces) == orc.stabilizer_orbit_rank(faces) == 22


def test_q9_order3_classes_have_40_elements():
    G = orc.small_group(9)
    sizes = sorted(len(c) for c in G.conjugacy_classes() if G.orders[c[0]] == 3)
    assert sizes == [40, 40]


@pytest.mark.parametrize("q", FAST_Q)
def test_verify_q(q):
    res = verify_q(q)
    failed = [c.line() for c in res.checks if not c.ok]
    assert not failed


def test_q11_gamma_is_unique_extension():
    res = verify_q(11)
    assert any("unique gamma" in c.name and c.ok for c in res.checks)


@pytest.mark.parametrize("q,cells", [(11, 11), (29, 203)])
def test_complement_acts_regularly(q, cells):
    order, degree, regular = complement_is_regular(q)
    assert (order, degree, regular) == (cells, cells, True)


def test_q25_class_split_against_oracle():
    G = orc.small_group(25)
    rep = orc.kernel_classes(25).representatives()[0]
    act = orc.tessellation_action(G, rep, "vertices")
    beta_class = next(c for c in G.conjugacy_classes() if rep.beta in set(c.tolist()))
    assert orc.cycle_type(act, int(beta_class[0])) == {1: 10, 5: 24}
    assert ts.fixed_points(25, 5, "vertices", ts.BETA) == 10


def test_field_tables_are_consistent():
    F = orc.OracleField(9)
    a = np.arange(9)
    assert (F.mul[a[1:], F.inv[a[1:]]] == 1).all()
    assert (F.add[a, F.neg[a]] == 0).all()
