from __future__ import annotations

import pytest

from coxeter353 import tessellation_stats as ts
from coxeter353.classifier import kernels_for_prime, primes_up_to, witness_for
from coxeter353.geometry_quotients import (
    bracelet_params,
    closure_words,
    complement_exists,
    complement_generators,
    face_identifications,
    group_closure,
    necklace_params,
    screw_closed_form,
    screw_matrix,
    screw_word,
    signed_sqrt_4t5,
    small_quotient_cells,
)
from coxeter353.projective_linear import commutes, projective_order

PRIMES = primes_up_to(251)


def _witnesses(pmax):
    for p in primes_up_to(pmax):
        for k in kernels_for_prime(p):
            yield from k.witnesses


def test_q16_screws():
    w = witness_for(2)
    assert projective_order(screw_matrix(w, 3)) == 5
    assert projective_order(screw_matrix(w, 5)) == 3
    b, n = bracelet_params(w), necklace_params(w)
    assert (b.n, b.twist, b.axes) == (5, 0, 1)
    assert (n.n, n.twist, n.axes) == (3, 0, 1)


@pytest.mark.parametrize("p", [3, 5, 11, 19, 29, 31, 41, 59, 61, 71])
def test_screw_closed_forms_match_words(p):
    for k in kernels_for_prime(p):
        for w in k.witnesses:
            for m in (3, 5):
                h = screw_word(w, m)
                assert h == screw_closed_form(w, m)
                assert commutes(h, w.alpha if m == 3 else w.beta)
            t = w.field(w.t)
            d = signed_sqrt_4t5(w)
            assert d * d == 4 * t + 5
            assert screw_closed_form(w, 3).trace == t * d
            assert screw_closed_form(w, 5).trace == -t * t * t


def test_axis_counts_match_fixed_cells_up_to_151():
    for w in _witnesses(151):
        for rep, m, tag in ((bracelet_params(w), 3, ts.ALPHA), (necklace_params(w), 5, ts.BETA)):
            assert rep.n * rep.axes == ts.fixed_points(w.q, m, ts.ActionKind.CELLS, tag)
            if rep.twist == 0:
                assert rep.n == rep.h_order
            else:
                assert rep.n * m == rep.h_order


def test_q59_splits():
    h3, h5 = {}, {}
    for k in kernels_for_prime(59):
        for w in k.witnesses:
            b, n = bracelet_params(w), necklace_params(w)
            h3[b.h_order] = (b.axes, b.n)
            h5[n.h_order] = (n.axes, n.n)
    assert h3 == {30: (1, 10), 15: (2, 5)}
    assert h5 == {10: (3, 2), 15: (2, 3)}


def test_q71_split():
    orders = {bracelet_params(w).h_order: bracelet_params(w).axes for k in kernels_for_prime(71) for w in k.witnesses}
    assert orders == {36: 1, 12: 3}


def test_q9_and_q25_noncyclic_centralisers():
    w9 = witness_for(3)
    assert necklace_params(w9).n == 1 and abs(necklace_params(w9).twist) == 2
    w25 = witness_for(5)
    r = necklace_params(w25)
    assert (r.n, r.axes) == (5, 2)


def test_complements_exactly_11_29_59():
    qs = sorted({k.q for p in PRIMES for k in kernels_for_prime(p)})
    assert [q for q in qs if complement_exists(q).exists] == [11, 29, 59]


@pytest.mark.parametrize("q,order,family,witness", [(11, 11, "cyclic", 11), (29, 203, "frobenius", 7), (59, 1711, "frobenius", 29)])
def test_complement_reports(q, order, family, witness):
    rep = complement_exists(q)
    assert (rep.order, rep.family, rep.homology_witness) == (order, family, witness)
    assert rep.order * 60 == q * (q * q - 1) // 2
    S = group_closure(complement_generators(q))
    assert len(S) == order


def test_complement_q19_absent():
    rep = complement_exists(19)
    assert (rep.order, rep.exists, rep.coprime_to_30) == (57, False, False)


def test_complement_q5_trivial_order_excluded():
    assert not complement_exists(5).exists


@pytest.mark.parametrize("q,order,cells", [(19, 19, 3), (16, 17, 4), (11, 11, 1)])
def test_small_quotient_cells(q, order, cells):
    assert small_quotient_cells(q, order) == cells


@pytest.mark.parametrize("q,order", [(19, 57), (11, 7), (16, 15)])
def test_small_quotient_cells_rejects(q, order):
    with pytest.raises(ValueError):
        small_quotient_cells(q, order)


def _prime_field_witnesses():
    for p in (11, 29, 59):
        for k in kernels_for_prime(p):
            if k.q == p:
                for w in k.witnesses:
                    yield pytest.param(w, id=f"{p}-t{w.trace_index}-r{w.root_index + 1}")


@pytest.mark.parametrize("w", list(_prime_field_witnesses()))
def test_face_identifications(w):
    fi = face_identifications(w)
    partner = {fp.face: fp.partner for fp in fi.pairings}
    assert sorted(partner) == list(range(20))
    assert all(partner[partner[f]] == f and partner[f] != f for f in partner)
    assert (fi.vertices, fi.edges, fi.faces, fi.cells) == (1, 10, 10, 1)
    assert fi.euler_characteristic == 0
    lines = fi.export_lines()
    assert len(lines) == 20 and all(len(line.split("\t")) == 3 for line in lines)


def test_face_words_are_shortest_in_icosahedral_group():
    w = witness_for(29, 1, 1)
    words = closure_words({"a": w.alpha, "b": w.beta})
    assert len(words) == 60
    diameter = max(len(x) for x in words.values())
    for fp in face_identifications(w).pairings:
        assert len(fp.word) <= diameter


def test_face_identifications_require_complement():
    with pytest.raises(ValueError):
        face_identifications(witness_for(19, 1, 1))
