from __future__ import annotations

import pytest

from conftest import psl_elements
from coxeter353.classifier import construct_base_pair, witness_for
from coxeter353.finite_fields import build_field
from coxeter353.geometry_quotients import screw_matrix
from coxeter353.projective_linear import (
    ProjectiveMatrix,
    group_atlas,
    is_in_psl,
    multiply,
    order_mod_cyclic,
    projective_order,
    psl2_order,
    trace_order_class,
)


def test_multiply_identity_and_inverse():
    bp = construct_base_pair(19, 1)
    one = ProjectiveMatrix.identity(bp.field)
    assert multiply(bp.alpha, one) == bp.alpha
    assert multiply(multiply(bp.alpha, bp.beta), bp.beta.inverse()) == bp.alpha


def test_multiply_field_mismatch():
    a = ProjectiveMatrix.identity(build_field(7))
    b = ProjectiveMatrix.identity(build_field(11))
    with pytest.raises(ValueError):
        multiply(a, b)


@pytest.mark.parametrize("p", [3, 5, 11, 19, 29])
def test_alpha_beta_has_trace_zero(p):
    bp = construct_base_pair(p, 1)
    ab = bp.alpha * bp.beta
    assert ab.trace == 0 and projective_order(ab) == 2


def test_projective_equality_up_to_scalars():
    F = build_field(13)
    m = ProjectiveMatrix((1, 2, 3, 5), F)
    assert ProjectiveMatrix((3, 6, 9, 15), F) == m
    assert is_in_psl(m) == is_in_psl(ProjectiveMatrix((2, 4, 6, 10), F))


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        ProjectiveMatrix((1, 2, 2, 4), build_field(7))


def test_order_of_identity_and_involution():
    F = build_field(11)
    assert projective_order(ProjectiveMatrix.identity(F)) == 1
    assert projective_order(ProjectiveMatrix((0, 1, -1, 0), F)) == 2


@pytest.mark.parametrize("q", [9, 11, 16, 19, 25])
def test_orders_exhaustively(q):
    elems = psl_elements(q)
    assert len(elems) == psl2_order(q)
    counts: dict[int, int] = {}
    for m in elems:
        k = projective_order(m)
        counts[k] = counts.get(k, 0) + 1
        assert (m ** k).is_identity()
        assert all(not (m ** d).is_identity() for d in range(1, k) if k % d == 0)
        assert trace_order_class(m) == (k if k in (1, 2, 3, 5) else "other")
    assert group_atlas(q).order_frequencies == dict(sorted(counts.items()))


@pytest.mark.parametrize("q,order,involutions", [(11, 660, 55), (16, 4080, 255)])
def test_group_atlas_involutions(q, order, involutions):
    atlas = group_atlas(q)
    assert atlas.group_order == order
    assert atlas.involutions() == involutions


def test_group_atlas_q9_order3_classes():
    data = group_atlas(9).small_classes[3]
    assert (data.classes, data.class_size) == (2, 40)


def test_group_atlas_rejects_unsupported():
    with pytest.raises(ValueError):
        group_atlas(8)


def test_screw_matrix_trace_class_agrees_with_order():
    for p in (11, 19, 29, 59):
        for trace in (1, 2):
            if p == 11 and trace == 2:
                continue
            w = witness_for(p, trace, 1)
            h = screw_matrix(w, 3)
            k = projective_order(h)
            assert trace_order_class(h) == (k if k in (1, 2, 3, 5) else "other")


@pytest.mark.parametrize("p", [3, 7, 11, 31])
def test_psl_membership_is_scale_invariant(p):
    bp = construct_base_pair(p, 1)
    F = bp.field
    g = bp.alpha * bp.beta * bp.alpha
    for lam in [a for a in F.elements() if a][:6]:
        scaled = ProjectiveMatrix(tuple(lam * e for e in g.raw), F)
        assert is_in_psl(scaled) == is_in_psl(g)


def test_order_mod_cyclic_identity():
    bp = construct_base_pair(11, 1)
    om = order_mod_cyclic(ProjectiveMatrix.identity(bp.field), bp.alpha)
    assert (om.n, om.twist) == (1, 0)


@pytest.mark.parametrize("m,expected", [(3, (5, 0)), (5, (3, 0))])
def test_order_mod_cyclic_q16(m, expected):
    w = witness_for(2, 1, 1)
    h = screw_matrix(w, m)
    g = w.alpha if m == 3 else w.beta
    om = order_mod_cyclic(h, g)
    assert (om.n, om.twist) == expected
    assert projective_order(h) == expected[0]


@pytest.mark.parametrize("p,trace,root", [(59, 1, 1), (59, 2, 1), (71, 1, 1), (19, 2, 1), (3, 1, 1), (5, 1, 1)])
def test_order_mod_cyclic_property(p, trace, root):
    w = witness_for(p, trace, root)
    for m, g in ((3, w.alpha), (5, w.beta)):
        h = screw_matrix(w, m)
        om = order_mod_cyclic(h, g)
        assert h ** om.n == g ** (om.twist % projective_order(g))
        powers = {g ** k for k in range(projective_order(g))}
        assert all(h ** j not in powers for j in range(1, om.n))


def test_order_mod_cyclic_rejects_noncommuting():
    bp = construct_base_pair(11, 1)
    with pytest.raises(ValueError):
        order_mod_cyclic(bp.beta, bp.alpha)
