from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxeter353.classifier import golden_traces, primes_up_to
from coxeter353.finite_fields import (
    build_field,
    evaluate_quadratic,
    frobenius,
    is_square,
    solve_quadratic,
    sqrt,
    sum_of_two_squares,
)

SMALL_FIELDS = [(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (3, 4), (5, 2), (7, 2), (11, 1), (11, 2), (19, 1)]


def _field_elements(draw, F):
    return F(tuple(draw(st.integers(0, F.p - 1)) for _ in range(F.n)))


@st.composite
def field_and_elements(draw, k=3):
    p, n = draw(st.sampled_from([(2, 4), (3, 4), (7, 2), (7, 4), (13, 2), (251, 1), (251, 2), (29, 4)]))
    F = build_field(p, n)
    return F, [_field_elements(draw, F) for _ in range(k)]


@pytest.mark.parametrize("p,n,order", [(11, 1, 11), (2, 4, 16), (7, 4, 2401), (3, 2, 9)])
def test_build_field_orders(p, n, order):
    F = build_field(p, n)
    assert F.order == order
    assert len(set(F.elements())) == order


def test_build_field_tower_shape():
    F16 = build_field(2, 4)
    assert F16.base is build_field(2, 2)
    assert F16.base.base is build_field(2, 1)
    assert len(F16.modulus_chain) == 2


@pytest.mark.parametrize("p,n", [(4, 1), (1, 2), (7, 3), (11, 8)])
def test_build_field_rejects(p, n):
    with pytest.raises(ValueError):
        build_field(p, n)


def test_build_field_is_deterministic():
    assert build_field(13, 4).modulus_chain == build_field(13, 4).modulus_chain


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_every_nonzero_element_invertible(p, n):
    F = build_field(p, n)
    for a in F.elements():
        if a:
            assert a * a.inverse() == 1


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (11, 1), (3, 4), (7, 2), (19, 1)])
def test_squares_are_half_of_units(p, n):
    F = build_field(p, n)
    u = F.nonsquare()
    units = [a for a in F.elements() if a]
    assert sum(is_square(a) for a in units) == (F.order - 1) // 2
    for a in units:
        assert is_square(a) != is_square(u * a)


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_sqrt_consistent_with_is_square(p, n):
    F = build_field(p, n)
    for a in F.elements():
        r = sqrt(a)
        assert (r is not None) == is_square(a)
        if r is not None:
            assert r * r == a


def test_square_examples():
    assert is_square(build_field(11)(5))
    assert is_square(build_field(7)(0))
    assert not is_square(build_field(19)(2))


@pytest.mark.parametrize("p,a,root", [(19, 5, 9), (29, -4, 5), (7, 1, 1)])
def test_canonical_sqrt(p, a, root):
    assert sqrt(build_field(p)(a)).as_int() == root


@given(field_and_elements())
@settings(max_examples=60, deadline=None)
def test_field_laws(data):
    F, (a, b, c) = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@given(field_and_elements(2))
@settings(max_examples=60, deadline=None)
def test_frobenius_is_automorphism(data):
    F, (a, b) = data
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius(a, F.n) == a


def test_frobenius_fixes_prime_field():
    F = build_field(7, 4)
    for k in range(4):
        assert frobenius(F(3), k) == F(3)


def test_frobenius_swaps_conjugate_roots():
    F = build_field(7, 1)
    res = solve_quadratic(F(1), F(0), F(-3))
    assert not res.split_in_base
    r1, r2 = res.roots
    assert frobenius(r1) == r2 and frobenius(r2) == r1


def test_subfield_embedding_round_trip():
    F4, F16 = build_field(2, 2), build_field(2, 4)
    for a in F4.elements():
        assert F16(a).restrict(2) == a


@pytest.mark.parametrize("p", [p for p in primes_up_to(251) if p != 2])
def test_sum_of_two_squares_identity(p):
    for _, t in golden_traces(p):
        e, f = sum_of_two_squares(t)
        assert f and e * e + f * f + t + 2 == 0


def test_sum_of_two_squares_p5():
    F = build_field(5)
    e, f = sum_of_two_squares(F(2))
    assert (e.as_int(), f.as_int()) == (0, 1)


def test_sum_of_two_squares_p11_is_first_in_scan():
    t = 7
    scan = [(e, f) for e in range(11) for f in range(1, 11) if (e * e + f * f + t + 2) % 11 == 0]
    e0 = scan[0][0]
    expected = (e0, min(f for e, f in scan if e == e0))
    e, f = sum_of_two_squares(build_field(11)(t))
    assert (e.as_int(), f.as_int()) == expected


def test_solve_quadratic_repeated_root():
    F = build_field(11)
    res = solve_quadratic(F(1), F(-2), F(1))
    assert res.repeated and res.roots == (F(1),)


def test_solve_quadratic_split():
    F = build_field(13)
    res = solve_quadratic(F(1), F(0), F(-1))
    assert res.split_in_base and {r.as_int() for r in res.roots} == {1, 12}


def test_solve_quadratic_char2_goes_to_f16():
    F4 = build_field(2, 2)
    t = F4((0, 1))
    res = solve_quadratic(F4.one(), F4.one(), t)
    assert res.field.order == 16 and len(res.roots) == 2
    for r in res.roots:
        assert evaluate_quadratic(1, 1, res.field(t), r) == 0


def test_solve_quadratic_degenerate():
    F = build_field(7)
    with pytest.raises(ValueError):
        solve_quadratic(F(0), F(1), F(1))


@given(st.sampled_from([(3, 1), (7, 2), (11, 1), (13, 2), (2, 2), (2, 1)]), st.data())
@settings(max_examples=80, deadline=None)
def test_quadratic_roots_evaluate_to_zero(pn, data):
    F = build_field(*pn)
    a2, a1, a0 = (_field_elements(data.draw, F) for _ in range(3))
    if not a2:
        return
    res = solve_quadratic(a2, a1, a0)
    for r in res.roots:
        assert evaluate_quadratic(res.field(a2), res.field(a1), res.field(a0), r) == 0
