from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorstruct.curves import (
    DecompositionCertificate,
    Indecomposable,
    curve_for_slot,
    curve_intersections,
    curve_membership,
    curve_point,
    curves_equivalent,
    decompose_curve,
)
from factorstruct.polyhedra import group_curve
from factorstruct.ratlin import poly, rank_of
from factorstruct.structure import (
    build_product_sv,
    build_standard_sv,
    build_veronese,
    quotient,
)
from factorstruct.tensor import (
    ProjPoint,
    Tensor,
    proj,
    proj_affine,
    sigma_annihilator,
)
from factorstruct.ratlin import intersect, span

rats = st.fractions(min_value=-8, max_value=8, max_denominator=4)


def test_veronese_curve_coordinates():
    f = build_veronese(2)
    c = curve_for_slot(f, 1)
    assert c.coords == (poly([0, 0, 1]), poly([0, -1]), poly([1]))
    assert c.degree == 2
    assert curve_point(c, proj_affine(2)) == (4, -2, 1)
    assert curve_point(c, proj(0, 1)) == (1, 0, 0)


def test_sv_curve_degrees_match_group_degrees():
    f = build_product_sv((2, 1))
    assert curve_for_slot(f, 1).degree == 2
    assert curve_for_slot(f, 2).degree == 2
    assert curve_for_slot(f, 3).degree == 1


def test_curve_degree_at_most_m():
    for part in [(3,), (2, 2), (1, 1, 1)]:
        f = build_product_sv(part)
        for slot in range(1, f.m + 1):
            assert curve_for_slot(f, slot).degree <= f.m


def test_curve_value_spans_slotwise_intersection():
    f = build_product_sv((2, 1))
    for slot in (1, 3):
        c = curve_for_slot(f, slot)
        for x in (0, 1, Fraction(-3, 2)):
            ell = proj_affine(x)
            p = curve_point(c, ell)
            line = span(f.m + 1, [p])
            emb = span(1 << f.m, [f.embed(p).coeffs])
            expected = intersect(f.image, sigma_annihilator(f.m, slot, ell))
            assert emb == expected
            assert line.dim == 1


def test_membership_inverts_evaluation():
    f = build_veronese(3)
    c = curve_for_slot(f, 2)
    for pt in [proj_affine(Fraction(7, 3)), proj(0, 1), proj_affine(-4)]:
        p = curve_point(c, pt)
        assert curve_membership(f, c, p) == pt


def test_membership_rejects_off_curve_points():
    f = build_veronese(2)
    c = curve_for_slot(f, 1)
    assert curve_membership(f, c, (1, 0, 1)) is None  # rank-2 flattening
    assert curve_membership(f, c, (0, 1, 0)) is None


def test_slots_of_one_group_give_equivalent_curves():
    f = build_product_sv((2, 2))
    c1, c2 = curve_for_slot(f, 1), curve_for_slot(f, 2)
    assert curves_equivalent(f, c1, c2)
    c3 = curve_for_slot(f, 3)
    assert not curves_equivalent(f, c1, c3)


def test_veronese_slots_all_give_the_same_curve():
    f = build_veronese(3)
    cs = [curve_for_slot(f, s) for s in (1, 2, 3)]
    assert curves_equivalent(f, cs[0], cs[1])
    assert curves_equivalent(f, cs[0], cs[2])


def test_decompose_veronese_curve():
    f = build_veronese(3)
    cert = decompose_curve(f, curve_for_slot(f, 1))
    assert isinstance(cert, DecompositionCertificate)
    assert cert.moving_slots == (1, 2, 3)
    for g in cert.slots.values():
        d = g.entries[0][0] * g.entries[1][1] - g.entries[0][1] * g.entries[1][0]
        assert d != 0


def test_decompose_sv_curves_with_indecomposable_gamma():
    # 3-dimensional Segre with entangled gammas: curves are decomposable,
    # the constant parts are not
    gammas = [
        Tensor(2, (1, 0, 0, 1)),  # e00 + e11 (slots 2, 3)
        Tensor(2, (1, 0, 0, -1)),  # e00 - e11 (slots 1, 3)
        Tensor(2, (0, 1, 1, 0)),  # e01 + e10 (slots 1, 2)
    ]
    f = build_standard_sv((1, 1, 1), gammas)
    for slot, gam in zip((1, 2, 3), gammas):
        cert = decompose_curve(f, curve_for_slot(f, slot))
        assert isinstance(cert, DecompositionCertificate)
        assert cert.moving_slots == (slot,)
        neg = tuple(-x for x in gam.coeffs)
        assert cert.gamma.coeffs in (gam.coeffs, neg)


def test_decomposable_curve_points_linearly_independent():
    # up to degree + 1 distinct points on a decomposable curve are independent
    for part in [(3,), (2, 1)]:
        f = build_product_sv(part)
        for group_slot in [1, f.m]:
            c = curve_for_slot(f, group_slot)
            pts = [curve_point(c, proj_affine(x)) for x in range(c.degree + 1)]
            assert rank_of(pts) == c.degree + 1


def test_segre_curves_meet_at_intersection_point():
    f = build_product_sv((1, 1))
    c1, c2 = curve_for_slot(f, 1), curve_for_slot(f, 2)
    res = curve_intersections(f, c1, c2)
    assert len(res.points) == 1
    p, l1, l2 = res.points[0]
    assert p == (1, 0, 0)
    assert l1 == proj(0, 1) and l2 == proj(0, 1)
    assert not res.possible_nonrational


def test_sv_intersections_include_common_point():
    f = build_product_sv((2, 1))
    res = curve_intersections(f, curve_for_slot(f, 1), curve_for_slot(f, 3))
    assert any(p == (1, 0, 0, 0) for p, _, _ in res.points)


@given(rats)
@settings(max_examples=30, deadline=None)
def test_membership_of_random_parameterimage(x):
    f = build_product_sv((2, 1))
    c = curve_for_slot(f, 1)
    ell = proj_affine(x)
    assert curve_membership(f, c, curve_point(c, ell)) == ell


def test_quotient_curve_degrees():
    # contracting a slot drops the degree exactly of the curves through the
    # contracted point's image
    f = build_veronese(3)
    q = quotient(f, 1, proj_affine(5))
    for slot in (1, 2):
        assert curve_for_slot(q, slot).degree == 2
    f21 = build_product_sv((2, 1))
    q21 = quotient(f21, 1, proj_affine(5))
    # old group 1 (degree 2) drops, old group 2 (degree 1) does not
    assert curve_for_slot(q21, 1).degree == 1
    assert curve_for_slot(q21, 2).degree == 1
