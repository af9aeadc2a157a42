"""Charts, compatible cones, facet enumeration, faces, and sections."""

from fractions import Fraction

import pytest

from factorstruct.polyhedra import (
    BetaNotInterior,
    ChartDegenerate,
    Cone,
    FacetCertificate,
    NotFullDimensional,
    Rejected,
    build_cone,
    curve_in_chart,
    default_chart,
    enumerate_facets_bruteforce,
    enumerate_facets_gale,
    face_subspace,
    facet_sets_equal,
    gale_facet_test,
    is_pointed,
    is_simplicial,
    polytope_section,
)
from factorstruct.ratlin import dot
from factorstruct.structure import build_product_sv, build_veronese
from factorstruct.tensor import ProjPoint, proj_affine

F = Fraction


def test_default_chart_covectors():
    # pairing of the chart tensor with the basis elements
    assert default_chart(build_veronese(2)).covector == (0, 0, 1)
    assert default_chart(build_product_sv((2, 1))).covector == (0, 0, 1, -1)


def test_curve_in_chart_closed_form():
    f = build_veronese(2)
    chart = default_chart(f)
    for x in (F(0), F(1), F(-3), F(5, 2)):
        assert curve_in_chart(f, 1, x, chart) == (x * x, -x, 1)


def test_chart_misses_only_the_intersection_point():
    f = build_veronese(2)
    chart = default_chart(f)
    with pytest.raises(ChartDegenerate):
        curve_in_chart(f, 1, ProjPoint(0, 1), chart)


def test_build_cone_rejects_duplicates_and_deficient_spans():
    f = build_veronese(2)
    chart = default_chart(f)
    with pytest.raises(ValueError):
        build_cone(f, chart, [[0, 1, 1]])
    # degree-2 curve: two points never span the 3-dimensional space
    with pytest.raises(NotFullDimensional):
        build_cone(f, chart, [[0, 1]])
    # exactly d_j points per group is deficient for products too
    g = build_product_sv((2, 1))
    with pytest.raises(NotFullDimensional):
        build_cone(g, default_chart(g), [[0, 1], [0]])


def veronese3_cone():
    f = build_veronese(3)
    chart = default_chart(f)
    return build_cone(f, chart, [[1, 2, 3, 4, 5]])


def test_cubic_curve_cone_facets():
    cone = veronese3_cone()
    gale = enumerate_facets_gale(cone)
    brute = enumerate_facets_bruteforce(cone)
    assert facet_sets_equal(gale, brute)
    expected = {(0, 1, 2), (0, 1, 4), (0, 2, 3), (0, 3, 4), (1, 2, 4), (2, 3, 4)}
    assert {c.incident for c in gale} == expected
    assert is_simplicial(gale, cone.m)
    assert is_pointed(cone)
    for c in gale:
        assert all(isinstance(x, int) or x.denominator == 1 for x in c.normal)
        assert all(dot(c.normal, g) >= 0 for g in cone.generators)


def test_gale_test_accepts_contiguous_and_rejects_sign_changes():
    cone = veronese3_cone()
    res = gale_facet_test(cone, (0, 1, 2))
    assert isinstance(res, FacetCertificate)
    assert res.kind == "type_one"
    assert res.incident == (0, 1, 2)
    # skipping parameter 3 flips the test polynomial's sign at 3 vs 5
    res = gale_facet_test(cone, (0, 1, 3))
    assert isinstance(res, Rejected)
    res = gale_facet_test(cone, (0, 1))
    assert isinstance(res, Rejected)
    res = gale_facet_test(cone, (0, 0, 1))
    assert isinstance(res, Rejected)


def test_segre_square_has_two_facet_kinds():
    f = build_product_sv((1, 1))
    cone = build_cone(f, default_chart(f), [[0, 1], [0, 1]])
    gale = enumerate_facets_gale(cone)
    brute = enumerate_facets_bruteforce(cone)
    assert facet_sets_equal(gale, brute)
    assert len(gale) == 4
    kinds = sorted(c.kind for c in gale)
    assert kinds == ["type_one", "type_one", "type_two", "type_two"]
    assert is_simplicial(gale, cone.m)
    assert is_pointed(cone)


def test_type_two_normal_contains_other_group_curves():
    f = build_product_sv((1, 1))
    cone = build_cone(f, default_chart(f), [[0, 1], [0, 1]])
    two = [c for c in enumerate_facets_gale(cone) if c.kind == "type_two"]
    for c in two:
        # each type-two facet is incident to every generator of some group
        groups = {cone.provenance[i][0] for i in c.incident}
        assert len(groups) == 1


def test_face_subspace_generic_codimension():
    f = build_veronese(3)
    report = face_subspace(
        f, [(1, proj_affine(F(2))), (2, proj_affine(F(-1)))]
    )
    assert report.codim == 2
    assert report.agree
    assert report.pushforward == report.intersection_of_pushforwards


def test_non_pointed_cone_detected():
    base = veronese3_cone()
    gens = base.generators + tuple(
        tuple(-x for x in g) for g in base.generators[:1]
    )
    prov = base.provenance + ((1, F(99)),)
    cone = Cone(base.structure, base.chart, gens, prov)
    assert not is_pointed(cone)


def test_polytope_section_vertices_and_interiority():
    cone = veronese3_cone()
    facets = enumerate_facets_gale(cone)
    beta = tuple(sum(g[i] for g in cone.generators) for i in range(cone.m + 1))
    sect = polytope_section(cone, facets, beta)
    assert len(sect.vertices) == len(facets)
    for v in sect.vertices:
        assert dot(v, beta) == 1
    assert sect.incidence == tuple(c.incident for c in facets)
    # a facet normal pairs to zero with its incident generators: not interior
    with pytest.raises(BetaNotInterior):
        polytope_section(cone, facets, facets[0].normal)
