"""Vandermonde identities, common lattices, and Delzant verdicts."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorstruct.lattice import (
    common_lattice,
    elementary_symmetric,
    generalized_vi_check,
    rational_delzant_check,
    simplex_delzant_check,
    vandermonde_full_check,
    vandermonde_identity,
)
from factorstruct.polyhedra import (
    build_cone,
    default_chart,
    enumerate_facets_gale,
)
from factorstruct.structure import build_product_sv, build_veronese

F = Fraction


def test_elementary_symmetric_values():
    vals = [F(1), F(2), F(3)]
    assert elementary_symmetric(vals, 0) == 1
    assert elementary_symmetric(vals, 1) == 6
    assert elementary_symmetric(vals, 2) == 11
    assert elementary_symmetric(vals, 3) == 6
    assert elementary_symmetric(vals, 4) == 0


def test_vandermonde_identity_examples():
    assert vandermonde_identity([0, 1, 2]) == (1, 0, 0)
    assert vandermonde_identity([F(-1, 2), F(1, 3), F(7), F(4)]) == (1, 0, 0, 0)
    with pytest.raises(ValueError):
        vandermonde_identity([0, 1, 1])


def test_vandermonde_full_family_examples():
    assert vandermonde_full_check([0, 1, 2, 3])
    assert vandermonde_full_check([F(-3, 2), F(1, 5), F(2), F(11, 7), F(9)])


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.fractions(
            min_value=-20, max_value=20, max_denominator=8
        ),
        min_size=3,
        max_size=7,
        unique=True,
    )
)
def test_vandermonde_identity_holds_for_distinct_rationals(xs):
    total = vandermonde_identity(xs)
    assert total[0] == 1 and all(t == 0 for t in total[1:])


def test_generalized_vandermonde_pairings_vanish():
    for build, args in [
        (build_veronese, (3,)),
        (build_product_sv, ((2, 1),)),
    ]:
        f = build(*args)
        chart = default_chart(f)
        xs = [F(q + 1, 2) for q in range(f.m)]
        beta = tuple(F(1) for _ in range(f.m + 1))
        for i in range(1, f.m + 1):
            for j in range(1, f.m + 1):
                if i == j:
                    continue
                assert generalized_vi_check(f, beta, xs, i, j, chart) == 0
    with pytest.raises(ValueError):
        generalized_vi_check(f, beta, xs, 1, 1, chart)


def test_common_lattice_scales_by_denominator_lcms():
    lat = common_lattice(
        [(1, 0), (0, 1)], [(F(1, 2), F(1, 3)), (F(3, 4), F(2))]
    )
    assert lat.basis == ((F(1, 4), 0), (0, F(1, 3)))
    assert lat.coords == ((4, 0), (0, 3), (2, 1), (3, 6))


def test_common_lattice_rejects_bad_inputs():
    with pytest.raises(ValueError):
        common_lattice([(1, 0), (2, 0)], [])
    with pytest.raises(ValueError):
        common_lattice([(1, 0)], [(0, 1)])


def quadric_setup():
    f = build_veronese(2)
    chart = default_chart(f)
    return f, chart


def test_simplex_section_delzant():
    f, chart = quadric_setup()
    v = simplex_delzant_check(f, [0, 1, 2], [1, 1, 1], (5, -3, 3), chart)
    assert v.status == "Delzant"
    assert v.coords == (1, 1, 1)
    assert v.rescale == (1, 1, 1)


def test_simplex_section_beta_not_interior():
    f, chart = quadric_setup()
    v = simplex_delzant_check(f, [0, 1, 2], [1, 1, 1], (1, -1, 2), chart)
    assert v.status == "BetaNotInterior"
    assert v.coords == (1, 1, 0)
    assert v.rescale is None and v.lattice is None


def test_simplex_section_rational_delzant():
    f, chart = quadric_setup()
    v = simplex_delzant_check(f, [0, 1, 2], [1, 1, 1], (5, -3, 6), chart)
    assert v.status == "RationalDelzant"
    assert v.coords == (4, 1, 1)
    assert v.rescale == (4, 1, 1)
    # the rescaled generators reproduce beta with unit coordinates
    total = tuple(sum(g[i] for g in v.lattice) for i in range(3))
    assert total == (5, -3, 6)


def test_simplex_section_requires_distinct_parameters():
    f, chart = quadric_setup()
    with pytest.raises(ValueError):
        simplex_delzant_check(f, [0, 1, 1], [1, 1, 1], (5, -3, 3), chart)


def test_rational_delzant_square():
    f = build_product_sv((1, 1))
    cone = build_cone(f, default_chart(f), [[0, 1], [0, 1]])
    facets = enumerate_facets_gale(cone)
    beta = tuple(sum(g[i] for g in cone.generators) for i in range(cone.m + 1))
    report = rational_delzant_check(cone, facets, beta)
    assert len(report.extremal) == 4
    assert all(report.vertex_delzant)
    assert report.delzant
    for c in report.normal_coords:
        assert all(x.denominator == 1 for x in c)
