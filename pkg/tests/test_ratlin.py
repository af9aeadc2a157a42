from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorstruct.ratlin import (
    DegenerateRowSelection,
    Mat,
    Poly,
    annihilator,
    dot,
    intersect,
    kernel_basis,
    kernel_vector_minors,
    poly,
    poly_from_roots,
    poly_gcd,
    poly_gcd_reduce,
    primitive_integer_vec,
    rank_of,
    rref,
    sign_normalize,
    solve,
    span,
    vec,
)

rats = st.fractions(
    min_value=-20, max_value=20, max_denominator=6
)


def test_rref_canonical_and_rank():
    rows, rank = rref([[2, 4], [1, 2]])
    assert rank == 1
    assert rows == ((Fraction(1), Fraction(2)),)


def test_kernel_example():
    assert kernel_basis([[1, 1]], 2) == ((Fraction(1), Fraction(-1)),)


def test_subspace_equality_is_representation_equality():
    a = span(3, [[1, 0, 1], [0, 1, 1]])
    b = span(3, [[1, 1, 2], [1, -1, 0]])
    assert a == b
    assert a.contains([2, 3, 5])
    assert not a.contains([0, 0, 1])


def test_annihilator_and_intersection():
    s = span(3, [[1, 0, 0], [0, 1, 0]])
    ann = annihilator(s)
    assert ann.basis == ((Fraction(0), Fraction(0), Fraction(1)),)
    t = span(3, [[0, 1, 0], [0, 0, 1]])
    assert intersect(s, t) == span(3, [[0, 1, 0]])


def test_solve_consistent_and_inconsistent():
    a = Mat(((1, 2), (3, 4)))
    x = solve(a, (5, 11))
    assert a.matvec(x) == (Fraction(5), Fraction(11))
    assert solve(Mat(((1, 1), (1, 1))), (0, 1)) is None


@given(st.lists(st.lists(rats, min_size=3, max_size=3), min_size=1, max_size=4))
@settings(max_examples=50, deadline=None)
def test_kernel_vectors_annihilate_rows(rows):
    for v in kernel_basis(rows, 3):
        for r in rows:
            assert dot(vec(r), v) == 0


def test_sign_normalize_and_primitive():
    assert sign_normalize((Fraction(-2), Fraction(4))) == (Fraction(2), Fraction(-4))
    assert primitive_integer_vec((Fraction(-2, 3), Fraction(4, 3))) == (
        Fraction(1),
        Fraction(-2),
    )


def test_poly_arithmetic_and_divmod():
    p = poly([1, 0, 1]) * poly([-2, 1])  # (x^2+1)(x-2)
    q, r = p.divmod(poly([-2, 1]))
    assert q == poly([1, 0, 1]) and r.is_zero()
    assert p(2) == 0 and p(0) == -2


def test_poly_gcd_monic():
    a = poly_from_roots([1, 2, 3])
    b = poly_from_roots([2, 3, 4])
    assert poly_gcd(a, b) == poly_from_roots([2, 3])


def test_poly_gcd_reduce_examples():
    assert poly_gcd_reduce((poly([0, 2]), poly([4]))) == (poly([0, 1]), poly([2]))
    assert poly_gcd_reduce((poly([0, -1, 1]), poly([-1, 1]))) == (
        poly([0, 1]),
        poly([1]),
    )


def test_kernel_vector_minors_example():
    x = poly([0, 1])
    one = poly([1])
    zero = Poly(())
    rows = [[one, x, zero], [zero, one, x]]
    assert kernel_vector_minors(rows) == (poly([0, 0, 1]), poly([0, -1]), poly([1]))


def test_kernel_vector_minors_degenerate():
    zero = Poly(())
    with pytest.raises(DegenerateRowSelection):
        kernel_vector_minors([[zero, zero, zero], [zero, zero, zero]])


@given(st.lists(rats, min_size=1, max_size=4), st.lists(rats, min_size=1, max_size=4))
@settings(max_examples=50, deadline=None)
def test_poly_divmod_roundtrip(a, b):
    pa, pb = poly(a), poly(b)
    if pb.is_zero():
        return
    q, r = pa.divmod(pb)
    assert q * pb + r == pa
    assert r.degree < pb.degree or r.is_zero()
