"""Vandermonde identities, common lattices, and Delzant-type checks.

The curve-point matrix of m + 1 distinct parameters on the degree-m curve is
a (signed) Vandermonde matrix; its inverse is expressed by elementary
symmetric polynomials, giving the exact identities

    sum_r (1 / Delta_r) (x_r^m, -x_r^{m-1}, ..., (-1)^m) = (1, 0, ..., 0)
    sum_r (-1)^{j-1} x_r^{m+1-j} d_sigma_i / d_x_r / Delta_r = delta_ij

with Delta_r = prod_{q != r} (x_r - x_q) and d_sigma_i / d_x_r the elementary
symmetric polynomial sigma_{i-1} of the other m parameters.

The lattice half provides the lcm-of-denominators construction of a common
lattice for finitely many rational directions, and the Delzant /
rational-Delzant verdicts for simplex sections and general compatible
polytopes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .polyhedra import BetaNotInterior, Chart, Cone, FacetCertificate, curve_in_chart
from .ratlin import (
    Mat,
    Rat,
    RatVec,
    dot,
    rank_of,
    solve,
    vec,
    vec_scale,
    vec_sub,
)
from .structure import FactorizationStructure
from .tensor import kron_vecs


def elementary_symmetric(values: Sequence[Rat], i: int) -> Rat:
    """sigma_i of the values (sigma_0 = 1)."""
    if i < 0 or i > len(values):
        return Fraction(0)
    acc = Fraction(0)
    for combo in itertools.combinations(values, i):
        term = Fraction(1)
        for v in combo:
            term *= v
        acc += term
    return acc if i > 0 else Fraction(1)


def _deltas(xs: Sequence[Rat]) -> list[Rat]:
    out = []
    for r, xr in enumerate(xs):
        d = Fraction(1)
        for q, xq in enumerate(xs):
            if q != r:
                d *= xr - xq
        out.append(d)
    return out


def vandermonde_identity(xs: Sequence[Rat]) -> RatVec:
    """Exact evaluation of sum_r (1/Delta_r)(x_r^m, ..., (-1)^m).

    xs holds m + 1 pairwise distinct rationals; the result is asserted to be
    (1, 0, ..., 0) and returned.
    """
    xs = vec(xs)
    m = len(xs) - 1
    if len(set(xs)) != len(xs):
        raise ValueError("parameters must be pairwise distinct")
    deltas = _deltas(xs)
    total = [Fraction(0)] * (m + 1)
    for xr, dr in zip(xs, deltas):
        for j in range(m + 1):
            total[j] += (-1) ** j * xr ** (m - j) / dr
    expected = tuple(
        Fraction(1) if j == 0 else Fraction(0) for j in range(m + 1)
    )
    assert tuple(total) == expected, f"identity fails: {total}"
    return tuple(total)


def vandermonde_full_check(xs: Sequence[Rat]) -> bool:
    """The full delta_ij family of inverse-Vandermonde identities.

    Uses the symbolic derivative d sigma_i / d x_r = sigma_{i-1} of the
    remaining parameters.  Returns True; raises AssertionError with the
    offending (i, j) otherwise.
    """
    xs = vec(xs)
    m = len(xs) - 1
    if len(set(xs)) != len(xs):
        raise ValueError("parameters must be pairwise distinct")
    deltas = _deltas(xs)
    for i in range(1, m + 2):
        for j in range(1, m + 2):
            acc = Fraction(0)
            for r, xr in enumerate(xs):
                others = [xq for q, xq in enumerate(xs) if q != r]
                dsigma = elementary_symmetric(others, i - 1)
                acc += (-1) ** (j - 1) * xr ** (m + 1 - j) * dsigma / deltas[r]
            expected = Fraction(1 if i == j else 0)
            assert acc == expected, f"delta identity fails at (i={i}, j={j}): {acc}"
    return True


def generalized_vi_check(
    f: FactorizationStructure,
    beta: Sequence[Rat],
    xs: Sequence[Rat],
    i: int,
    j: int,
    chart: Chart,
) -> Rat:
    """Generalized Vandermonde identity through the transpose map.

    With x = x_r (1, x_r) (per-slot, in the adapted frames) and
    mu = phi^t(x) / <phi^t(x), beta>, the derivative d mu / d x_i
    annihilates beta (asserted) and pairs to zero with the chart-normalized
    curve point of slot j at x_j whenever i != j.  Returns that pairing.
    """
    if i == j:
        raise ValueError("slots i and j must be distinct")
    xs = vec(xs)
    if len(xs) != f.m:
        raise ValueError(f"need {f.m} slot parameters")
    beta = vec(beta)
    meta_group = (
        (lambda s: f.meta.group_of_slot(s)) if f.meta else (lambda s: s)
    )
    slot_vecs = [
        f.frame(meta_group(s)).primal_vec(1, xs[s - 1]) for s in range(1, f.m + 1)
    ]
    x_tensor = kron_vecs(slot_vecs)
    d_vecs = list(slot_vecs)
    d_vecs[i - 1] = f.frame(meta_group(i)).primal_vec(0, 1)
    dx_tensor = kron_vecs(d_vecs)
    phit_x = tuple(dot(h.coeffs, x_tensor.coeffs) for h in f.basis)
    phit_dx = tuple(dot(h.coeffs, dx_tensor.coeffs) for h in f.basis)
    denom = dot(phit_x, beta)
    if denom == 0:
        raise ZeroDivisionError("<phi^t(x), beta> = 0; x not in the beta-chart")
    # quotient rule, common denominator denom^2; scale away the square since
    # only the pairing's vanishing and exact value matter
    dmu = vec_sub(
        vec_scale(denom, phit_dx), vec_scale(dot(phit_dx, beta), phit_x)
    )
    dmu = vec_scale(Fraction(1) / (denom * denom), dmu)
    assert dot(dmu, beta) == 0, "d mu must annihilate beta"
    group_j = meta_group(j)
    point = curve_in_chart(f, group_j, xs[j - 1], chart)
    return dot(dmu, point)


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommonLattice:
    """Lattice containing all the input directions.

    ``basis`` spans the lattice; ``coords`` lists the (integral) lattice
    coordinates of every input vector in that basis, in input order.
    """

    basis: tuple[RatVec, ...]
    coords: tuple[RatVec, ...]


def common_lattice(
    basis_vectors: Sequence[RatVec], extras: Sequence[RatVec]
) -> CommonLattice:
    """Common lattice of basis_vectors (independent) and extras.

    Writes each extra in the given basis and divides the r-th basis vector
    by the lcm of the denominators of the r-th coordinates; over Q this
    always succeeds.  The returned coords cover basis_vectors then extras.
    """
    basis_vectors = [vec(b) for b in basis_vectors]
    n = len(basis_vectors)
    if rank_of(basis_vectors) != n:
        raise ValueError("basis vectors must be independent")
    a = Mat(tuple(zip(*basis_vectors)))
    coords = []
    for e in extras:
        x = solve(a, vec(e))
        if x is None:
            raise ValueError("extra vector outside the span of the basis")
        coords.append(x)
    lcms = []
    for r in range(n):
        ell = 1
        for c in coords:
            ell = ell * c[r].denominator // math.gcd(ell, c[r].denominator)
        lcms.append(ell)
    lattice_basis = tuple(
        vec_scale(Fraction(1, lcms[r]), basis_vectors[r]) for r in range(n)
    )
    out_coords = []
    for r in range(n):
        out_coords.append(
            tuple(Fraction(lcms[r]) if q == r else Fraction(0) for q in range(n))
        )
    for c in coords:
        out_coords.append(tuple(c[r] * lcms[r] for r in range(n)))
    for c in out_coords:
        assert all(x.denominator == 1 for x in c), "coordinates must be integral"
    return CommonLattice(lattice_basis, tuple(out_coords))


# ---------------------------------------------------------------------------
# Delzant verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DelzantVerdict:
    """Outcome of a simplex Delzant check.

    status: "Delzant" | "RationalDelzant" | "BetaNotInterior".
    coords: the barycentric solution a with beta = sum a_r C_r psi(x_r).
    rescale: scales a_r C_r making beta's coordinates all ones (None when
        beta is not interior).
    lattice: generators of the witnessing lattice (the rescaled generators;
        their classes mod beta are the polytope normals).
    """

    status: str
    coords: RatVec
    rescale: Optional[RatVec]
    lattice: Optional[tuple[RatVec, ...]]


def simplex_delzant_check(
    f: FactorizationStructure,
    xs: Sequence[Rat],
    scales: Sequence[Rat],
    beta: Sequence[Rat],
    chart: Chart,
) -> DelzantVerdict:
    """Delzant test for the simplex cone over m + 1 curve points.

    Generators are C_r times the chart-normalized curve points at x_r;
    solving beta = sum a_r g_r, the section is a simplex iff all a_r > 0,
    Delzant (with respect to the lattice spanned by the generators) iff all
    a_r coincide, and rational-Delzant otherwise, witnessed by rescaling.
    """
    xs = vec(xs)
    scales = vec(scales)
    beta = vec(beta)
    if len(xs) != f.m + 1 or len(set(xs)) != len(xs):
        raise ValueError("need m + 1 pairwise distinct parameters")
    gens = [
        vec_scale(c, curve_in_chart(f, 1, x, chart)) for c, x in zip(scales, xs)
    ]
    a = solve(Mat(tuple(zip(*gens))), beta)
    if a is None:
        raise ValueError("beta outside the span of the generators")
    if any(x <= 0 for x in a):
        return DelzantVerdict("BetaNotInterior", tuple(a), None, None)
    rescale = tuple(x * c for x, c in zip(a, scales))
    lattice = tuple(vec_scale(x, g) for x, g in zip(a, gens))
    if len(set(a)) == 1:
        return DelzantVerdict("Delzant", tuple(a), rescale, lattice)
    return DelzantVerdict("RationalDelzant", tuple(a), rescale, lattice)


@dataclass(frozen=True)
class RationalDelzantReport:
    """Common-lattice report for a general compatible polytope.

    The polytope's facet normals are the cone's extremal generators mod
    beta; ``lattice`` is their common lattice in quotient coordinates (with
    respect to an independent subset of the normals), ``normal_coords`` the
    integral lattice coordinates of every extremal generator, and
    ``vertex_delzant`` the per-vertex determinant-is-unit test (a vertex
    passes iff its incident normals form a lattice basis).
    """

    extremal: tuple[int, ...]
    lattice: CommonLattice
    normal_coords: tuple[RatVec, ...]
    vertex_delzant: tuple[bool, ...]
    delzant: bool


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    rows = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col] != 0:
                c = rows[i][col] * inv
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[col])]
    return det


def rational_delzant_check(
    cone: Cone, facets: Sequence[FacetCertificate], beta: Sequence[Rat]
) -> RationalDelzantReport:
    """Rational Delzant verdict for the compatible polytope cut by beta.

    Works in h / <beta> via explicit lifts: quotient coordinates are read
    off a basis (n_1, ..., n_m, beta) built from independent extremal
    generators.  Over Q the common lattice always exists; the polytope is
    Delzant for it iff every vertex passes the unit-determinant test.
    """
    beta = vec(beta)
    m = cone.m
    for i, g in enumerate(cone.generators):
        if dot(g, beta) <= 0:
            raise BetaNotInterior(f"<g_{i}, beta> = {dot(g, beta)} <= 0")
    # extremal generators: incident facet normals span a ray's worth (rank m)
    extremal = []
    for i in range(len(cone.generators)):
        active = [c.normal for c in facets if i in c.incident]
        if active and rank_of(active) >= m:
            extremal.append(i)
    # choose m extremal generators completing beta to a basis
    chosen: list[int] = []
    rows: list[RatVec] = [beta]
    for i in extremal:
        if rank_of(rows + [cone.generators[i]]) > len(rows):
            rows.append(cone.generators[i])
            chosen.append(i)
        if len(chosen) == m:
            break
    if len(chosen) != m:
        raise ValueError("extremal generators do not span the quotient")
    basis_mat = Mat(tuple(zip(*([cone.generators[i] for i in chosen] + [beta]))))
    quotient_coords = {}
    for i in extremal:
        x = solve(basis_mat, cone.generators[i])
        quotient_coords[i] = tuple(x[:m])
    lattice = common_lattice(
        [quotient_coords[i] for i in chosen],
        [quotient_coords[i] for i in extremal if i not in chosen],
    )
    # integral coordinates per extremal generator, in `extremal` order
    order = chosen + [i for i in extremal if i not in chosen]
    coords_by_gen = dict(zip(order, lattice.coords))
    normal_coords = tuple(coords_by_gen[i] for i in extremal)
    verdicts = []
    for c in facets:
        inc = [i for i in c.incident if i in coords_by_gen]
        if len(inc) != m:
            verdicts.append(False)
            continue
        d = _det([list(coords_by_gen[i]) for i in inc])
        verdicts.append(abs(d) == 1)
    return RationalDelzantReport(
        tuple(extremal),
        lattice,
        normal_coords,
        tuple(verdicts),
        all(verdicts),
    )
