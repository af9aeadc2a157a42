"""Compatible cones and polytopes of a factorization structure.

A compatible cone is generated by finitely many points on the factorization
curves, expressed in an affine chart: each generator is a curve point
normalized against a chart covector.  Facets are enumerated two ways:

* a generalized Gale evenness test driven by the curve parameters, whose
  accepted candidates are re-verified by direct pairing; and
* an independent brute-force oracle over all m-element generator subsets.

Certificates from both paths are canonicalized (primitive integer normals,
sorted incidence sets), so the two enumerations can be compared bit-exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .curves import FactorizationCurve, curve_for_slot, curve_point
from .ratlin import (
    Rat,
    RatVec,
    Subspace,
    dot,
    kernel_basis,
    primitive_integer_vec,
    rank_of,
    span,
    vec,
    vec_scale,
)
from .structure import FactorizationStructure
from .tensor import ProjPoint, Tensor, kron_vecs, place_slots, proj


class ChartDegenerate(Exception):
    """A curve point pairs to zero with the chart covector."""


class NotFullDimensional(Exception):
    """The generators do not span the full (m+1)-dimensional space."""


class BetaNotInterior(Exception):
    """The section direction is not strictly interior."""


@dataclass(frozen=True)
class Chart:
    """Affine chart on P(h): the pullback of a tensor eps to h-coordinates."""

    covector: RatVec
    epsilon: Optional[Tensor] = None


def chart_from_tensor(f: FactorizationStructure, eps: Tensor) -> Chart:
    return Chart(tuple(dot(h.coeffs, eps.coeffs) for h in f.basis), eps)


def default_chart(f: FactorizationStructure) -> Chart:
    """The standard chart eps = sum_j ins_j((0,-1)^{x d_j} x (1,0)^{x rest}).

    Every curve point with finite parameter lies in this chart; the only
    missed point of each curve is the common intersection point.  Requires
    Segre-Veronese meta data (for the grouping and base-point frames).
    """
    if f.meta is None:
        raise ValueError("default chart needs Segre-Veronese meta data")
    meta = f.meta
    total = [Fraction(0)] * (1 << f.m)
    for j in range(1, meta.k + 1):
        d = meta.partition[j - 1]
        inner = kron_vecs([f.frame(j).primal_vec(0, -1)] * d)
        outer_vecs = []
        for r in range(1, meta.k + 1):
            if r != j:
                outer_vecs.extend(
                    [f.frame(r).primal_vec(1, 0)] * meta.partition[r - 1]
                )
        outer = kron_vecs(outer_vecs)
        term = place_slots(f.m, meta.group_slots(j), inner, outer)
        for i, c in enumerate(term.coeffs):
            total[i] += c
    return chart_from_tensor(f, Tensor(f.m, tuple(total)))


def group_curve(f: FactorizationStructure, group: int) -> FactorizationCurve:
    """The factorization curve of (the first slot of) a group."""
    return curve_for_slot(f, f.group_slots(group)[0])


def curve_in_chart(
    f: FactorizationStructure, group: int, x, chart: Chart
) -> RatVec:
    """Chart-normalized curve point at the affine parameter x (h-coords).

    The parameter is taken in the group's adapted frame, so for the default
    base points the group-j value reads
    x^{d_j} eps_0 + sum_i (-1)^i x^{d_j - i} eps_{j,i}.
    """
    if isinstance(x, ProjPoint):
        ell = x
        if not x.is_infinity():
            ell = proj(*f.frame(group).primal_vec(1, x.t / x.s))
        else:
            ell = proj(*f.frame(group).primal_vec(0, 1))
    else:
        ell = proj(*f.frame(group).primal_vec(1, Fraction(x)))
    value = curve_point(group_curve(f, group), ell)
    scale = dot(value, chart.covector)
    if scale == 0:
        raise ChartDegenerate(f"group {group} parameter {x} misses the chart")
    return vec_scale(1 / scale, value)


@dataclass(frozen=True)
class Cone:
    """Compatible cone: chart-normalized curve points with provenance.

    ``provenance[i]`` is (group, affine parameter) of generator i; groups of
    parameters are the per-group sorted inputs of :func:`build_cone`.
    """

    structure: FactorizationStructure
    chart: Chart
    generators: tuple[RatVec, ...]
    provenance: tuple[tuple[int, Rat], ...]

    @property
    def m(self) -> int:
        return self.structure.m

    def group_params(self, group: int) -> list[tuple[int, Rat]]:
        """(generator index, parameter) pairs of one group."""
        return [
            (i, t) for i, (g, t) in enumerate(self.provenance) if g == group
        ]


def build_cone(
    f: FactorizationStructure, chart: Chart, params: Sequence[Sequence]
) -> Cone:
    """Cone over curve points: params[j-1] lists the affine parameters used
    on the group-j curve.  Raises NotFullDimensional when the generators do
    not span h^* (e.g. when every group contributes only d_j points)."""
    if len(params) != f.k:
        raise ValueError(f"expected parameter lists for {f.k} groups")
    gens: list[RatVec] = []
    prov: list[tuple[int, Rat]] = []
    for j, group_params in enumerate(params, start=1):
        ts = sorted(Fraction(t) for t in group_params)
        if len(set(ts)) != len(ts):
            raise ValueError(f"duplicate parameters in group {j}")
        for t in ts:
            gens.append(curve_in_chart(f, j, t, chart))
            prov.append((j, t))
    if rank_of(gens) != f.m + 1:
        raise NotFullDimensional(
            f"{len(gens)} generators span rank {rank_of(gens)} < {f.m + 1}"
        )
    return Cone(f, chart, tuple(gens), tuple(prov))


@dataclass(frozen=True)
class FacetCertificate:
    """A facet of the cone: primitive integer normal (nonnegative on all
    generators) and the sorted incidence set."""

    kind: str  # "type_one" | "type_two" | "oracle"
    normal: RatVec
    incident: tuple[int, ...]

    def key(self) -> tuple:
        return (self.incident, self.normal)


@dataclass(frozen=True)
class Rejected:
    reason: str


def _classify(cone: Cone, candidate: Sequence[int]):
    """Distribution of a candidate against the partition.

    Returns ("one", None) for exactly d_j points per group, ("two", r) when
    one group has d_i + 1, group r has d_r - 1 and the rest d_j, else None.
    """
    part = cone.structure.partition()
    counts = [0] * len(part)
    for i in candidate:
        counts[cone.provenance[i][0] - 1] += 1
    diffs = [c - d for c, d in zip(counts, part)]
    if all(x == 0 for x in diffs):
        return ("one", None)
    if sorted(diffs) == [-1] + [0] * (len(part) - 2) + [1]:
        return ("two", diffs.index(-1) + 1)
    return None


def _type_one_normal(cone: Cone, candidate: Sequence[int]) -> RatVec:
    """phi-transpose of the decomposable tensor with slot vectors (1, x_ji)."""
    f = cone.structure
    per_group: dict[int, list[Fraction]] = {}
    for i in candidate:
        g, t = cone.provenance[i]
        per_group.setdefault(g, []).append(t)
    slot_vecs = []
    for j in range(1, f.k + 1):
        frame = f.frame(j)
        for t in per_group.get(j, []):
            slot_vecs.append(frame.primal_vec(1, t))
    w = kron_vecs(slot_vecs)
    return tuple(dot(h.coeffs, w.coeffs) for h in f.basis)


def _type_two_normal(cone: Cone, r: int, chosen: Sequence[Fraction]) -> RatVec:
    """Normal of a surplus/deficit candidate: slot vector (0, 1) in the first
    group-r slot, (1, x_rq) in its other slots; the hyperplane contains every
    other group's curve, so their slot vectors may be any distinct parameters
    (the group's own base-point powers work and are used here via x = 0..)."""
    f = cone.structure
    part = f.partition()
    slot_vecs = []
    for j in range(1, f.k + 1):
        frame = f.frame(j)
        if j == r:
            slot_vecs.append(frame.primal_vec(0, 1))
            for t in chosen:
                slot_vecs.append(frame.primal_vec(1, t))
        else:
            # arbitrary distinct parameters; the normal does not depend on them
            for q in range(part[j - 1]):
                slot_vecs.append(frame.primal_vec(1, q))
    w = kron_vecs(slot_vecs)
    return tuple(dot(h.coeffs, w.coeffs) for h in f.basis)


def _verify_normal(cone: Cone, normal: RatVec, kind: str):
    """Mandatory re-verification: sign-normalize by direct pairing, check
    one-sided support and that the incident generators span a facet."""
    pairings = [dot(normal, g) for g in cone.generators]
    if all(p == 0 for p in pairings):
        return Rejected("normal vanishes on all generators")
    if any(p < 0 for p in pairings) and any(p > 0 for p in pairings):
        return Rejected("generators on both sides")
    if any(p < 0 for p in pairings):
        normal = tuple(-x for x in normal)
        pairings = [-p for p in pairings]
    incident = tuple(i for i, p in enumerate(pairings) if p == 0)
    if rank_of([cone.generators[i] for i in incident]) != cone.m:
        return Rejected("incident generators do not span a facet")
    prim = primitive_integer_vec(normal)
    # keep the inward direction: primitive_integer_vec canonicalizes the sign
    witness = next(i for i, p in enumerate(pairings) if p > 0)
    if dot(prim, cone.generators[witness]) < 0:
        prim = tuple(-x for x in prim)
    return FacetCertificate(kind, prim, incident)


def gale_facet_test(cone: Cone, candidate: Sequence[int]):
    """Generalized Gale evenness test on an m-element candidate set.

    Type One candidates (exactly d_j per group) are accepted when the test
    polynomial prod_i (x - x_ji) of each group is zero or of one constant
    sign (shared across groups) at all non-candidate parameters; Type Two
    candidates delegate to the deficient group's polynomial.  Accepted
    normals are rebuilt from the transpose map and re-verified by direct
    pairing against every generator.
    """
    candidate = tuple(sorted(candidate))
    if len(set(candidate)) != cone.m:
        return Rejected("candidate must have m distinct generators")
    cls = _classify(cone, candidate)
    if cls is None:
        return Rejected("group distribution is neither Type One nor Type Two")
    if rank_of([cone.generators[i] for i in candidate]) != cone.m:
        return Rejected("candidate generators are dependent")
    kind, r = cls
    if kind == "one":
        signs = set()
        for j in range(1, cone.structure.k + 1):
            cand_params = [
                t for i, t in cone.group_params(j) if i in candidate
            ]
            for i, t in cone.group_params(j):
                if i in candidate:
                    continue
                val = Fraction(1)
                for x in cand_params:
                    val *= t - x
                if val != 0:
                    signs.add(val > 0)
        if len(signs) > 1:
            return Rejected("evenness fails: sign change at a skipped point")
        return _verify_normal(cone, _type_one_normal(cone, candidate), "type_one")
    chosen = [t for i, t in cone.group_params(r) if i in candidate]
    signs = set()
    for i, t in cone.group_params(r):
        if i in candidate:
            continue
        val = Fraction(1)
        for x in chosen:
            val *= t - x
        if val != 0:
            signs.add(val > 0)
    if len(signs) > 1:
        return Rejected("evenness fails in the deficient group")
    return _verify_normal(cone, _type_two_normal(cone, r, chosen), "type_two")


def _sorted_certs(by_normal: dict) -> tuple[FacetCertificate, ...]:
    return tuple(sorted(by_normal.values(), key=FacetCertificate.key))


def enumerate_facets_gale(cone: Cone) -> tuple[FacetCertificate, ...]:
    """All facets via the generalized Gale condition.

    Type One candidates take exactly d_j parameters per group; Type Two
    facets depend only on the deficient group r and its d_r - 1 chosen
    parameters, so they are enumerated directly over those.  Certificates
    with equal normals are merged (the incidence is recomputed from
    pairings, so duplicates are identical).
    """
    f = cone.structure
    part = f.partition()
    by_normal: dict[RatVec, FacetCertificate] = {}
    # Type One
    group_indices = [
        [i for i, _ in cone.group_params(j)] for j in range(1, f.k + 1)
    ]
    pools = [
        itertools.combinations(group_indices[j - 1], part[j - 1])
        for j in range(1, f.k + 1)
    ]
    for combo in itertools.product(*pools):
        candidate = tuple(itertools.chain.from_iterable(combo))
        res = gale_facet_test(cone, candidate)
        if isinstance(res, FacetCertificate):
            by_normal.setdefault(res.normal, res)
    # Type Two (needs at least two groups)
    if f.k >= 2:
        for r in range(1, f.k + 1):
            params_r = [t for _, t in cone.group_params(r)]
            if part[r - 1] - 1 > len(params_r):
                continue
            for chosen in itertools.combinations(params_r, part[r - 1] - 1):
                signs = set()
                for t in params_r:
                    if t in chosen:
                        continue
                    val = Fraction(1)
                    for x in chosen:
                        val *= t - x
                    if val != 0:
                        signs.add(val > 0)
                if len(signs) > 1:
                    continue
                res = _verify_normal(
                    cone, _type_two_normal(cone, r, list(chosen)), "type_two"
                )
                if isinstance(res, FacetCertificate):
                    by_normal.setdefault(res.normal, res)
    return _sorted_certs(by_normal)


def enumerate_facets_bruteforce(cone: Cone) -> tuple[FacetCertificate, ...]:
    """Independent polyhedral oracle: scan all m-element generator subsets,
    compute the kernel normal of each full-rank subset and keep the
    one-sided ones.  No curve structure is used."""
    n = len(cone.generators)
    by_normal: dict[RatVec, FacetCertificate] = {}
    for subset in itertools.combinations(range(n), cone.m):
        rows = [cone.generators[i] for i in subset]
        kb = kernel_basis(rows, cone.m + 1)
        if len(kb) != 1:
            continue
        res = _verify_normal(cone, kb[0], "oracle")
        if isinstance(res, FacetCertificate):
            by_normal.setdefault(res.normal, res)
    return _sorted_certs(by_normal)


def facet_sets_equal(
    a: Sequence[FacetCertificate], b: Sequence[FacetCertificate]
) -> bool:
    """Bit-exact comparison of two facet enumerations (normal + incidence;
    the construction kind is not part of the identity of a facet)."""
    return [c.key() for c in a] == [c.key() for c in b]


def is_simplicial(facets: Sequence[FacetCertificate], m: int) -> bool:
    return all(len(c.incident) == m for c in facets)


# ---------------------------------------------------------------------------
# Faces from hyperplane data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceReport:
    """phi-transpose of an intersection of Sigma's, and the comparison with
    the intersection of the individual pushforwards."""

    pushforward: Subspace
    intersection_of_pushforwards: Subspace
    codim: int
    agree: bool


def face_subspace(
    f: FactorizationStructure, constraints: Sequence[tuple[int, ProjPoint]]
) -> FaceReport:
    """Push the intersection of Sigma_{slot, l} through the transpose map.

    Constraints are (slot, l) with distinct slots.  Generically the result
    has codimension r = len(constraints) and agrees with the intersection of
    the individual pushforwards.
    """
    slots = [s for s, _ in constraints]
    if len(set(slots)) != len(slots):
        raise ValueError("constraint slots must be distinct")
    m = f.m

    def push(cset: Sequence[tuple[int, ProjPoint]]) -> Subspace:
        fixed = {s: ell.coords for s, ell in cset}
        free = [s for s in range(1, m + 1) if s not in fixed]
        vecs = []
        for bits in itertools.product((0, 1), repeat=len(free)):
            per_slot = []
            it = iter(bits)
            for s in range(1, m + 1):
                if s in fixed:
                    per_slot.append(fixed[s])
                else:
                    b = next(it)
                    per_slot.append((Fraction(1 - b), Fraction(b)))
            t = kron_vecs(per_slot)
            vecs.append(tuple(dot(h.coeffs, t.coeffs) for h in f.basis))
        return span(m + 1, vecs)

    total = push(constraints)
    inter = push([constraints[0]])
    for cst in constraints[1:]:
        single = push([cst])
        from .ratlin import intersect

        inter = intersect(inter, single)
    return FaceReport(
        total, inter, (m + 1) - total.dim, total == inter
    )


# ---------------------------------------------------------------------------
# Pointedness and polytope sections
# ---------------------------------------------------------------------------


def _phase1_feasible(a_rows: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Exact phase-1 simplex: is {x >= 0 : A x = b} nonempty?  (Bland.)"""
    m_rows = len(a_rows)
    n = len(a_rows[0]) if a_rows else 0
    # make b nonnegative
    rows = []
    for r, bv in zip(a_rows, b):
        if bv < 0:
            rows.append([-x for x in r] + [Fraction(-bv)])
        else:
            rows.append(list(r) + [Fraction(bv)])
    # tableau with artificial basis; objective = sum of artificials
    basis = list(range(n, n + m_rows))
    tab = [
        r[:n]
        + [Fraction(1) if j == i else Fraction(0) for j in range(m_rows)]
        + [r[n]]
        for i, r in enumerate(rows)
    ]
    ncols = n + m_rows
    obj = [Fraction(0)] * (ncols + 1)
    for r in tab:
        for j in range(ncols + 1):
            obj[j] += r[j]
    # minimize sum of artificials <=> maximize -(sum); reduced costs for
    # nonbasic columns are obj[j] (sum over rows); iterate while positive
    while True:
        enter = next(
            (j for j in range(n) if j not in basis and obj[j] > 0), None
        )
        if enter is None:
            break
        # ratio test
        best, best_ratio = None, None
        for i, r in enumerate(tab):
            if r[enter] > 0:
                ratio = r[ncols] / r[enter]
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[best]
                ):
                    best, best_ratio = i, ratio
        if best is None:
            break  # unbounded cannot happen in phase 1
        piv = tab[best][enter]
        tab[best] = [x / piv for x in tab[best]]
        for i in range(m_rows):
            if i != best and tab[i][enter] != 0:
                c = tab[i][enter]
                tab[i] = [x - c * y for x, y in zip(tab[i], tab[best])]
        if obj[enter] != 0:
            c = obj[enter]
            obj = [x - c * y for x, y in zip(obj, tab[best])]
        basis[best] = enter
    return obj[ncols] == 0


def is_pointed(cone: Cone) -> bool:
    """Whether the cone contains no line: the only nonnegative combination
    of generators summing to zero is trivial.  Decided by an exact rational
    phase-1 simplex on {c >= 0 : sum c_i g_i = 0, sum c_i = 1}."""
    n = len(cone.generators)
    rows = [[g[a] for g in cone.generators] for a in range(cone.m + 1)]
    rows.append([Fraction(1)] * n)
    b = [Fraction(0)] * (cone.m + 1) + [Fraction(1)]
    return not _phase1_feasible(rows, b)


@dataclass(frozen=True)
class PolytopeSection:
    """The polytope sigma ^ {<., beta> = 1} of the dual of the cone.

    Vertices are the facet normals scaled to pair to one with beta; vertex i
    corresponds to facet i and inherits its incidence (the polytope facets
    correspond to the cone's extremal generators).
    """

    beta: RatVec
    vertices: tuple[RatVec, ...]
    incidence: tuple[tuple[int, ...], ...]


def polytope_section(
    cone: Cone, facets: Sequence[FacetCertificate], beta: Sequence[Rat]
) -> PolytopeSection:
    """Section of the dual cone by beta.

    beta must pair strictly positively with every generator and every facet
    normal (the latter is interiority of beta in the cone, which makes the
    scaling well-defined); otherwise BetaNotInterior is raised.
    """
    beta = vec(beta)
    for i, g in enumerate(cone.generators):
        if dot(g, beta) <= 0:
            raise BetaNotInterior(f"<g_{i}, beta> = {dot(g, beta)} <= 0")
    for c in facets:
        if dot(c.normal, beta) <= 0:
            raise BetaNotInterior("beta pairs nonpositively with a facet normal")
    vertices = tuple(
        vec_scale(1 / dot(c.normal, beta), c.normal) for c in facets
    )
    return PolytopeSection(beta, vertices, tuple(c.incident for c in facets))
