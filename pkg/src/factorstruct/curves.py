"""Factorization curves: the slot-wise rational curves cut out by a structure.

For slot j and a point l on the j-th line, the structure meets the
annihilator of Sigma_{j,l} in a single line (for generic l); moving l sweeps
a rational curve of degree at most m in P(h).  Its value at l is l^0 x T in
the j-th slot, which is what membership testing exploits: a point lies on the
curve iff its slot-j flattening has rank one and the induced line inverts to
a parameter.

Curves are represented by an (m+1)-tuple of polynomials (h-coordinates in the
structure's stored basis), gcd-free and sign-normalized; the tuple is the
affine part of its degree-d homogenization, which is evaluated exactly on all
of P^1 (the parameter [0 : 1] is the point at infinity).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ratlin import (
    DegenerateRowSelection,
    Mat,
    Poly,
    Rat,
    kernel_vector_minors,
    poly,
    poly_gcd,
    poly_gcd_reduce,
    rank_of,
    rational_content,
    sign_normalize,
    vec,
)
from .structure import FactorizationStructure
from .tensor import (
    ProjPoint,
    Tensor,
    insert_bit,
    proj,
    proj_affine,
    proj_equal,
    slot_flattening,
)

ZERO = Poly(())
ONE = poly([1])


@dataclass(frozen=True)
class FactorizationCurve:
    """Curve of a slot: h-coordinates as polynomials in the affine parameter.

    ``coords`` has length m + 1; ``degree`` is the homogenization degree
    (= max component degree after gcd reduction), at most m.
    """

    slot: int
    coords: tuple[Poly, ...]
    degree: int

    def value(self, ell: ProjPoint) -> tuple[Rat, ...]:
        return tuple(p.eval_h(ell.s, ell.t, self.degree) for p in self.coords)


def _contraction_rows(f: FactorizationStructure, slot: int) -> list[list[Poly]]:
    """The 2^(m-1) x (m+1) polynomial matrix of slot contraction against
    (1, x): entry (b, a) is the b-th coefficient of the contracted basis
    tensor H_a."""
    m = f.m
    rows = []
    for b in range(1 << (m - 1)):
        i0 = insert_bit(b, slot, 0, m)
        i1 = insert_bit(b, slot, 1, m)
        rows.append(
            [poly([h.coeffs[i0], h.coeffs[i1]]) for h in f.basis]
        )
    return rows


def _select_rows(rows: list[list[Poly]], need: int, budget: int = 8) -> list[int]:
    """Indices of `need` rows independent at some sample parameter."""
    for x0 in range(budget):
        x0 = Fraction(x0)
        numeric = [[p(x0) for p in r] for r in rows]
        chosen: list[int] = []
        basis: list[list[Fraction]] = []
        for idx, r in enumerate(numeric):
            if rank_of(basis + [r]) > len(basis):
                basis.append(list(r))
                chosen.append(idx)
                if len(chosen) == need:
                    return chosen
    raise DegenerateRowSelection(
        f"no {need} independent contraction rows within the retry budget"
    )


def curve_for_slot(f: FactorizationStructure, slot: int) -> FactorizationCurve:
    """Compute the factorization curve of a slot by Cramer's rule.

    Builds the contraction conditions (linear in the parameter), selects m
    independent rows and takes the signed maximal minors; the gcd-reduced
    result parametrizes the curve.  Cached on the structure.
    """
    key = ("curve", slot)
    if key in f._cache:
        return f._cache[key]
    rows = _contraction_rows(f, slot)
    chosen = _select_rows(rows, f.m)
    coords = kernel_vector_minors([rows[i] for i in chosen])
    degree = max(p.degree for p in coords if not p.is_zero())
    curve = FactorizationCurve(slot, tuple(coords), degree)
    f._cache[key] = curve
    return curve


def curve_point(c: FactorizationCurve, ell: ProjPoint) -> tuple[Rat, ...]:
    """Evaluate the curve (total on P^1), sign-normalized h-coordinates."""
    return sign_normalize(c.value(ell))


def _poly_tensor(f: FactorizationStructure, c: FactorizationCurve) -> list[Poly]:
    """The curve as a vector of 2^m polynomials (affine parameter)."""
    out = [ZERO] * (1 << f.m)
    for p, h in zip(c.coords, f.basis):
        if p.is_zero():
            continue
        for i, coeff in enumerate(h.coeffs):
            if coeff:
                out[i] = out[i] + p.scale(coeff)
    return out


def curve_membership(
    f: FactorizationStructure, c: FactorizationCurve, p: Sequence[Rat]
) -> Optional[ProjPoint]:
    """Invert the curve at a point given in h-coordinates.

    Returns the parameter l with curve_point(c, l) proportional to p, or
    None when p is not on the curve.  Uses the rank-one slot flattening: on
    the curve the slot carries l^0 = (t, -s), which inverts to [s : t].
    """
    t = f.embed(vec(p))
    if t.is_zero():
        return None
    flat = slot_flattening(t, c.slot)
    row0, row1 = flat.entries
    # rank must be at most one
    for a, b in itertools.combinations(range(len(row0)), 2):
        if row0[a] * row1[b] - row0[b] * row1[a] != 0:
            return None
    col = next((i for i in range(len(row0)) if row0[i] or row1[i]), None)
    if col is None:
        return None
    u, w = row0[col], row1[col]  # l^0 = (u, w) = (t, -s)
    ell = proj(-w, u)
    value = curve_point(c, ell)
    return ell if proj_equal_vec(value, sign_normalize(vec(p))) else None


def proj_equal_vec(a: Sequence[Rat], b: Sequence[Rat]) -> bool:
    """Projective equality of vectors of any length (all 2x2 minors)."""
    pivot = next((i for i in range(len(a)) if a[i] or b[i]), None)
    if pivot is None:
        return True
    if (a[pivot] == 0) != (b[pivot] == 0):
        return False
    return all(
        a[pivot] * b[i] - b[pivot] * a[i] == 0 for i in range(len(a))
    )


def curves_equivalent(
    f: FactorizationStructure, c1: FactorizationCurve, c2: FactorizationCurve
) -> bool:
    """Whether two curves have the same image.

    Checks deg(c1) * deg(c2) + 1 distinct sample points of each curve for
    membership on the other; distinct rational curves can only share that
    many points.
    """
    n = c1.degree * c2.degree + 1
    for k in range(n):
        p1 = curve_point(c1, proj_affine(k))
        if curve_membership(f, c2, p1) is None:
            return False
        p2 = curve_point(c2, proj_affine(k))
        if curve_membership(f, c1, p2) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# Decomposability
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionCertificate:
    """Witness that a curve is decomposable.

    The curve equals (x_{r in S} g_r l^0) x Gamma up to slot order: ``slots``
    maps each moving slot r in S to its invertible 2x2 matrix g_r (from the
    degree-one factor (a0 + a1 x, b0 + b1 x) -> [[a0, a1], [b0, b1]]), and
    ``gamma`` is the constant tensor over the complementary slots (in
    increasing slot order).
    """

    slots: dict
    gamma: Tensor

    @property
    def moving_slots(self) -> tuple[int, ...]:
        return tuple(sorted(self.slots))


@dataclass(frozen=True)
class Indecomposable:
    """No decomposition exists; `slot` is a slot that fails to peel."""

    slot: int
    reason: str


def _peel(entries: list[Poly], slots: list[int]):
    """Try to factor one slot out of a polynomial tensor.

    Returns (slot, (a0, a1) factor polys, cofactor entries, remaining slots)
    or None when no slot's flattening has rank one.
    """
    mm = len(slots)
    for pos in range(1, mm + 1):
        half = 1 << (mm - 1)
        r0 = [entries[insert_bit(i, pos, 0, mm)] for i in range(half)]
        r1 = [entries[insert_bit(i, pos, 1, mm)] for i in range(half)]
        ok = True
        for a, b in itertools.combinations(range(half), 2):
            if not (r0[a] * r1[b] - r0[b] * r1[a]).is_zero():
                ok = False
                break
        if not ok:
            continue
        col = next(
            (i for i in range(half) if not (r0[i].is_zero() and r1[i].is_zero())),
            None,
        )
        if col is None:
            return None  # zero tensor; cannot happen for curves
        a0, a1 = poly_gcd_reduce((r0[col], r1[col]))
        div = a0 if not a0.is_zero() else a1
        src = r0 if not a0.is_zero() else r1
        cof = [p.exact_div(div) for p in src]
        return slots[pos - 1], (a0, a1), cof, slots[:pos - 1] + slots[pos:]
    return None


def decompose_curve(
    f: FactorizationStructure, c: FactorizationCurve
) -> DecompositionCertificate | Indecomposable:
    """Decide decomposability of a curve and certify it.

    Peels rank-one slot flattenings until the residual tensor is constant in
    the parameter.  A certificate requires every peeled factor to have
    degree at most one, exactly deg(c) degree-one factors with invertible
    matrices, and the constants (with the residual) assembling into Gamma;
    the reconstruction is re-verified at deg(c) + 2 sample parameters.
    """
    entries = _poly_tensor(f, c)
    slots = list(range(1, f.m + 1))
    factors: dict[int, tuple[Poly, Poly]] = {}
    while max(p.degree for p in entries) > 0:
        step = _peel(entries, slots)
        if step is None:
            bad = next(s for s in slots)
            return Indecomposable(bad, "a parameter-dependent slot does not peel")
        slot_id, fac, entries, slots = step
        factors[slot_id] = fac
    # classify factors
    moving: dict[int, Mat] = {}
    constant: dict[int, tuple[Rat, Rat]] = {}
    for slot_id, (a, b) in factors.items():
        deg = max(a.degree, b.degree)
        if deg > 1:
            return Indecomposable(slot_id, f"slot factor has degree {deg} > 1")
        if deg == 1:
            g = Mat(
                (
                    (a(0), a.coeffs[1] if a.degree == 1 else Fraction(0)),
                    (b(0), b.coeffs[1] if b.degree == 1 else Fraction(0)),
                )
            )
            d = g.entries[0][0] * g.entries[1][1] - g.entries[0][1] * g.entries[1][0]
            if d == 0:
                return Indecomposable(slot_id, "degree-one slot factor not invertible")
            moving[slot_id] = g
        else:
            constant[slot_id] = (a(0), b(0))
    if len(moving) != c.degree:
        return Indecomposable(
            min(factors, default=1),
            f"{len(moving)} moving slots but curve degree {c.degree}",
        )
    # assemble Gamma over the complement of the moving slots
    gamma_slots = sorted(set(range(1, f.m + 1)) - set(moving))
    g_count = len(gamma_slots)
    # `slots` now lists the never-peeled slots (increasing); `entries` is the
    # constant residual tensor over them
    coeffs = []
    for i in range(1 << g_count):
        val = Fraction(1)
        ridx = 0
        for pos, s in enumerate(gamma_slots):
            bit = (i >> (g_count - 1 - pos)) & 1
            if s in constant:
                val *= constant[s][bit]
            else:
                ridx = (ridx << 1) | bit
        coeffs.append(val * entries[ridx](0))
    gamma = Tensor(g_count, tuple(coeffs))
    cert = DecompositionCertificate(moving, gamma)
    # re-verify the reconstruction at deg + 2 samples
    original = _poly_tensor(f, c)
    for k in range(c.degree + 2):
        x = Fraction(k)
        recon = _reconstruct(f.m, cert, x)
        orig = [p(x) for p in original]
        if not proj_equal_vec(recon, orig):
            return Indecomposable(c.slot, "reconstruction mismatch")
    return cert


def _reconstruct(m, cert: DecompositionCertificate, x) -> list[Rat]:
    slot_vec = {}
    for s, g in cert.slots.items():
        slot_vec[s] = (
            g.entries[0][0] + g.entries[0][1] * x,
            g.entries[1][0] + g.entries[1][1] * x,
        )
    gamma_slots = sorted(set(range(1, m + 1)) - set(cert.slots))
    out = []
    for i in range(1 << m):
        val = Fraction(1)
        gidx = 0
        for s in range(1, m + 1):
            bit = (i >> (m - s)) & 1
            if s in slot_vec:
                val *= slot_vec[s][bit]
            else:
                gidx = (gidx << 1) | bit
        out.append(val * cert.gamma.coeffs[gidx])
    return out


# ---------------------------------------------------------------------------
# Intersections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveIntersections:
    """Rational common points of two inequivalent curves.

    ``points`` holds (h-coordinates, parameter on c1, parameter on c2);
    ``possible_nonrational`` flags a nonconstant eliminant factor with no
    rational root (further intersections may exist off Q).
    """

    points: tuple[tuple[tuple[Rat, ...], ProjPoint, ProjPoint], ...]
    possible_nonrational: bool


def _rational_roots(p: Poly) -> tuple[list[Fraction], bool]:
    """All rational roots (without multiplicity) and whether a nonconstant
    rootless factor remains."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    content = rational_content(p.coeffs)
    p = p.scale(1 / content)
    roots = []
    # factor out x = 0
    while p.coeffs and p.coeffs[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        p = Poly(p.coeffs[1:])
    # integer-coefficient rational root scan
    mult = 1
    for c in p.coeffs:
        mult = mult * c.denominator // math.gcd(mult, c.denominator)
    ip = [int(c * mult) for c in p.coeffs]
    if len(ip) > 1:
        a0, an = abs(ip[0]), abs(ip[-1])
        for num in _divisors(a0):
            for den in _divisors(an):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    while p(cand) == 0:
                        if cand not in roots:
                            roots.append(cand)
                        p = p.exact_div(poly([-cand, 1]))
    return roots, p.degree > 0


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_eval_h_poly(p: Poly, s: Poly, t: Poly, degree: int) -> Poly:
    """Homogenized evaluation with polynomial arguments."""
    acc = ZERO
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        term = poly([c])
        for _ in range(i):
            term = term * t
        for _ in range(degree - i):
            term = term * s
        acc = acc + term
    return acc


def curve_intersections(
    f: FactorizationStructure, c1: FactorizationCurve, c2: FactorizationCurve
) -> CurveIntersections:
    """Rational intersection points of two inequivalent curves.

    Candidates come from eliminating the parameter: a point of c1 on c2 must
    have rank-one slot flattening at c2's slot, giving polynomial conditions
    in c1's parameter whose rational roots are scanned; when the flattening
    is identically rank one the induced parameter map is substituted into c2
    instead.  Every candidate (and both points at infinity) is confirmed by
    exact membership.
    """
    mm = f.m
    entries = _poly_tensor(f, c1)
    half = 1 << (mm - 1)
    r0 = [entries[insert_bit(i, c2.slot, 0, mm)] for i in range(half)]
    r1 = [entries[insert_bit(i, c2.slot, 1, mm)] for i in range(half)]
    minors = []
    for a, b in itertools.combinations(range(half), 2):
        q = r0[a] * r1[b] - r0[b] * r1[a]
        if not q.is_zero():
            minors.append(q)
    if minors:
        g = minors[0]
        for q in minors[1:]:
            g = poly_gcd(g, q)
            if g.degree == 0:
                break
        if g.degree == 0:
            roots, leftover = [], False
        else:
            roots, leftover = _rational_roots(g)
    else:
        # identically rank one: read off the parameter map and substitute
        col = next(i for i in range(half) if not (r0[i].is_zero() and r1[i].is_zero()))
        u, w = poly_gcd_reduce((r0[col], r1[col]))  # l^0(x) = (u, w)
        s_p, t_p = -w, u
        conds = []
        for a, b in itertools.combinations(range(mm + 1), 2):
            qa = _poly_eval_h_poly(c2.coords[a], s_p, t_p, c2.degree)
            qb = _poly_eval_h_poly(c2.coords[b], s_p, t_p, c2.degree)
            q = qa * c1.coords[b] - qb * c1.coords[a]
            if not q.is_zero():
                conds.append(q)
        if not conds:
            raise ValueError("curves are equivalent")
        g = conds[0]
        for q in conds[1:]:
            g = poly_gcd(g, q)
            if g.degree == 0:
                break
        if g.degree == 0:
            roots, leftover = [], False
        else:
            roots, leftover = _rational_roots(g)
    found = []
    seen = set()
    candidates = [proj_affine(r) for r in roots] + [ProjPoint(0, 1)]
    for ell1 in candidates:
        p = curve_point(c1, ell1)
        ell2 = curve_membership(f, c2, p)
        if ell2 is not None and p not in seen:
            seen.add(p)
            found.append((p, ell1, ell2))
    # also the point at infinity of c2 (may hit c1 at a parameter already
    # scanned; membership dedupes)
    p_inf2 = curve_point(c2, ProjPoint(0, 1))
    ell1_back = curve_membership(f, c1, p_inf2)
    if ell1_back is not None and p_inf2 not in seen:
        found.append((p_inf2, ell1_back, ProjPoint(0, 1)))
    return CurveIntersections(tuple(found), leftover)
