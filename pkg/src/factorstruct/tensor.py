"""Tensors over m two-dimensional slots and slot-wise multilinear operations.

A tensor lives in the m-fold tensor product of 2-dimensional rational spaces
and is stored as its 2^m coefficients in lexicographic bitstring order with
slot 1 most significant: index i corresponds to the bitstring b_1 ... b_m of i
written in binary, and to the basis tensor e^{b_1} x ... x e^{b_m}.

Slots are numbered 1..m throughout the public API.

Projective points on a line are [s : t] pairs normalized so the first nonzero
coordinate is 1; the affine point x is [1 : x] and the point at infinity is
[0 : 1].  For l = [s : t] the annihilator line l^0 in the dual is spanned by
(t, -s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ratlin import Mat, Rat, Subspace, kernel_basis, rref, span, vec


@dataclass(frozen=True)
class ProjPoint:
    """Point [s : t] on the projective line, first nonzero coordinate 1."""

    s: Rat
    t: Rat

    def __post_init__(self):
        s, t = Fraction(self.s), Fraction(self.t)
        if s == 0 and t == 0:
            raise ValueError("[0 : 0] is not a projective point")
        scale = 1 / (s if s != 0 else t)
        object.__setattr__(self, "s", s * scale)
        object.__setattr__(self, "t", t * scale)

    @property
    def coords(self) -> tuple[Rat, Rat]:
        return (self.s, self.t)

    def is_infinity(self) -> bool:
        return self.s == 0

    def annihilator_rep(self) -> tuple[Rat, Rat]:
        """Representative (t, -s) of the annihilator line l^0."""
        return (self.t, -self.s)

    def __str__(self) -> str:
        return f"[{self.s}:{self.t}]"


def proj(s, t) -> ProjPoint:
    return ProjPoint(Fraction(s), Fraction(t))


def proj_affine(x) -> ProjPoint:
    return ProjPoint(Fraction(1), Fraction(x))


PROJ_INFINITY = ProjPoint(Fraction(0), Fraction(1))


def proj_equal(a: Sequence[Rat], b: Sequence[Rat]) -> bool:
    """Projective equality of nonzero 2-vectors via the 2x2 determinant."""
    return a[0] * b[1] - a[1] * b[0] == 0


@dataclass(frozen=True)
class Tensor:
    """Element of the m-slot tensor space, 2^m coefficients."""

    m: int
    coeffs: tuple[Rat, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vec(self.coeffs))
        if len(self.coeffs) != 1 << self.m:
            raise ValueError(f"expected {1 << self.m} coefficients")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def tensor(m: int, coeffs: Iterable) -> Tensor:
    return Tensor(m, tuple(coeffs))


def bit_at(index: int, slot: int, m: int) -> int:
    """Bit of slot `slot` (1-based, slot 1 most significant) in `index`."""
    return (index >> (m - slot)) & 1


def insert_bit(index: int, slot: int, bit: int, m: int) -> int:
    """Insert `bit` at slot position `slot` into an (m-1)-slot index,
    producing an m-slot index."""
    shift = m - slot
    high = index >> shift
    low = index & ((1 << shift) - 1)
    return (high << (shift + 1)) | (bit << shift) | low


def kron(a: Tensor, b: Tensor) -> Tensor:
    """Tensor product; a's slots come first."""
    coeffs = tuple(x * y for x in a.coeffs for y in b.coeffs)
    return Tensor(a.m + b.m, coeffs)


def kron_vecs(vectors: Sequence[Sequence[Rat]]) -> Tensor:
    """Decomposable tensor from a list of 2-vectors, slot order preserved."""
    out = Tensor(0, (Fraction(1),))
    for v in vectors:
        out = kron(out, Tensor(1, tuple(v)))
    return out


def contract_slot(t: Tensor, slot: int, v: Sequence[Rat]) -> Tensor:
    """Contract slot `slot` against the 2-vector v.

    On decomposables v_1 x ... x v_m this is <v, v_slot> v_1 x ... (slot
    omitted) ... x v_m.
    """
    v0, v1 = Fraction(v[0]), Fraction(v[1])
    m = t.m
    out = []
    for i in range(1 << (m - 1)):
        out.append(
            v0 * t.coeffs[insert_bit(i, slot, 0, m)]
            + v1 * t.coeffs[insert_bit(i, slot, 1, m)]
        )
    return Tensor(m - 1, tuple(out))


def slot_flattening(t: Tensor, slot: int) -> Mat:
    """2 x 2^(m-1) matrix; row b is the subtensor with bit b at `slot`."""
    m = t.m
    rows = []
    for b in (0, 1):
        rows.append(tuple(t.coeffs[insert_bit(i, slot, b, m)] for i in range(1 << (m - 1))))
    return Mat(tuple(rows))


def contraction_matrix(m: int, slot: int, v: Sequence[Rat]) -> Mat:
    """Matrix of the slot contraction as a 2^(m-1) x 2^m map on coefficients."""
    v0, v1 = Fraction(v[0]), Fraction(v[1])
    rows = []
    for i in range(1 << (m - 1)):
        row = [Fraction(0)] * (1 << m)
        row[insert_bit(i, slot, 0, m)] = v0
        row[insert_bit(i, slot, 1, m)] = v1
        rows.append(tuple(row))
    return Mat(tuple(rows))


def sigma_annihilator(m: int, slot: int, ell: ProjPoint) -> Subspace:
    """Annihilator of Sigma_{slot, ell}: tensors whose slot `slot` contraction
    against a representative of ell vanishes.  Dimension 2^(m-1)."""
    cm = contraction_matrix(m, slot, ell.coords)
    return Subspace(1 << m, kernel_basis(cm.entries, 1 << m))


def symmetric_basis_tensor(m: int, weight: int) -> Tensor:
    """Sum of all basis tensors whose bitstring has the given weight."""
    coeffs = [Fraction(0)] * (1 << m)
    for i in range(1 << m):
        if bin(i).count("1") == weight:
            coeffs[i] = Fraction(1)
    return Tensor(m, tuple(coeffs))


def symmetric_subspace(m: int) -> Subspace:
    """Symmetric tensors inside the m-slot space; dimension m + 1."""
    rows = [symmetric_basis_tensor(m, w).coeffs for w in range(m + 1)]
    return span(1 << m, rows)


def place_slots(
    m: int, slots: Sequence[int], a: Tensor, b: Tensor
) -> Tensor:
    """Assemble an m-slot tensor with `a` occupying the given slots (in the
    listed order) and `b` occupying the complementary slots (in increasing
    order)."""
    slots = list(slots)
    others = [s for s in range(1, m + 1) if s not in slots]
    if a.m != len(slots) or b.m != len(others):
        raise ValueError("slot count mismatch")
    coeffs = []
    for i in range(1 << m):
        ia = 0
        for s in slots:
            ia = (ia << 1) | bit_at(i, s, m)
        ib = 0
        for s in others:
            ib = (ib << 1) | bit_at(i, s, m)
        coeffs.append(a.coeffs[ia] * b.coeffs[ib])
    return Tensor(m, tuple(coeffs))


def tensor_span(tensors: Sequence[Tensor]) -> Subspace:
    if not tensors:
        raise ValueError("empty span")
    m = tensors[0].m
    return span(1 << m, [t.coeffs for t in tensors])
