"""Factorization structures: subspaces of a tensor product of dual planes.

A factorization structure of dimension m + 1 is (identified with) an
(m+1)-dimensional subspace h of the m-slot dual tensor space such that for
every slot j and generic point l on the j-th projective line, h meets the
annihilator of Sigma_{j,l} in dimension exactly one.  Those intersection
lines sweep out the factorization curves (see :mod:`.curves`).

The structure keeps an ordered basis of its image.  For Veronese and
product-type Segre-Veronese structures the stored basis is the adapted basis

    eps_0        = x_r (a^r)^{x d_r}                      (intersection point)
    eps_{j,i}    = ins_j(S_{d_j, i} x x_{r != j} (a^r)^{x d_r}),  i = 1..d_j

where S_{d, i} is the weight-i symmetric basis tensor of the pair
(a^j, b^j); with this basis the group-j curve reads
x^{d_j} eps_0 + sum_i (-1)^i x^{d_j - i} eps_{j,i} in an affine chart.
General structures store the canonical row-reduced basis of their image.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .ratlin import (
    Mat,
    Rat,
    Subspace,
    rank_of,
    rref,
    span,
    vec,
)
from .tensor import (
    ProjPoint,
    Tensor,
    contract_slot,
    kron,
    kron_vecs,
    place_slots,
    proj,
    proj_affine,
    proj_equal,
    symmetric_subspace,
    tensor_span,
)


class DimensionMismatch(Exception):
    """The assembled subspace does not have the required dimension."""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected dimension {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class QuotientDegenerate(Exception):
    """The contraction dropped the image dimension below m."""


class QuotientNotFactorization(Exception):
    """The quotient subspace fails the factorization axiom."""


@dataclass(frozen=True)
class GroupFrame:
    """Per-group coordinate frame adapted to a base point.

    ``dual0``/``dual1`` form a basis of the dual plane with ``dual0`` the base
    point a; ``prim0``/``prim1`` is the dual basis of the primal plane.  For
    the default base point (1, 0) all four are standard basis vectors.
    """

    dual0: tuple[Rat, Rat]
    dual1: tuple[Rat, Rat]
    prim0: tuple[Rat, Rat]
    prim1: tuple[Rat, Rat]

    def primal_vec(self, c0, c1) -> tuple[Rat, Rat]:
        c0, c1 = Fraction(c0), Fraction(c1)
        return (
            c0 * self.prim0[0] + c1 * self.prim1[0],
            c0 * self.prim0[1] + c1 * self.prim1[1],
        )

    def dual_vec(self, c0, c1) -> tuple[Rat, Rat]:
        c0, c1 = Fraction(c0), Fraction(c1)
        return (
            c0 * self.dual0[0] + c1 * self.dual1[0],
            c0 * self.dual0[1] + c1 * self.dual1[1],
        )


STANDARD_FRAME = GroupFrame(
    dual0=(Fraction(1), Fraction(0)),
    dual1=(Fraction(0), Fraction(1)),
    prim0=(Fraction(1), Fraction(0)),
    prim1=(Fraction(0), Fraction(1)),
)


def frame_for_base_point(a: Sequence[Rat]) -> GroupFrame:
    """Adapted frame for dual base point a (complement chosen canonically)."""
    a0, a1 = Fraction(a[0]), Fraction(a[1])
    if a0 == 0 and a1 == 0:
        raise ValueError("base point must be nonzero")
    # normalize first nonzero coordinate to 1, pick the obvious complement
    scale = 1 / (a0 if a0 != 0 else a1)
    a0, a1 = a0 * scale, a1 * scale
    b = (Fraction(0), Fraction(1)) if a0 != 0 else (Fraction(1), Fraction(0))
    # dual primal basis: solve <f_p, u_q> = delta_pq for the 2x2 frame
    det = a0 * b[1] - a1 * b[0]
    f0 = (b[1] / det, -b[0] / det)
    f1 = (-a1 / det, a0 / det)
    return GroupFrame(dual0=(a0, a1), dual1=b, prim0=f0, prim1=f1)


@dataclass(frozen=True)
class SegreVeroneseMeta:
    """Combinatorial data of a Segre-Veronese structure.

    partition: group degrees (d_1, ..., d_k), sum m.
    gammas: per group j, the 1-dimensional direction in the complementary
        slots (a Tensor over m - d_j slots, complement slots in increasing
        order).
    frames: per-group adapted frames (base points); standard by default.
    dec_form: for decomposable structures, the 2-vector a_j^r for each
        ordered pair (j, r), r != j, with
        Gamma_j = x_{r != j} (a_j^r)^{x d_r}.
    """

    partition: tuple[int, ...]
    gammas: tuple[Tensor, ...]
    frames: tuple[GroupFrame, ...]
    dec_form: Optional[dict] = None

    def __post_init__(self):
        if self.dec_form is not None:
            object.__setattr__(self, "dec_form", dict(self.dec_form))

    @property
    def k(self) -> int:
        return len(self.partition)

    @property
    def m(self) -> int:
        return sum(self.partition)

    def group_slots(self, j: int) -> list[int]:
        """1-based slots of group j (groups are numbered 1..k)."""
        start = sum(self.partition[: j - 1])
        return list(range(start + 1, start + self.partition[j - 1] + 1))

    def group_of_slot(self, slot: int) -> int:
        for j in range(1, self.k + 1):
            if slot in self.group_slots(j):
                return j
        raise ValueError(f"slot {slot} out of range")


@dataclass(frozen=True)
class FactorizationStructure:
    """An (m+1)-dimensional subspace of the m-slot dual space with a basis."""

    m: int
    basis: tuple[Tensor, ...]
    meta: Optional[SegreVeroneseMeta] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if len(self.basis) != self.m + 1:
            raise DimensionMismatch(self.m + 1, len(self.basis))
        if self.image.dim != self.m + 1:
            raise DimensionMismatch(self.m + 1, self.image.dim)

    @property
    def image(self) -> Subspace:
        if "image" not in self._cache:
            self._cache["image"] = tensor_span(self.basis)
        return self._cache["image"]

    @property
    def k(self) -> int:
        return self.meta.k if self.meta else self.m

    def partition(self) -> tuple[int, ...]:
        """Group degrees; slot-per-group when no meta is attached."""
        return self.meta.partition if self.meta else (1,) * self.m

    def group_slots(self, j: int) -> list[int]:
        return self.meta.group_slots(j) if self.meta else [j]

    def frame(self, j: int) -> GroupFrame:
        return self.meta.frames[j - 1] if self.meta else STANDARD_FRAME

    def embed(self, coords: Sequence[Rat]) -> Tensor:
        """Map h-coordinates (length m+1) to the tensor they represent."""
        out = [Fraction(0)] * (1 << self.m)
        for c, h in zip(map(Fraction, coords), self.basis):
            if c:
                for i, x in enumerate(h.coeffs):
                    out[i] += c * x
        return Tensor(self.m, tuple(out))

    def h_coordinates(self, t: Tensor) -> Optional[tuple[Rat, ...]]:
        """Coordinates of a tensor in the stored basis, or None."""
        from .ratlin import Mat, solve

        a = Mat(tuple(zip(*(h.coeffs for h in self.basis))))
        x = solve(a, t.coeffs)
        if x is None:
            return None
        return x if self.embed(x).coeffs == vec(t.coeffs) else None


def symmetric_pair_tensor(d: int, weight: int, u, v) -> Tensor:
    """Sum over all arrangements of `weight` copies of v and d - weight
    copies of u (the weight-i symmetric basis tensor of the pair)."""
    out = [Fraction(0)] * (1 << d)
    for bits in itertools.product((0, 1), repeat=d):
        if sum(bits) != weight:
            continue
        t = kron_vecs([v if b else u for b in bits])
        for i, c in enumerate(t.coeffs):
            out[i] += c
    return Tensor(d, tuple(out))


def _power_tensor(v, d: int) -> Tensor:
    return kron_vecs([v] * d)


def _product_sv_basis(
    partition: Sequence[int], frames: Sequence[GroupFrame]
) -> tuple[tuple[Tensor, ...], tuple[Tensor, ...]]:
    """Adapted basis (eps_0, eps_{j,i}) and the gammas of a product SV."""
    m = sum(partition)
    k = len(partition)
    powers = [_power_tensor(frames[j].dual0, partition[j]) for j in range(k)]
    eps0 = powers[0]
    for p in powers[1:]:
        eps0 = kron(eps0, p)
    basis = [eps0]
    gammas = []
    meta = SegreVeroneseMeta(tuple(partition), (), tuple(frames))
    for j in range(1, k + 1):
        d = partition[j - 1]
        gamma = Tensor(0, (Fraction(1),))
        for r in range(1, k + 1):
            if r != j:
                gamma = kron(gamma, powers[r - 1])
        gammas.append(gamma)
        for i in range(1, d + 1):
            s = symmetric_pair_tensor(d, i, frames[j - 1].dual0, frames[j - 1].dual1)
            basis.append(place_slots(m, meta.group_slots(j), s, gamma))
    return tuple(basis), tuple(gammas)


def build_product_sv(
    partition: Sequence[int], base_points: Optional[Sequence[Sequence[Rat]]] = None
) -> FactorizationStructure:
    """Product-type Segre-Veronese structure: Gamma_j = x_{r != j}(a^r)^{x d_r}.

    All its factorization curves pass through the common point
    x_r (a^r)^{x d_r}.  Defaults to base points (1, 0).
    """
    partition = tuple(int(d) for d in partition)
    if not partition or any(d < 1 for d in partition):
        raise ValueError("partition entries must be positive")
    k = len(partition)
    if base_points is None:
        frames = [STANDARD_FRAME] * k
    else:
        frames = [frame_for_base_point(a) for a in base_points]
    basis, gammas = _product_sv_basis(partition, frames)
    dec = {
        (j, r): frames[r - 1].dual0
        for j in range(1, k + 1)
        for r in range(1, k + 1)
        if r != j
    }
    meta = SegreVeroneseMeta(partition, gammas, tuple(frames), dec)
    return FactorizationStructure(sum(partition), basis, meta)


def build_veronese(m: int) -> FactorizationStructure:
    """The Veronese structure: symmetric tensors inside the m-slot space."""
    return build_product_sv((m,))


def build_standard_sv(
    partition: Sequence[int], gammas: Sequence[Tensor]
) -> FactorizationStructure:
    """Standard Segre-Veronese structure sum_j ins_j(S^{d_j} x Gamma_j).

    Each Gamma_j must be symmetric within every other group, and the sum of
    the k summands must have dimension m + 1 (raises DimensionMismatch
    otherwise, e.g. when some Gamma_j is not contained in the symmetric
    product of the other groups' planes).
    """
    partition = tuple(int(d) for d in partition)
    m = sum(partition)
    k = len(partition)
    if len(gammas) != k:
        raise ValueError("need one gamma per group")
    meta = SegreVeroneseMeta(partition, tuple(gammas), (STANDARD_FRAME,) * k)
    rows: list[Tensor] = []
    for j in range(1, k + 1):
        d = partition[j - 1]
        if gammas[j - 1].m != m - d:
            raise ValueError(f"gamma {j} has wrong slot count")
        for i in range(0, d + 1):
            s = symmetric_pair_tensor(
                d, i, STANDARD_FRAME.dual0, STANDARD_FRAME.dual1
            )
            rows.append(place_slots(m, meta.group_slots(j), s, gammas[j - 1]))
    image = tensor_span(rows)
    if image.dim != m + 1:
        raise DimensionMismatch(m + 1, image.dim)
    basis = tuple(Tensor(m, b) for b in image.basis)
    return FactorizationStructure(m, basis, meta)


def build_decomposable_sv(
    partition: Sequence[int], dec_form: dict
) -> FactorizationStructure:
    """Standard SV whose gammas decompose as Gamma_j = x_{r!=j}(a_j^r)^{x d_r}.

    ``dec_form`` maps ordered pairs (j, r), r != j, to 2-vectors a_j^r.
    """
    partition = tuple(int(d) for d in partition)
    k = len(partition)
    gammas = []
    for j in range(1, k + 1):
        g = Tensor(0, (Fraction(1),))
        for r in range(1, k + 1):
            if r != j:
                g = kron(g, _power_tensor(vec(dec_form[(j, r)]), partition[r - 1]))
        gammas.append(g)
    f = build_standard_sv(partition, gammas)
    meta = SegreVeroneseMeta(
        partition,
        tuple(gammas),
        (STANDARD_FRAME,) * k,
        {key: vec(v) for key, v in dec_form.items()},
    )
    return FactorizationStructure(f.m, f.basis, meta)


def product(
    f: FactorizationStructure,
    g: FactorizationStructure,
    s: Tensor,
    t: Tensor,
) -> FactorizationStructure:
    """Product structure f(h) x T + S x g(g') for S in f, T in g.

    The decomposable tensors of the product split: I x K lies in it iff
    I = S and K is in g, or K = T and I is in f.
    """
    if not f.image.contains(s.coeffs):
        raise ValueError("S is not in the first structure")
    if not g.image.contains(t.coeffs):
        raise ValueError("T is not in the second structure")
    m = f.m + g.m
    rows = [kron(h, t) for h in f.basis] + [kron(s, h) for h in g.basis]
    image = span(1 << m, [r.coeffs for r in rows])
    if image.dim != m + 1:
        raise DimensionMismatch(m + 1, image.dim)
    basis = tuple(Tensor(m, b) for b in image.basis)
    return FactorizationStructure(m, basis, None)


# ---------------------------------------------------------------------------
# Axiom verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of sampled verification of the factorization axiom.

    ``generic_dims[j-1]`` is the generic (= minimum sampled) dimension of
    image ^ Sigma^0_{j, l}; PASS requires it to be exactly 1 in every slot
    with the majority of samples attaining it.  ``exceptional`` lists
    (slot, point, dim) for samples off the generic dimension.
    """

    passed: bool
    samples_per_slot: int
    generic_dims: tuple[int, ...]
    exceptional: tuple[tuple[int, ProjPoint, int], ...]


def _sample_points(seed, slot: int, count: int, height: int = 9) -> list[ProjPoint]:
    rng = random.Random(f"{seed}:{slot}")
    pts: list[ProjPoint] = []
    seen = set()
    while len(pts) < count:
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        p = proj_affine(Fraction(num, den))
        if p.coords not in seen:
            seen.add(p.coords)
            pts.append(p)
    return pts


def intersection_dim(f: FactorizationStructure, slot: int, ell: ProjPoint) -> int:
    """dim(image ^ Sigma^0_{slot, ell}) computed as (m+1) - rank of the
    contracted basis."""
    rows = [contract_slot(h, slot, ell.coords).coeffs for h in f.basis]
    return f.m + 1 - rank_of(rows)


def verify_axiom(
    f: FactorizationStructure, seed=0, samples_per_slot: int = 5
) -> AxiomReport:
    """Sampled check that f satisfies the factorization axiom.

    Deterministic given (seed, samples_per_slot); each slot draws its own
    stream, so slots can be checked independently or concurrently.
    """
    generic = []
    exceptional = []
    passed = True
    for slot in range(1, f.m + 1):
        dims = []
        pts = _sample_points(seed, slot, samples_per_slot)
        for p in pts:
            dims.append(intersection_dim(f, slot, p))
        gen = min(dims)
        generic.append(gen)
        for p, d in zip(pts, dims):
            if d != 1:
                exceptional.append((slot, p, d))
        majority = sum(1 for d in dims if d == 1) * 2 > len(dims)
        if gen != 1 or not majority:
            passed = False
    return AxiomReport(passed, samples_per_slot, tuple(generic), tuple(exceptional))


def quotient(
    f: FactorizationStructure, slot: int, lam: ProjPoint, check: bool = True
) -> FactorizationStructure:
    """Quotient structure: the image of f under the slot contraction at lam.

    Raises QuotientDegenerate when the contracted image drops below
    dimension m, and QuotientNotFactorization when the sampled axiom check
    fails (the quotient is a factorization structure only for lam in an
    open subset of the line).
    """
    if f.m < 2:
        raise ValueError("quotient needs at least two slots")
    rows = [contract_slot(h, slot, lam.coords).coeffs for h in f.basis]
    image = span(1 << (f.m - 1), rows)
    if image.dim < f.m:
        raise QuotientDegenerate(
            f"contraction at slot {slot}, {lam} has rank {image.dim} < {f.m}"
        )
    basis = tuple(Tensor(f.m - 1, b) for b in image.basis)
    g = FactorizationStructure(f.m - 1, basis, None)
    if check:
        report = verify_axiom(g, seed=7, samples_per_slot=5)
        if not report.passed:
            raise QuotientNotFactorization(
                f"axiom fails on quotient: generic dims {report.generic_dims}"
            )
    return g


# ---------------------------------------------------------------------------
# Full products of decomposable structures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitTree:
    """Nested full-product decomposition of a decomposable SV structure.

    ``group`` is the group (in the original numbering) split off at this
    level, ``q`` the common slot direction shared by the other groups there,
    and ``admissible`` all groups that admit a split at this level (the
    first is taken).  ``child`` covers the remaining groups; a leaf has
    ``child is None``.
    """

    group: int
    q: Optional[tuple[Rat, Rat]]
    admissible: tuple[int, ...]
    child: Optional["SplitTree"]

    def order(self) -> list[int]:
        node, out = self, []
        while node is not None:
            out.append(node.group)
            node = node.child
        return out


@dataclass(frozen=True)
class NoSplit:
    """Returned when no (further) full-product split exists."""

    reason: str


def full_product_split(
    partition: Sequence[int], dec_form: dict
) -> SplitTree | NoSplit:
    """Full-product decomposition of a decomposable Segre-Veronese structure.

    Group j splits off when all other groups' gammas share one direction
    q = a_i^j in group j's slots; the recursion then removes group j.
    Returns the nested split tree, or NoSplit with a diagnostic (including
    when the declared data does not assemble to dimension m + 1).
    """
    partition = tuple(int(d) for d in partition)
    try:
        build_decomposable_sv(partition, dec_form)
    except DimensionMismatch as e:
        return NoSplit(f"not a factorization structure: {e}")

    def rec(groups: list[int]) -> SplitTree | NoSplit:
        if len(groups) == 1:
            j = groups[0]
            return SplitTree(j, None, (j,), None)
        admissible = []
        for j in groups:
            others = [i for i in groups if i != j]
            first = vec(dec_form[(others[0], j)])
            if all(proj_equal(vec(dec_form[(i, j)]), first) for i in others[1:]):
                admissible.append(j)
        if not admissible:
            return NoSplit(
                f"no group among {groups} has a common direction in the others"
            )
        j = admissible[0]
        sub = rec([i for i in groups if i != j])
        if isinstance(sub, NoSplit):
            return sub
        q = vec(dec_form[([i for i in groups if i != j][0], j)])
        return SplitTree(j, q, tuple(admissible), sub)

    return rec(list(range(1, len(partition) + 1)))


def veronese_lift(
    segre_dec_form: dict, degrees: Sequence[int]
) -> FactorizationStructure:
    """Lift a decomposable Segre structure (all degrees 1) to the
    decomposable Segre-Veronese with the given group degrees, raising each
    slot direction to the matching tensor power."""
    degrees = tuple(int(d) for d in degrees)
    k = len(degrees)
    # validate the Segre input itself
    build_decomposable_sv((1,) * k, segre_dec_form)
    return build_decomposable_sv(degrees, segre_dec_form)
