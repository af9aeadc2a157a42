"""Exact rational linear algebra.

Everything in this package runs over ``fractions.Fraction`` -- no floating
point anywhere.  This module provides the shared kernel: matrices, canonical
row-reduced subspaces (so subspace equality is plain ``==``), univariate
polynomials with rational coefficients, and the signed-minor kernel-vector
construction used to parametrize curves.

Conventions:

* ``Rat`` is ``fractions.Fraction``; JSON serialization uses ``"p/q"`` strings
  (see :func:`rat_to_str` / :func:`rat_from_str`).
* A :class:`Subspace` always stores its basis in reduced row echelon form, so
  two subspaces are equal iff their representations are equal.
* Projective 2-vectors and kernel vectors are sign-normalized so that the
  first nonzero entry (respectively the leading coefficient of the first
  nonzero polynomial component) is positive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction

RatVec = tuple[Rat, ...]


def rat(x) -> Rat:
    """Coerce ints, strings and Fractions to Rat."""
    return Fraction(x)


def rat_to_str(x: Rat) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when q == 1)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Rat:
    return Fraction(s)


def vec(entries: Iterable) -> RatVec:
    return tuple(Fraction(e) for e in entries)


def dot(a: Sequence[Rat], b: Sequence[Rat]) -> Rat:
    if len(a) != len(b):
        raise ValueError(f"dot: length mismatch {len(a)} != {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vec_add(a: Sequence[Rat], b: Sequence[Rat]) -> RatVec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[Rat], b: Sequence[Rat]) -> RatVec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a: Sequence[Rat]) -> RatVec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def is_zero_vec(a: Sequence[Rat]) -> bool:
    return all(x == 0 for x in a)


def sign_normalize(a: Sequence[Rat]) -> RatVec:
    """Flip sign so the first nonzero entry is positive (projective rep)."""
    for x in a:
        if x != 0:
            return tuple(a) if x > 0 else tuple(-y for y in a)
    return tuple(a)


def primitive_integer_vec(a: Sequence[Rat]) -> RatVec:
    """Scale a nonzero rational vector to a primitive integer vector.

    The result has integer entries with gcd 1 and positive first nonzero
    entry; this is the canonical representative of the ray spanned by ``a``.
    """
    a = tuple(Fraction(x) for x in a)
    if is_zero_vec(a):
        return a
    mult = lcm(*(x.denominator for x in a))
    ints = [x * mult for x in a]
    g = gcd(*(abs(int(x)) for x in ints))
    return sign_normalize(tuple(x / g for x in ints))


@dataclass(frozen=True)
class Mat:
    """Immutable rational matrix, row-major."""

    entries: tuple[RatVec, ...]

    def __post_init__(self):
        rows = tuple(vec(r) for r in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> RatVec:
        return self.entries[i]

    def col(self, j: int) -> RatVec:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Mat":
        return Mat(tuple(zip(*self.entries))) if self.entries else Mat(())

    def matvec(self, v: Sequence[Rat]) -> RatVec:
        return tuple(dot(r, v) for r in self.entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    return Mat(tuple(tuple(Fraction(e) for e in r) for r in rows))


def rref(rows: Sequence[Sequence[Rat]]) -> tuple[tuple[RatVec, ...], int]:
    """Reduced row echelon form; returns (nonzero rows, rank)."""
    work = [list(map(Fraction, r)) for r in rows]
    if not work:
        return (), 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                c = work[i][col]
                work[i] = [a - c * b for a, b in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return tuple(tuple(r) for r in work[:rank]), rank


def rank_of(rows: Sequence[Sequence[Rat]]) -> int:
    return rref(rows)[1]


def kernel_basis(rows: Sequence[Sequence[Rat]], ncols: int) -> tuple[RatVec, ...]:
    """Canonical basis of {v : row . v = 0 for every row}."""
    red, rank = rref(rows)
    pivots = []
    for r in red:
        pivots.append(next(j for j, x in enumerate(r) if x != 0))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return rref(basis)[0]


def solve(a: Mat, b: Sequence[Rat]) -> RatVec | None:
    """One solution of a @ x = b, or None if inconsistent."""
    aug = [list(r) + [Fraction(x)] for r, x in zip(a.entries, map(Fraction, b))]
    red, _ = rref(aug)
    n = a.ncols
    x = [Fraction(0)] * n
    # in RREF with free variables set to 0, each pivot variable reads off
    # the augmented column directly
    for r in red:
        p = next(j for j, e in enumerate(r) if e != 0)
        if p == n:
            return None
        x[p] = r[n]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^ambient with canonical (RREF) basis.

    Equality of subspaces is equality of the dataclass, because the stored
    basis is the unique reduced row echelon basis.
    """

    ambient: int
    basis: tuple[RatVec, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Rat]) -> bool:
        return rank_of(list(self.basis) + [vec(v)]) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)


def span(ambient: int, rows: Iterable[Sequence[Rat]]) -> Subspace:
    red, _ = rref([vec(r) for r in rows])
    return Subspace(ambient, red)


def annihilator(s: Subspace) -> Subspace:
    """Covectors vanishing on s (coordinate pairing)."""
    return Subspace(s.ambient, kernel_basis(s.basis, s.ambient))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    conditions = list(annihilator(a).basis) + list(annihilator(b).basis)
    return Subspace(a.ambient, kernel_basis(conditions, a.ambient))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return span(a.ambient, list(a.basis) + list(b.basis))


# ---------------------------------------------------------------------------
# Univariate polynomials over Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial; coeffs low-to-high with no trailing zeros."""

    coeffs: tuple[Rat, ...]

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Rat:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Rat:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_h(self, s, t, degree: int) -> Rat:
        """Evaluate the degree-`degree` homogenization at (s, t)."""
        s, t = Fraction(s), Fraction(t)
        acc = Fraction(0)
        for i, c in enumerate(self.coeffs):
            acc += c * t**i * s ** (degree - i)
        return acc

    def __add__(self, o: "Poly") -> "Poly":
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly(tuple(out))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, o: "Poly") -> "Poly":
        return self + (-o)

    def __mul__(self, o: "Poly") -> "Poly":
        if self.is_zero() or o.is_zero():
            return ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(tuple(out))

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(tuple(c * x for x in self.coeffs))

    def divmod(self, o: "Poly") -> tuple["Poly", "Poly"]:
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(o.coeffs) + 1)
        rem = list(self.coeffs)
        d, lead = o.degree, o.leading()
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            c = rem[-1] / lead
            k = len(rem) - 1 - d
            q[k] = c
            for i, oc in enumerate(o.coeffs):
                rem[k + i] -= c * oc
            rem.pop()
        return Poly(tuple(q)), Poly(tuple(rem))

    def exact_div(self, o: "Poly") -> "Poly":
        q, r = self.divmod(o)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        return self if self.is_zero() else self.scale(1 / self.leading())

    def derivative(self) -> "Poly":
        return Poly(tuple(c * (i + 1) for i, c in enumerate(self.coeffs[1:], 0)))


ZERO = Poly(())
ONE = Poly((Fraction(1),))
X = Poly((Fraction(0), Fraction(1)))


def poly(coeffs: Iterable) -> Poly:
    return Poly(tuple(Fraction(c) for c in coeffs))


def poly_from_roots(roots: Iterable) -> Poly:
    p = ONE
    for r in roots:
        p = p * Poly((-Fraction(r), Fraction(1)))
    return p


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the rational Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def rational_content(values: Iterable[Rat]) -> Rat:
    """gcd(numerators)/lcm(denominators) over the nonzero values (or 0)."""
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    num = gcd(*(abs(v.numerator) for v in vals))
    den = lcm(*(v.denominator for v in vals))
    return Fraction(num, den)


def poly_gcd_reduce(components: Sequence[Poly]) -> tuple[Poly, ...]:
    """Divide a polynomial vector by its common factor and content.

    Returns the components divided by the monic gcd of all components and by
    the rational content of the remaining coefficients, sign-normalized so
    the leading coefficient of the first nonzero component is positive.
    """
    nonzero = [p for p in components if not p.is_zero()]
    if not nonzero:
        return tuple(components)
    g = nonzero[0]
    for p in nonzero[1:]:
        g = poly_gcd(g, p)
        if g.degree == 0:
            break
    reduced = [p.exact_div(g) if not p.is_zero() else p for p in components]
    content = rational_content(itertools.chain.from_iterable(p.coeffs for p in reduced))
    reduced = [p.scale(1 / content) for p in reduced]
    first = next(p for p in reduced if not p.is_zero())
    if first.leading() < 0:
        reduced = [-p for p in reduced]
    return tuple(reduced)


def poly_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix (Laplace along first column,
    memoized over row subsets)."""
    n = len(rows)
    if n == 0:
        return ONE
    cache: dict[tuple[int, ...], Poly] = {}

    def det(rs: tuple[int, ...], col: int) -> Poly:
        if not rs:
            return ONE
        key = rs
        if key in cache:
            return cache[key]
        acc = ZERO
        for k, r in enumerate(rs):
            e = rows[r][col]
            if not e.is_zero():
                sub = det(tuple(x for x in rs if x != r), col + 1)
                term = e * sub
                acc = acc + term if k % 2 == 0 else acc - term
        cache[key] = acc
        return acc

    return det(tuple(range(n)), 0)


class DegenerateRowSelection(Exception):
    """No independent row selection was found within the retry budget."""


def kernel_vector_minors(
    rows: Sequence[Sequence[Poly]],
) -> tuple[Poly, ...]:
    """Kernel vector of an n x (n+1) polynomial matrix via signed minors.

    Component i is (-1)^i times the maximal minor obtained by deleting
    column i; the result is annihilated by every row, and is returned
    gcd-reduced and sign-normalized (see :func:`poly_gcd_reduce`).
    """
    n = len(rows)
    ncols = len(rows[0])
    if ncols != n + 1:
        raise ValueError("expected an n x (n+1) matrix")
    comps = []
    for i in range(ncols):
        sub = [[r[j] for j in range(ncols) if j != i] for r in rows]
        d = poly_det(sub)
        comps.append(d if i % 2 == 0 else -d)
    if all(c.is_zero() for c in comps):
        raise DegenerateRowSelection("all maximal minors vanish identically")
    return poly_gcd_reduce(comps)
