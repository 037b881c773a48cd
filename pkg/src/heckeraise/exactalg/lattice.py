"""Integer lattices inside Z^n, stored by a canonical Hermite basis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import NotSublattice
from .intmat import hermite_rows, integer_kernel, smith_normal_form


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank.

    ``basis`` is the row Hermite form of any generating set, so two lattices
    compare equal exactly when they are the same subgroup.
    """

    ambient_rank: int
    basis: tuple

    @classmethod
    def from_generators(cls, vectors, ambient_rank: int | None = None) -> "Lattice":
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if ambient_rank is None:
            if not vectors:
                raise ValueError("ambient_rank is required for an empty generating set")
            ambient_rank = len(vectors[0])
        for v in vectors:
            if len(v) != ambient_rank:
                raise ValueError("generator length does not match ambient rank")
        H = hermite_rows(vectors, ambient_rank)
        return cls(ambient_rank, tuple(tuple(r) for r in H))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def scaled(self, c: int) -> "Lattice":
        return Lattice.from_generators([[c * x for x in v] for v in self.basis], self.ambient_rank)

    def coordinates(self, v):
        """Rational coordinates of ``v`` in the basis, or None if v is outside the Q-span."""
        coeffs = []
        rest = [Fraction(x) for x in v]
        for row in self.basis:
            piv = next(i for i, x in enumerate(row) if x)
            c = rest[piv] / row[piv]
            coeffs.append(c)
            if c:
                rest = [a - c * b for a, b in zip(rest, row)]
        if any(rest):
            return None
        return coeffs

    def __contains__(self, v) -> bool:
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(v in self for v in other.basis)


def lattice_sum(L1: Lattice, L2: Lattice) -> Lattice:
    _same_ambient(L1, L2)
    return Lattice.from_generators(list(L1.basis) + list(L2.basis), L1.ambient_rank)


def lattice_intersect(L1: Lattice, L2: Lattice) -> Lattice:
    _same_ambient(L1, L2)
    n = L1.ambient_rank
    if not L1.basis or not L2.basis:
        return Lattice.zero(n)
    r1 = len(L1.basis)
    stacked = [list(v) for v in L1.basis] + [[-x for x in v] for v in L2.basis]
    # relations x*B1 = y*B2 are the integer kernel of the transpose
    cols = [list(c) for c in zip(*stacked)]
    rel = integer_kernel(cols, len(stacked))
    gens = []
    for z in rel:
        gens.append([sum(z[i] * L1.basis[i][j] for i in range(r1)) for j in range(n)])
    return Lattice.from_generators(gens, n)


def lattice_saturate(L: Lattice) -> Lattice:
    """Return (Q L) intersected with Z^n."""
    n = L.ambient_rank
    if not L.basis:
        return Lattice.zero(n)
    perp = integer_kernel([list(v) for v in L.basis], n)
    if not perp:
        return Lattice.full(n)
    return Lattice.from_generators(integer_kernel(perp, n), n)


def orthogonal_lattice(vectors, n: int) -> Lattice:
    """Integer vectors orthogonal (standard dot product) to every given vector."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return Lattice.full(n)
    return Lattice.from_generators(integer_kernel(vectors, n), n)


def quotient_invariants(sub: Lattice, sup: Lattice) -> tuple[int, list[int]]:
    """Structure of sup/sub as (free rank, torsion invariant factors > 1)."""
    _same_ambient(sub, sup)
    coords = []
    for v in sub.basis:
        c = sup.coordinates(v)
        if c is None or any(x.denominator != 1 for x in c):
            raise NotSublattice(f"vector {list(v)} is not in the larger lattice")
        coords.append([int(x) for x in c])
    if not coords:
        return sup.rank, []
    snf = smith_normal_form(coords)
    nonzero = [d for d in snf.invariant_factors if d]
    return sup.rank - len(nonzero), [d for d in nonzero if d != 1]


def primitive_part(v) -> tuple[int, list[int]]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return 0, [int(x) for x in v]
    return g, [int(x) // g for x in v]


def _same_ambient(L1: Lattice, L2: Lattice) -> None:
    if L1.ambient_rank != L2.ambient_rank:
        raise ValueError("lattices live in different ambient ranks")
