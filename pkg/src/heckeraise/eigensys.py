"""Hecke rings generated by commuting integer matrices, and their characters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import factorint

from .errors import NotOccurring, NotReduced
from .exactalg.finfield import get_field
from .exactalg.intmat import det
from .exactalg.lattice import Lattice, lattice_saturate, quotient_invariants
from .exactalg.linalg import QQ, Field, restrict
from .exactalg.polys import factor_mod, is_squarefree_rational, minimal_polynomial, reduce_mod
from .exactalg.spectra import (
    EigenCharacter,
    MinPoly,
    _normalize_ops,
    check_commuting,
    occurs_on,
    simultaneous_spectra,
)


def _flatten(M):
    return [int(x) for row in M for x in row]


def _unflatten(v, n):
    return [list(v[i * n : (i + 1) * n]) for i in range(n)]


def _imul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c)) for c in Bt] for r in A]


@dataclass(frozen=True)
class HeckeRing:
    """The unital ring generated by commuting integer matrices.

    ``z_basis`` and ``saturation_basis`` are tuples of n x n integer matrices;
    the saturation is the ring's Q-span intersected with all integer matrices.
    """

    generators: tuple
    n: int
    z_basis: tuple
    saturation_basis: tuple
    index: int
    trace_form_disc: int

    @property
    def rank(self) -> int:
        return len(self.z_basis)

    def generator_dict(self) -> dict:
        return dict(self.generators)


def hecke_ring(generators) -> HeckeRing:
    items = _normalize_ops(generators)
    if not items:
        raise ValueError("at least one generator is required")
    n = len(items[0][1])
    items = [(name, [[int(x) for x in row] for row in M]) for name, M in items]
    check_commuting(items, QQ)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    gens = [M for _, M in items]
    lat = Lattice.from_generators([_flatten(ident)] + [_flatten(M) for M in gens], n * n)
    # breadth-first products with Hermite reduction, until the lattice is stable
    while True:
        prods = [_flatten(_imul(_unflatten(b, n), G)) for b in lat.basis for G in gens]
        nxt = Lattice.from_generators(list(lat.basis) + prods, n * n)
        if nxt == lat:
            break
        lat = nxt
    sat = lattice_saturate(lat)
    free, tors = quotient_invariants(lat, sat)
    assert free == 0
    index = 1
    for d in tors:
        index *= d
    sat_mats = tuple(tuple(tuple(r) for r in _unflatten(v, n)) for v in sat.basis)
    disc = _trace_disc(sat, n)
    return HeckeRing(
        tuple((name, tuple(tuple(r) for r in M)) for name, M in items),
        n,
        tuple(tuple(tuple(r) for r in _unflatten(v, n)) for v in lat.basis),
        sat_mats,
        index,
        disc,
    )


def structure_constants(basis_lattice: Lattice, n: int):
    """mult[i][j] = integer coordinates of b_i b_j in the basis."""
    mats = [_unflatten(v, n) for v in basis_lattice.basis]
    out = []
    for A in mats:
        row = []
        for B in mats:
            c = basis_lattice.coordinates(_flatten(_imul(A, B)))
            if c is None or any(x.denominator != 1 for x in c):
                raise ArithmeticError("basis is not closed under multiplication")
            row.append([int(x) for x in c])
        out.append(row)
    return out


def regular_representation(basis_lattice: Lattice, n: int):
    """Matrices of multiplication by each basis element, acting on coordinate columns."""
    mult = structure_constants(basis_lattice, n)
    r = len(mult)
    # L_i[k][j] = coefficient of b_k in b_i b_j
    return [[[mult[i][j][k] for j in range(r)] for k in range(r)] for i in range(r)]


def _trace_disc(sat: Lattice, n: int) -> int:
    regs = regular_representation(sat, n)
    mult = structure_constants(sat, n)
    r = len(regs)
    traces = [sum(L[i][i] for i in range(r)) for L in regs]
    gram = [[sum(mult[i][j][k] * traces[k] for k in range(r)) for j in range(r)] for i in range(r)]
    return det(gram)


def saturation_index(ring: HeckeRing) -> tuple[int, list[int]]:
    """The index of the ring in its saturation, and the primes dividing it."""
    return ring.index, sorted(factorint(ring.index)) if ring.index > 1 else []


def _z_lattice(ring: HeckeRing) -> Lattice:
    return Lattice.from_generators([_flatten(M) for M in ring.z_basis], ring.n * ring.n)


def is_reduced(ring: HeckeRing) -> bool:
    """Whether ring tensor Q has no nilpotents (squarefree minimal polynomials on a basis)."""
    for M in ring.z_basis:
        if not is_squarefree_rational(minimal_polynomial(QQ.matrix(M), QQ)):
            return False
    return True


def semisimple_mod_p(ring: HeckeRing, p: int) -> bool:
    """One-sided certificate that ring tensor F_p is semisimple.

    True means p divides neither the saturation index nor the trace-form
    discriminant of the saturation; False means "not certified".
    """
    if not is_reduced(ring):
        raise NotReduced("ring tensor Q has nonzero nilradical")
    return ring.index % p != 0 and ring.trace_form_disc % p != 0


def has_nilpotent_mod_p(ring: HeckeRing, p: int) -> bool:
    """Whether the abstract ring tensor F_p has a nonzero nilpotent.

    Uses the regular representation of the z_basis mod p; some basis element
    has a non-squarefree minimal polynomial exactly when the nilradical is
    nonzero (a commutative algebra over a perfect field).
    """
    F = Field(get_field(p, 1))
    for L in regular_representation(_z_lattice(ring), ring.n):
        mp = minimal_polynomial(F.matrix(L), F)
        coeffs = [x.v for x in mp]
        if any(e > 1 for _, e in factor_mod(coeffs, p)):
            return True
    return False


def characters(ring: HeckeRing, field="Q") -> list[EigenCharacter]:
    return simultaneous_spectra(ring.generator_dict(), field)


def is_homomorphism(ring: HeckeRing, ch: EigenCharacter) -> bool:
    """Check eta(AB) = eta(A) eta(B) on the witness for generators up to degree 2."""
    if ch.witness is None:
        return True
    gens = ring.generator_dict()
    if ch.target == "Q":
        F = QQ
        w = [Fraction(x) for x in ch.witness]
        val = {n: Fraction(v) for n, v in ch.values}
    else:
        F = Field(get_field(ch.p, ch.k))
        w = [F.elem(x) for x in ch.witness]
        val = {n: F.elem(v) for n, v in ch.values}

    def apply(M, v):
        return [sum((F(a) * b for a, b in zip(row, v)), F.zero) for row in M]

    names = sorted(gens)
    for a in names:
        wa = apply(gens[a], w)
        if wa != [val[a] * x for x in w]:
            return False
        for b in names:
            if apply(gens[b], wa) != [val[a] * val[b] * x for x in w]:
                return False
    return True


def lift_character(ring: HeckeRing, eta_bar: EigenCharacter) -> list[EigenCharacter]:
    """Characteristic-zero characters of the ring whose reduction is eta_bar.

    Each rational character block is taken with its saturated integral
    lattice; a block lifts eta_bar when eta_bar occurs on that lattice mod p.
    """
    gens = ring.generator_dict()
    names = sorted(gens)
    F = Field(get_field(eta_bar.p, eta_bar.k))
    targets = [F.elem(eta_bar.value(nm)) for nm in names]
    full = [[F.one if i == j else F.zero for i in range(ring.n)] for j in range(ring.n)]
    if not occurs_on([F.matrix(gens[nm]) for nm in names], full, targets, F):
        raise NotOccurring("eta_bar does not occur on the lattice mod p")
    lifts = []
    for ch in simultaneous_spectra(gens, "Q"):
        basis = [[Fraction(x) for x in v] for v in ch.subspace]
        mats = []
        for nm in names:
            R = restrict([[Fraction(x) for x in row] for row in gens[nm]], basis, QQ)
            mats.append(F.matrix(R))
        k = len(basis)
        local = [[F.one if i == j else F.zero for i in range(k)] for j in range(k)]
        if occurs_on(mats, local, targets, F):
            lifts.append(ch)
    if not lifts:
        raise AssertionError("occurring character has no lift; lattice bookkeeping is inconsistent")
    return lifts


def reduces_to(lift: EigenCharacter, eta_bar: EigenCharacter) -> bool:
    """Whether each value of ``lift`` is congruent to the matching eta_bar value."""
    gf = get_field(eta_bar.p, eta_bar.k)
    p = eta_bar.p
    for name, v in lift.values:
        target = eta_bar.value(name)
        if isinstance(v, MinPoly):
            if gf.poly_eval(reduce_mod(v.coeffs, p), target) != 0:
                return False
        else:
            v = Fraction(v)
            if v.denominator % p == 0:
                return False
            if v.numerator * pow(v.denominator, -1, p) % p != target:
                return False
    return True


def character_table(ch: EigenCharacter) -> dict:
    """name -> value descriptor, ordered by generator name."""
    out = {}
    for name, v in ch.values:
        if isinstance(v, MinPoly):
            out[name] = {"minpoly": [str(Fraction(c)) for c in v.coeffs]}
        elif ch.target == "Q":
            out[name] = str(Fraction(v))
        else:
            out[name] = str(v)
    return out


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
