"""Simultaneous generalized eigenspaces of commuting matrices.

Over Q the refinement factors characteristic polynomials over the integers;
irrational eigenvalues stay symbolic as ``MinPoly`` descriptors.  Over a
finite field the refinement first factors mod p, then each block is split
root by root in the smallest field GF(p^L) that contains the base field and
every root.  No floating point is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from sympy.polys.domains import GF as SGF
from sympy.polys.matrices import DomainMatrix

from ..errors import NonCommuting
from .finfield import MAX_ORDER, GFElem, common_degree, get_field
from .lattice import Lattice, lattice_saturate
from .linalg import QQ, Field, combine, matmul, nullspace, poly_at_matrix, restrict
from .polys import charpoly, factor_mod, factor_rational


@dataclass(frozen=True)
class MinPoly:
    """An algebraic value known only through its minimal polynomial.

    ``modulus`` is None over Q, or the prime for a value over a finite field
    too large to construct.
    """

    coeffs: tuple
    modulus: int | None = None

    def __str__(self):
        from .polys import poly_to_str

        s = "root of " + poly_to_str(self.coeffs)
        return s if self.modulus is None else s + f" mod {self.modulus}"


@dataclass(frozen=True)
class EigenCharacter:
    """A character of a commuting family.

    ``target`` is ``"Q"`` (values are Fractions or MinPoly), ``"GF"`` (values
    are integer encodings in GF(p^k)) or ``"Z/p^n"`` (values are residues).
    ``values`` is a tuple of (name, value) pairs sorted by name.
    """

    target: str
    values: tuple
    multiplicity: int
    witness: tuple | None = None
    p: int | None = None
    k: int = 1
    subspace: tuple = field(default=(), compare=False, repr=False)

    def value(self, name):
        for n, v in self.values:
            if n == name:
                return v
        raise KeyError(name)

    def as_dict(self) -> dict:
        return dict(self.values)

    @property
    def names(self):
        return tuple(n for n, _ in self.values)

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(v, MinPoly) for _, v in self.values)

    @property
    def field(self):
        if self.target != "GF":
            return None
        return get_field(self.p, self.k)

    def sort_key(self):
        return (self.target, tuple(_value_key(v) for _, v in self.values), self.multiplicity)


def _value_key(v):
    if isinstance(v, MinPoly):
        return (1, len(v.coeffs), tuple(Fraction(c) for c in v.coeffs))
    return (0, 0, (Fraction(v),))


def _normalize_ops(ops) -> list[tuple[str, list]]:
    if isinstance(ops, Mapping):
        items = list(ops.items())
    else:
        items = []
        for i, op in enumerate(ops):
            if isinstance(op, tuple) and len(op) == 2 and isinstance(op[0], str):
                items.append(op)
            else:
                items.append((f"T{i}", op))
    items.sort(key=lambda t: t[0])
    return items


def check_commuting(items, F: Field) -> None:
    mats = [(n, F.matrix(M)) for n, M in items]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            A, B = mats[i][1], mats[j][1]
            if matmul(A, B) != matmul(B, A):
                raise NonCommuting(mats[i][0], mats[j][0])


def simultaneous_spectra(ops, field="Q") -> list[EigenCharacter]:
    """Joint generalized eigenspace decomposition of commuting matrices.

    ``field`` is ``"Q"``, a prime ``p``, or a pair ``(p, k)`` for GF(p^k).
    Returns characters sorted by a deterministic encoding of their values.
    """
    items = _normalize_ops(ops)
    if not items:
        return []
    n = len(items[0][1])
    if field == "Q" or field is None:
        check_commuting(items, QQ)
        out = _spectra_q(items, n)
    else:
        p, k = (field, 1) if isinstance(field, int) else tuple(field)
        F1 = Field(get_field(p, 1))
        check_commuting(items, F1)
        out = _spectra_gf(items, n, p, k)
    out.sort(key=EigenCharacter.sort_key)
    return out


# ---------------------------------------------------------------- over Q


def _spectra_q(items, n):
    F = QQ
    mats = [(name, F.matrix(M)) for name, M in items]
    start = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    leaves = []
    _refine_q(mats, 0, start, [], leaves)
    out = []
    for basis, vals in leaves:
        int_basis = _saturated_integral(basis, n)
        symbolic = any(isinstance(v, MinPoly) for v in vals)
        witness = None
        if not symbolic:
            witness = _joint_eigenvector(mats, basis, vals, F)
            witness = tuple(_primitive_integral(witness))
        out.append(
            EigenCharacter(
                target="Q",
                values=tuple((name, v) for (name, _), v in zip(mats, vals)),
                multiplicity=len(basis),
                witness=witness,
                subspace=tuple(tuple(v) for v in int_basis),
            )
        )
    return out


def _refine_q(mats, i, basis, vals, leaves):
    if i == len(mats):
        leaves.append((basis, vals))
        return
    R = restrict(mats[i][1], basis, QQ)
    scalar = _scalar_value(R)
    if scalar is not None:
        _refine_q(mats, i + 1, basis, vals + [scalar], leaves)
        return
    for g, e in factor_rational(charpoly(R)):
        ge = _poly_power(g, e)
        K = nullspace(poly_at_matrix(ge, R, QQ), QQ)
        sub = [combine(basis, c, QQ) for c in K]
        v = Fraction(-Fraction(g[0])) if len(g) == 2 else MinPoly(tuple(g))
        _refine_q(mats, i + 1, sub, vals + [v], leaves)


def _poly_power(g, e):
    out = [Fraction(1)]
    for _ in range(e):
        res = [Fraction(0)] * (len(out) + len(g) - 1)
        for a, x in enumerate(out):
            for b, y in enumerate(g):
                res[a + b] += x * Fraction(y)
        out = res
    return out


def _scalar_value(R):
    if not R:
        return None
    d = R[0][0]
    for i, row in enumerate(R):
        for j, x in enumerate(row):
            if (x != d) if i == j else x:
                return None
    return d


def _joint_eigenvector(mats, basis, vals, F: Field):
    rows = []
    for (_, M), lam in zip(mats, vals):
        R = restrict(M, basis, F)
        for i, row in enumerate(R):
            rows.append([x - lam if i == j else x for j, x in enumerate(row)])
    K = nullspace(rows, F, len(basis))
    if not K:
        raise ArithmeticError("commuting family has no joint eigenvector in a block")
    return combine(basis, K[0], F)


def _primitive_integral(v):
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints] if g else ints
    first = next((x for x in ints if x), 0)
    return [-x for x in ints] if first < 0 else ints


def _saturated_integral(basis, n):
    if not basis:
        return []
    L = Lattice.from_generators([_primitive_integral(b) for b in basis], n)
    return [list(v) for v in lattice_saturate(L).basis]


# ---------------------------------------------------------------- over GF


def charpoly_mod(R, p: int) -> list[int]:
    n = len(R)
    if n == 0:
        return [1]
    dom = SGF(p)
    dm = DomainMatrix([[dom(int(getattr(x, "v", x))) for x in row] for row in R], (n, n), dom)
    return [int(c) % p for c in reversed(dm.charpoly())]


def _reduce_matrix(M, F: Field):
    return [[F(x) for x in row] for row in M]


def _spectra_gf(items, n, p, k):
    F1 = Field(get_field(p, 1))
    mats1 = [(name, _reduce_matrix(M, F1)) for name, M in items]
    start = [[F1.one if i == j else F1.zero for i in range(n)] for j in range(n)]
    blocks = []
    _refine_mod(mats1, 0, start, [], blocks, p)
    out = []
    for basis, facs in blocks:
        L = common_degree(k, *[len(g) - 1 for g in facs])
        if p ** L > MAX_ORDER:
            out.append(
                EigenCharacter(
                    target="GF",
                    values=tuple((name, MinPoly(tuple(g), p)) for (name, _), g in zip(mats1, facs)),
                    multiplicity=len(basis),
                    p=p,
                    k=L,
                )
            )
            continue
        FL = Field(get_field(p, L))
        matsL = [(name, [[FL.elem(x.v) for x in row] for row in M]) for name, M in mats1]
        basisL = [[FL.elem(x.v) for x in v] for v in basis]
        leaves = []
        _split_roots(matsL, 0, basisL, [], facs, leaves, FL)
        for sub, roots in leaves:
            w = _joint_eigenvector(matsL, sub, [FL.elem(r) for r in roots], FL)
            out.append(
                EigenCharacter(
                    target="GF",
                    values=tuple((name, r) for (name, _), r in zip(matsL, roots)),
                    multiplicity=len(sub),
                    witness=tuple(_normalize_gf(w)),
                    p=p,
                    k=L,
                    subspace=tuple(tuple(x.v for x in v) for v in sub),
                )
            )
    return out


def _normalize_gf(v):
    """Scale so the first nonzero coordinate is 1; return encodings."""
    lead = next(x for x in v if x)
    inv = lead.field.inv(lead.v)
    return [x.field.mul(x.v, inv) for x in v]


def _refine_mod(mats, i, basis, facs, blocks, p):
    if i == len(mats):
        blocks.append((basis, facs))
        return
    F1 = Field(get_field(p, 1))
    R = restrict(mats[i][1], basis, F1)
    for g, e in factor_mod(charpoly_mod(R, p), p):
        ge = [x % p for x in _poly_power(g, e)]
        K = nullspace(poly_at_matrix(ge, R, F1), F1)
        sub = [combine(basis, c, F1) for c in K]
        _refine_mod(mats, i + 1, sub, facs + [g], blocks, p)


def _split_roots(mats, i, basis, roots, facs, leaves, F: Field):
    if i == len(mats):
        leaves.append((basis, roots))
        return
    gf = F.gf
    R = restrict(mats[i][1], basis, F)
    m = len(basis)
    for r in gf.roots(list(facs[i])):
        S = [[x - F.elem(r) if a == b else x for b, x in enumerate(row)] for a, row in enumerate(R)]
        P = _matpow(S, m, F)
        K = nullspace(P, F)
        if not K:
            continue
        sub = [combine(basis, c, F) for c in K]
        _split_roots(mats, i + 1, sub, roots + [r], facs, leaves, F)


def _matpow(A, e, F):
    from .linalg import matpow

    return matpow(A, e, F)


def reduce_character(ch: EigenCharacter, p: int) -> EigenCharacter:
    """Reduce a rational-valued character mod p (values land in GF(p))."""
    if ch.target != "Q" or ch.is_symbolic:
        raise ValueError("only rational-valued characters can be reduced directly")
    vals = []
    for name, v in ch.values:
        v = Fraction(v)
        if v.denominator % p == 0:
            raise ZeroDivisionError(f"value {v} is not p-integral")
        vals.append((name, v.numerator * pow(v.denominator, -1, p) % p))
    w = None
    if ch.witness is not None:
        w = tuple(int(x) % p for x in ch.witness)
    return EigenCharacter("GF", tuple(vals), ch.multiplicity, w, p=p, k=1)


def reduce_character_mod_power(ch: EigenCharacter, p: int, n: int) -> list[EigenCharacter]:
    """Compatible value tables mod p, p^2, ..., p^n of a rational character."""
    out = []
    for j in range(1, n + 1):
        mod = p ** j
        vals = []
        for name, v in ch.values:
            v = Fraction(v)
            vals.append((name, v.numerator * pow(v.denominator, -1, mod) % mod))
        out.append(EigenCharacter(f"Z/{p}^{j}", tuple(vals), ch.multiplicity, None, p=p, k=j))
    return out


def occurs_on(ops: Sequence, basis, target_values, F: Field) -> list:
    """Joint generalized eigenspace of ``ops`` restricted to span(basis) at the given values.

    ``ops`` are matrices (already coerced into F), ``basis`` a list of vectors
    over F spanning an invariant subspace; returns a basis of the block.
    """
    cur = list(basis)
    for M, lam in zip(ops, target_values):
        if not cur:
            return []
        R = restrict(M, cur, F)
        S = [[x - lam if a == b else x for b, x in enumerate(row)] for a, row in enumerate(R)]
        K = nullspace(_matpow(S, len(cur), F), F)
        cur = [combine(cur, c, F) for c in K]
    return cur


def gf_elem(p: int, k: int, encoding: int) -> GFElem:
    return GFElem(get_field(p, k), encoding)
