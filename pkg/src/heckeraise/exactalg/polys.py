"""Characteristic and minimal polynomials, and factoring via sympy.

Polynomials are coefficient lists, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import Poly, factor_list
from sympy.abc import x as X
from sympy.polys.domains import QQ as SQQ
from sympy.polys.matrices import DomainMatrix

from .linalg import Field, rref


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def charpoly(M) -> list[Fraction]:
    """Characteristic polynomial det(xI - M) of a rational matrix."""
    n = len(M)
    if n == 0:
        return [Fraction(1)]
    rows = [[SQQ(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in M]
    coeffs = DomainMatrix(rows, (n, n), SQQ).charpoly()
    return [_to_fraction(c) for c in reversed(coeffs)]


def _to_sympy(coeffs, modulus=None):
    hi = list(reversed([Fraction(c) for c in coeffs]))
    if modulus is None:
        from sympy import Rational

        return Poly([Rational(c.numerator, c.denominator) for c in hi], X)
    return Poly([c.numerator * pow(c.denominator, -1, modulus) % modulus for c in hi], X, modulus=modulus)


def factor_rational(coeffs) -> list[tuple[tuple, int]]:
    """Monic irreducible factors over Q with multiplicity, sorted canonically.

    Each factor is a tuple of Fractions (low to high).  Factors with integer
    coefficients come out with int entries.
    """
    p = _to_sympy(coeffs)
    if p.degree() <= 0:
        return []
    _, facs = factor_list(p)
    out = []
    for f, e in facs:
        f = Poly(f, X).monic()
        cs = tuple(Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs()))
        out.append((_canon(cs), e))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def factor_mod(coeffs, p: int) -> list[tuple[tuple, int]]:
    """Monic irreducible factors over F_p with multiplicity."""
    poly = _to_sympy(coeffs, p)
    if poly.degree() <= 0:
        return []
    _, facs = poly.factor_list()
    out = []
    for f, e in facs:
        f = f.monic()
        cs = tuple(int(c) % p for c in reversed(f.all_coeffs()))
        out.append((cs, e))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def _canon(cs):
    return tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in cs)


def reduce_mod(coeffs, p: int) -> list[int]:
    out = []
    for c in coeffs:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise ZeroDivisionError(f"coefficient {c} has denominator divisible by {p}")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return out


def is_squarefree_rational(coeffs) -> bool:
    return all(e == 1 for _, e in factor_rational(coeffs))


def is_squarefree_mod(coeffs, p: int) -> bool:
    return all(e == 1 for _, e in factor_mod(coeffs, p))


def minimal_polynomial(M, F: Field) -> list:
    """Minimal polynomial of a square matrix over F, monic, low to high."""
    n = len(M)
    from .linalg import identity, matmul

    powers = [identity(n, F)]
    flat = [[v for row in powers[0] for v in row]]
    while True:
        nxt = matmul(powers[-1], M)
        vec = [v for row in nxt for v in row]
        # solve vec = sum c_i flat_i
        k = len(flat)
        aug = [[flat[j][i] for j in range(k)] + [vec[i]] for i in range(n * n)]
        R, piv = rref(aug, F)
        if k not in piv:
            c = [F.zero] * k
            for row, pc in zip(R, piv):
                c[pc] = row[k]
            return [-ci for ci in c] + [F.one]
        powers.append(nxt)
        flat.append(vec)


def poly_to_str(coeffs, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mon and c == 1:
            terms.append(mon)
        elif mon and c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{c}*{mon}" if mon else str(c))
    return " + ".join(terms).replace("+ -", "- ") or "0"
