"""Classification of unramified principal series constituents from Satake data.

Parameters are the values of unramified characters at a uniformizer, either
exact rationals or elements of GF(ell^2) (as ``GFElem``).  The absolute
value nu takes the value 1/q there, and the nontrivial unramified quadratic
character xi_0 takes the value -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from sympy import factorint, integer_nthroot

from ..errors import AmbiguousHalfPower, BadParams
from ..exactalg.finfield import GFElem
from .tables import GL3, GSP4, RepType, rep_type
from .weyl import A2, bruhat_index


def _coerce(v, like=None):
    if isinstance(v, GFElem):
        return v
    if isinstance(like, GFElem):
        return _to_gf(v, like.field)
    return Fraction(v)


def _to_gf(v, gf):
    v = Fraction(v)
    return GFElem(gf, gf.div(gf.from_int(v.numerator), gf.from_int(v.denominator)))


def _key(v):
    if isinstance(v, GFElem):
        return (1, v.v)
    return (0, Fraction(v))


def _check_nonzero(vals):
    for v in vals:
        if not v:
            raise BadParams("Satake values must be nonzero")


def _check_q(q: int):
    if not isinstance(q, int) or q < 2 or len(factorint(q)) != 1:
        raise BadParams(f"q = {q!r} must be a prime power >= 2")


@dataclass(frozen=True)
class SatakeParamsGL3:
    q: int
    chi: tuple

    def __post_init__(self):
        _check_q(self.q)
        if len(self.chi) != 3:
            raise BadParams("GL3 parameters are a triple")
        like = next((c for c in self.chi if isinstance(c, GFElem)), None)
        vals = tuple(_coerce(c, like) for c in self.chi)
        _check_nonzero(vals)
        object.__setattr__(self, "chi", vals)


@dataclass(frozen=True)
class SatakeParamsGSp4:
    """chi1 x chi2 x| sigma, stored as the canonical point of its Weyl orbit."""

    q: int
    chi1: object
    chi2: object
    sigma: object

    def __post_init__(self):
        _check_q(self.q)
        like = next((c for c in (self.chi1, self.chi2, self.sigma) if isinstance(c, GFElem)), None)
        vals = tuple(_coerce(c, like) for c in (self.chi1, self.chi2, self.sigma))
        _check_nonzero(vals)
        canon = min(weyl_orbit_gsp4(*vals), key=lambda t: tuple(_key(v) for v in t))
        object.__setattr__(self, "chi1", canon[0])
        object.__setattr__(self, "chi2", canon[1])
        object.__setattr__(self, "sigma", canon[2])

    @property
    def values(self):
        return (self.chi1, self.chi2, self.sigma)


def weyl_orbit_gsp4(chi1, chi2, sigma) -> list[tuple]:
    """Orbit under (c1, c2, s) -> (c2, c1, s) and (c1, c2, s) -> (1/c1, c2, s c1)."""
    start = (chi1, chi2, sigma)
    orbit = [start]
    seen = {tuple(_key(v) for v in start)}
    i = 0
    while i < len(orbit):
        a, b, s = orbit[i]
        for nxt in ((b, a, s), (1 / a, b, s * a)):
            k = tuple(_key(v) for v in nxt)
            if k not in seen:
                seen.add(k)
                orbit.append(nxt)
        i += 1
    return orbit


def _nu(q, like):
    return _coerce(Fraction(1, q), like)


def _labels(group, labels):
    return [rep_type(group, lab) for lab in labels]


def classify_gl3(params: SatakeParamsGL3) -> list[RepType]:
    q = params.q
    vals = params.chi
    like = vals[0]
    qv = _coerce(q, like)
    for a, b, c in permutations(vals):
        # chain chi*nu, chi, chi*nu^-1 at the uniformizer: b/q, b, b*q
        if a == b / qv and c == b * qv:
            return _labels(GL3, ("IIIa", "IIIb", "IIIc", "IIId"))
    for i in range(3):
        for j in range(3):
            if i != j and vals[i] == vals[j] * qv:
                return _labels(GL3, ("IIa", "IIb"))
    return _labels(GL3, ("I",))


def classify_gsp4(params: SatakeParamsGSp4) -> list[RepType]:
    q = params.q
    like = params.chi1
    nu = _nu(q, like)
    one = _coerce(1, like)
    xi0 = -one
    pairs = [(a, b) for a, b, _ in weyl_orbit_gsp4(*params.values)]

    def hit(x, y):
        return any(a == x and b == y for a, b in pairs)

    if hit(nu * nu, nu):
        return _labels(GSP4, ("IVa", "IVb", "IVc", "IVd"))
    if hit(nu * xi0, xi0):
        return _labels(GSP4, ("Va", "Vb", "Vc", "Vd"))
    if hit(nu, one):
        return _labels(GSP4, ("VIa", "VIb", "VIc", "VId"))
    if any(a == nu * b for a, b in pairs):
        return _labels(GSP4, ("IIa", "IIb"))
    if any(a == nu or b == nu for a, b in pairs):
        return _labels(GSP4, ("IIIa", "IIIb"))
    return _labels(GSP4, ("I",))


def satake_matrix_gsp4(params: SatakeParamsGSp4, half_twist: bool = False) -> tuple:
    """Diagonal Satake parameter (chi1 chi2 sigma, chi1 sigma, chi2 sigma, sigma).

    With ``half_twist`` the entries are multiplied by q^{3/2}, the value of
    |nu|^{-3/2} at a uniformizer; over Q this needs q to be a perfect square.
    """
    c1, c2, s = params.values
    diag = (c1 * c2 * s, c1 * s, c2 * s, s)
    if not half_twist:
        return diag
    q = params.q
    if isinstance(c1, GFElem):
        gf = c1.field
        if gf.k % 2:
            raise AmbiguousHalfPower("work in GF(ell^2) to take square roots of q")
        roots = gf.roots([gf.neg(gf.from_int(q)), 0, 1])
        if not roots:
            raise AmbiguousHalfPower(f"q = {q} has no square root in {gf!r}")
        r = GFElem(gf, roots[0])
    else:
        root, exact = integer_nthroot(q, 2)
        if not exact:
            raise AmbiguousHalfPower(f"q = {q} is not a square in Q; supply pre-twisted values")
        r = Fraction(root)
    t = r * r * r
    return tuple(t * d for d in diag)


def gl3_type_i_unitary(params: SatakeParamsGL3) -> str:
    """Unitarity of a type I representation: 'unitary', 'not unitary' or 'indeterminate'.

    Rational values have |x| = 1 only for x = +-1.  The complementary series
    needs chi1/chi2 = nu^alpha with 0 < alpha < 1 and chi3 unitary.
    """
    vals = params.chi
    if any(isinstance(v, GFElem) for v in vals):
        return "indeterminate"

    def unit(x):
        return abs(x) == 1

    if all(unit(v) for v in vals):
        return "unitary"
    for a, b, c in permutations(vals):
        if unit(c) and _is_fractional_power(a / b, params.q):
            return "unitary"
    return "not unitary"


def _is_fractional_power(r: Fraction, q: int) -> bool:
    """Whether r = q^(-alpha) for a rational alpha with 0 < alpha < 1."""
    if r <= 0 or r >= 1:
        return False
    # r = q^-alpha  <=>  r^-1 = q^alpha: compare prime exponent vectors
    inv = 1 / r
    fn = factorint(inv.numerator)
    fd = factorint(inv.denominator)
    if fd:
        return False
    fq = factorint(q)
    if set(fn) != set(fq):
        return False
    ratios = {Fraction(fn[p], fq[p]) for p in fq}
    if len(ratios) != 1:
        return False
    alpha = ratios.pop()
    return 0 < alpha < 1


def parahoric_indices(group: str, q: int) -> dict:
    """[K:J] (and [K':J] for GSp4) as functions of q."""
    if q < 2:
        raise BadParams("q must be at least 2")
    if group == GL3:
        return {"[K:J]": 1 + q + q * q}
    if group == GSP4:
        return {"[K:J]": 1 + q + q ** 2 + q ** 3, "[K':J]": q}
    raise BadParams(f"unknown group {group!r}")


def bruhat_check(group: str, q: int) -> bool:
    """[K:J] agrees with the Bruhat count over minimal coset representatives."""
    idx = parahoric_indices(group, q)["[K:J]"]
    if group == GL3:
        return idx == bruhat_index(A2, ["s1"], q)
    from .weyl import C2

    return idx == bruhat_index(C2, ["s_long"], q)
