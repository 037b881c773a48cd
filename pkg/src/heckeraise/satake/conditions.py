"""Congruence conditions mod ell on Satake parameters and the resulting type filters."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import isprime

from ..errors import BadParams
from ..exactalg.finfield import GFElem, get_field
from .tables import GL3, GSP4, RepType, all_types, profile

VA = "Va"
VIA = "VIa"


@dataclass(frozen=True)
class ConditionResult:
    flag: bool
    refinement: bool | None = None
    reasons: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        out = {"flag": self.flag, "reasons": list(self.reasons)}
        if self.refinement is not None:
            out["refinement"] = self.refinement
        return out


def _check_pair(q: int, ell: int):
    if not isprime(ell):
        raise BadParams(f"ell = {ell} is not prime")
    if q < 2:
        raise BadParams("q must be at least 2")
    if q % ell == 0:
        raise BadParams(f"ell = {ell} must not divide q = {q}")


def _residues(t, ell: int) -> list[int]:
    """Encodings in GF(ell^2) of the entries of t (ints, Fractions or GFElems)."""
    gf = get_field(ell, 2)
    out = []
    for v in t:
        if isinstance(v, GFElem):
            if v.field.p != ell or v.field.k not in (1, 2):
                raise BadParams("values must lie in GF(ell) or GF(ell^2)")
            out.append(v.v)
            continue
        v = Fraction(v)
        if v.denominator % ell == 0:
            raise BadParams(f"value {v} is not ell-integral")
        out.append(gf.div(gf.from_int(v.numerator), gf.from_int(v.denominator)))
    return out


def _power_residues(q: int, ell: int, exps) -> list[int]:
    gf = get_field(ell, 2)
    qq = gf.from_int(q)
    return [gf.pow(qq, e) for e in exps]


def check_u3_condition(t, q: int, ell: int) -> ConditionResult:
    """t matches (q, 1, 1/q) mod ell as a multiset, and ell does not divide 1+q+q^2."""
    _check_pair(q, ell)
    if len(t) != 3:
        raise BadParams("expected a triple")
    reasons = []
    match = sorted(_residues(t, ell)) == sorted(_power_residues(q, ell, (1, 0, -1)))
    if not match:
        reasons.append("t is not congruent to diag(q, 1, 1/q) up to ordering")
    idx = 1 + q + q * q
    if idx % ell == 0:
        reasons.append(f"ell divides 1+q+q^2 = {idx}")
    return ConditionResult(match and idx % ell != 0, None, tuple(reasons))


def check_gsp4_condition(t, q: int, ell: int) -> ConditionResult:
    """t matches (1, q, q^2, q^3) mod ell as a multiset; refinement adds q^4 != 1."""
    _check_pair(q, ell)
    if len(t) != 4:
        raise BadParams("expected a quadruple")
    reasons = []
    match = sorted(_residues(t, ell)) == sorted(_power_residues(q, ell, (0, 1, 2, 3)))
    if not match:
        reasons.append("t is not congruent to diag(1, q, q^2, q^3) up to ordering")
    q4 = pow(q, 4, ell) != 1
    if not q4:
        reasons.append("q^4 = 1 mod ell")
    return ConditionResult(match, match and q4, tuple(reasons))


def exclusions(q: int, ell: int) -> set[str]:
    """Types among {Va, VIa} ruled out by the congruence with the trivial character."""
    _check_pair(q, ell)
    out = set()
    if q % ell != ell - 1 and (q * q + 1) % ell != 0:
        out.add(VA)
    if (q * q - 1) % ell != 0:
        out.add(VIA)
    return out


def brute_force_exclusions(q: int, ell: int) -> set[str]:
    """The same set, decided by searching every sigma(q) in GF(ell^2)^* and both square roots of q.

    Va:  {s/r, -s/r, -s r, s r}  vs  {r^-3, r^-1, r, r^3}
    VIa: {s/r,  s/r,  s r, s r}  vs  {r^-3, r^-1, r, r^3}
    compared as multisets.  Arithmetic is done on discrete logarithms.
    """
    _check_pair(q, ell)
    gf = get_field(ell, 2)
    N = gf.order - 1
    log = _log_table(gf)
    half = 0 if ell == 2 else N // 2  # log of -1
    qq = gf.from_int(q)
    roots = [r for r in range(1, gf.order) if gf.mul(r, r) == qq]
    va_ok = vi_ok = False
    for r in roots:
        b = log[r]
        rhs = sorted(((-3 * b) % N, (-b) % N, b % N, (3 * b) % N))
        for a in range(N):
            lo = (a - b) % N
            hi = (a + b) % N
            if not va_ok:
                if sorted((lo, (lo + half) % N, (hi + half) % N, hi)) == rhs:
                    va_ok = True
            if not vi_ok:
                if sorted((lo, lo, hi, hi)) == rhs:
                    vi_ok = True
            if va_ok and vi_ok:
                break
    out = set()
    if not va_ok:
        out.add(VA)
    if not vi_ok:
        out.add(VIA)
    return out


def _log_table(gf):
    if gf._log is not None:
        return gf._log
    # prime fields (order <= 4) have no table; build one directly
    N = gf.order - 1
    for g in range(1, gf.order):
        log = {}
        cur = 1
        for i in range(N):
            if cur in log:
                break
            log[cur] = i
            cur = gf.mul(cur, g)
        if len(log) == N:
            return log
    raise AssertionError("no generator")


def unitary_dual_filter(types) -> list[RepType]:
    """Drop rows the tables mark as not unitary or irrelevant."""
    return [t for t in types if t.remark not in ("not unitary", "irrelevant")]


def raising_types(group: str) -> list[RepType]:
    """Types whose J-fixed dimension exceeds the sum of the K and K' dimensions.

    For GL3 the second maximal compact is conjugate to K, so its column is
    the K column.
    """
    out = []
    for t in all_types(group):
        d = profile(t).as_dict()
        kp = d["K"] if group == GL3 else d["K'"]
        if d["J"] > d["K"] + kp:
            out.append(t)
    return out


def allowed_types(group: str, q: int | None = None, ell: int | None = None) -> list[RepType]:
    """Unitary raising types, minus the Va/VIa exclusions when q and ell are given."""
    types = unitary_dual_filter(raising_types(group))
    if group == GSP4 and q is not None and ell is not None:
        ex = exclusions(q, ell)
        types = [t for t in types if t.label not in ex]
    return types
