"""Degeneracy maps, old and new lattices, congruence modules and the raising detector."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd, lcm

from .cosetmodel import (
    DoubleCosetModel,
    annihilators,
    averaging_projector,
    class_partition,
    k_classes,
    pullback,
    pullback_adjoint,
    validate,
)
from .errors import (
    AbelianInput,
    BlockMismatch,
    EllDividesIndex,
    MZero,
    NoCentralOps,
    NotRankOne,
    ValidationFailed,
    ZeroE,
)
from .exactalg.finfield import get_field
from .exactalg.intmat import integer_kernel
from .exactalg.lattice import Lattice, lattice_intersect, lattice_saturate, quotient_invariants
from .exactalg.linalg import QQ, Field, combine, nullspace, rank, restrict, sparse_matmul
from .exactalg.spectra import EigenCharacter, occurs_on, simultaneous_spectra

E_KKP = "e_KK'"
CENTRAL_PREFIX = "e_K*"
CENTRAL_PREFIX_P = "e_K'*"


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _mm(A, B):
    return sparse_matmul(A, B)


def _frac(M):
    return [[Fraction(x) for x in row] for row in M]


def _require_valid(model: DoubleCosetModel):
    report = validate(model)
    if not report.accepted:
        raise ValidationFailed(report)
    return report


# ------------------------------------------------------------ degeneracy


@dataclass(frozen=True)
class DegeneracyData:
    delta: tuple
    delta_adjoint: tuple
    delta_gram: tuple
    index_k: int
    index_kp: int
    old_lattice: Lattice
    new_lattice: Lattice
    n_k: int
    n_kp: int

    def block(self, which: str):
        nk = self.n_k
        g = self.delta_gram
        if which == "b":
            return [list(r[nk:]) for r in g[:nk]]
        if which == "c":
            return [list(r[:nk]) for r in g[nk:]]
        raise ValueError(which)


def build_degeneracy(model: DoubleCosetModel) -> DegeneracyData:
    report = _require_valid(model)
    ik, ikp = report.index_k, report.index_kp
    iota = pullback(model, "K")
    iotap = pullback(model, "Kp")
    adj = pullback_adjoint(model, "K")
    adjp = pullback_adjoint(model, "Kp")
    nj, nk, nkp = model.size("J"), model.size("K"), model.size("Kp")
    delta = [iota[y] + iotap[y] for y in range(nj)]
    delta_adj = adj + adjp
    gram = _mm(delta_adj, delta)

    # second computation: diagonal blocks from the indices, off-diagonal blocks
    # by reading [K:J] e_K composed with the other pullback at a section point
    eK = averaging_projector(model, "K", ik)
    eKp = averaging_projector(model, "Kp", ikp)
    sec = _sections(model.projection("K"), nk)
    secp = _sections(model.projection("Kp"), nkp)
    b = [[ik * sum(eK[sec[x]][z] * iotap[z][xp] for z in range(nj)) for xp in range(nkp)] for x in range(nk)]
    c = [[ikp * sum(eKp[secp[xp]][z] * iota[z][x] for z in range(nj)) for x in range(nk)] for xp in range(nkp)]
    block = [[Fraction(ik if i == j else 0) for j in range(nk)] + b[i] for i in range(nk)]
    block += [c[i] + [Fraction(ikp if i == j else 0) for j in range(nkp)] for i in range(nkp)]
    for i in range(nk + nkp):
        for j in range(nk + nkp):
            if gram[i][j] != block[i][j]:
                raise BlockMismatch(f"entry ({i},{j}): direct {gram[i][j]} vs block {block[i][j]}")

    image = Lattice.from_generators([[delta[y][t] for y in range(nj)] for t in range(nk + nkp)], nj)
    old = lattice_saturate(image)
    new = _new_lattice(model)
    data = DegeneracyData(
        tuple(tuple(r) for r in delta),
        tuple(tuple(r) for r in delta_adj),
        tuple(tuple(r) for r in gram),
        ik,
        ikp,
        old,
        new,
        nk,
        nkp,
    )
    return data


def _sections(proj, n):
    sec = [None] * n
    for y, x in enumerate(proj):
        if sec[x] is None:
            sec[x] = y
    return sec


def _new_lattice(model: DoubleCosetModel) -> Lattice:
    """Integer functions on X_J orthogonal to every pullback."""
    wj = model.weights("J")
    den = 1
    for w in wj:
        den = lcm(den, w)
    rows = []
    for side in ("K", "Kp"):
        proj = model.projection(side)
        for x in range(model.size(side)):
            rows.append([den // wj[y] if proj[y] == x else 0 for y in range(len(proj))])
    nj = len(wj)
    ker = integer_kernel(rows, nj)
    return Lattice.from_generators(ker, nj)


def ihara_defect(model: DoubleCosetModel) -> list[int]:
    """Torsion invariants (> 1) of (Z^X_J meet Q delta) / delta(Z^m); empty when trivial."""
    _require_valid(model)
    iota = pullback(model, "K")
    iotap = pullback(model, "Kp")
    nj = model.size("J")
    cols = [[iota[y][x] for y in range(nj)] for x in range(model.size("K"))]
    cols += [[iotap[y][x] for y in range(nj)] for x in range(model.size("Kp"))]
    image = Lattice.from_generators(cols, nj)
    free, tors = quotient_invariants(image, lattice_saturate(image))
    assert free == 0
    return tors


# ------------------------------------------------------------ congruence module


def congruence_module(U_lattice: Lattice, V_lattice: Lattice, delta, E: int, gram_u=None, gram_v=None) -> list[int]:
    """Invariant factors (> 1) of U' / (U' meet E^-1 delta^v delta U).

    ``delta`` is a matrix from the ambient space of U to that of V; the
    pairings default to the standard dot products.  U' is the part of U
    orthogonal to ker(delta).
    """
    if E == 0:
        raise ZeroE("E must be nonzero")
    nu, nv = U_lattice.ambient_rank, V_lattice.ambient_rank
    D = _frac(delta)
    if len(D) != nv or any(len(r) != nu for r in D):
        raise ValueError("delta has the wrong shape")
    Gu = _frac(gram_u) if gram_u is not None else [[Fraction(int(i == j)) for j in range(nu)] for i in range(nu)]
    Gv = _frac(gram_v) if gram_v is not None else [[Fraction(int(i == j)) for j in range(nv)] for i in range(nv)]
    for u in U_lattice.basis:
        img = [sum(D[i][j] * u[j] for j in range(nu)) for i in range(nv)]
        if V_lattice.coordinates(img) is None:
            raise ValueError("delta does not map Q U into Q V")
    Gu_inv = _inverse(Gu)
    Dadj = _mm(_mm(Gu_inv, [list(r) for r in zip(*D)]), Gv)
    M = _mm(Dadj, D)

    ker = nullspace(D, QQ, nu) if nv else [[Fraction(int(i == j)) for i in range(nu)] for j in range(nu)]
    if ker:
        rows = [_clear([sum(Gu[i][j] * k[j] for j in range(nu)) for i in range(nu)]) for k in ker]
        perp = Lattice.from_generators(integer_kernel(rows, nu), nu)
        Uprime = lattice_intersect(U_lattice, perp)
    else:
        Uprime = U_lattice
    imgs = [[sum(M[i][j] * u[j] for j in range(nu)) / E for i in range(nu)] for u in U_lattice.basis]
    den = 1
    for v in imgs:
        for x in v:
            den = lcm(den, x.denominator)
    T = Lattice.from_generators([[int(x * den) for x in v] for v in imgs], nu)
    S = Uprime.scaled(den)
    inter = lattice_intersect(S, T)
    free, tors = quotient_invariants(inter, S)
    if free:
        raise ValueError("image does not have full rank in U'")
    return tors


def _clear(v):
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in v]


def _inverse(G):
    n = len(G)
    aug = [list(G[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    from .exactalg.linalg import rref

    R, piv = rref(aug, QQ)
    if piv[:n] != list(range(n)):
        raise ValueError("pairing is degenerate")
    return [r[n:] for r in R]


# ------------------------------------------------------------ K-level family


def e_kkp_matrix(model: DoubleCosetModel) -> list[list[Fraction]]:
    """iota^v iota' iota'^v iota, an integer matrix on functions on X_K."""
    iota = pullback(model, "K")
    iotap = pullback(model, "Kp")
    adj = pullback_adjoint(model, "K")
    adjp = pullback_adjoint(model, "Kp")
    return _mm(_mm(adj, iotap), _mm(adjp, iota))


def compatible_operator(model: DoubleCosetModel, phi, side: str = "K", index: int | None = None):
    """e_side * phi as an operator on functions on X_side: iota^v phi iota / [side:J]."""
    if index is None:
        index = _require_valid(model).index_k if side == "K" else _require_valid(model).index_kp
    iota = pullback(model, side)
    adj = pullback_adjoint(model, side)
    A = _mm(_mm(adj, _frac(phi)), iota)
    return [[x / index for x in row] for row in A]


def k_level_family(model: DoubleCosetModel) -> dict:
    """Commuting operators at level K: registered ones, e_KK' and e_K*phi for central phi."""
    report = _require_valid(model)
    fam = {op.name: _frac(op.matrix) for op in model.operators_at("K")}
    fam[E_KKP] = e_kkp_matrix(model)
    for op in model.central_operators():
        fam[CENTRAL_PREFIX + op.name] = compatible_operator(model, op.matrix, "K", report.index_k)
    return fam


def kp_level_family(model: DoubleCosetModel) -> dict:
    report = _require_valid(model)
    fam = {op.name: _frac(op.matrix) for op in model.operators_at("Kp")}
    for op in model.central_operators():
        fam[CENTRAL_PREFIX_P + op.name] = compatible_operator(model, op.matrix, "Kp", report.index_kp)
    return fam


def k_characters(model: DoubleCosetModel, field="Q") -> list[EigenCharacter]:
    return simultaneous_spectra(k_level_family(model), field)


# ------------------------------------------------------------ certificate


@dataclass
class CongruenceCertificate:
    ell: int
    k: int
    m_value: int
    valuation_bound: int
    v_E: int
    v_index_kp: int
    v_E_tilde: int | None
    A_U: int
    B_V: int
    C: int
    index_k: int
    index_kp: int
    eta_e_value: int
    status: str = "bound_only"
    witness_character: dict | None = None
    new_characters: list = field(default_factory=list)
    rank_one_flag: bool | None = None
    diagnostics: list = field(default_factory=list)
    model_hash: str = ""

    @property
    def v_calE(self) -> int | None:
        if self.v_E_tilde is None:
            return None
        return self.v_index_kp + self.v_E_tilde

    def to_dict(self) -> dict:
        def s(v):
            return None if v is None else str(v)

        return {
            "model_hash": self.model_hash,
            "ell": s(self.ell),
            "k": s(self.k),
            "m": s(self.m_value),
            "n": s(self.valuation_bound),
            "error_terms": {
                "A_U": s(self.A_U),
                "B_V": s(self.B_V),
                "C": s(self.C),
                "v_E": s(self.v_E),
                "v_index_kp": s(self.v_index_kp),
                "v_E_tilde": s(self.v_E_tilde),
            },
            "index_k": s(self.index_k),
            "index_kp": s(self.index_kp),
            "eta_e_KKp": s(self.eta_e_value),
            "status": self.status,
            "witness": self.witness_character,
            "new_characters": self.new_characters,
            "rank_one_flag": self.rank_one_flag,
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d) -> "CongruenceCertificate":
        def i(v):
            return None if v is None else int(v)

        et = d["error_terms"]
        return cls(
            ell=i(d["ell"]),
            k=i(d["k"]),
            m_value=i(d["m"]),
            valuation_bound=i(d["n"]),
            v_E=i(et["v_E"]),
            v_index_kp=i(et["v_index_kp"]),
            v_E_tilde=i(et["v_E_tilde"]),
            A_U=i(et["A_U"]),
            B_V=i(et["B_V"]),
            C=i(et["C"]),
            index_k=i(d["index_k"]),
            index_kp=i(d["index_kp"]),
            eta_e_value=i(d["eta_e_KKp"]),
            status=d["status"],
            witness_character=d["witness"],
            new_characters=list(d["new_characters"]),
            rank_one_flag=d["rank_one_flag"],
            diagnostics=list(d["diagnostics"]),
            model_hash=d["model_hash"],
        )

    @classmethod
    def from_json(cls, text: str) -> "CongruenceCertificate":
        return cls.from_dict(json.loads(text))


def character_to_dict(ch: EigenCharacter) -> dict:
    def enc(v):
        return str(v)

    out = {
        "target": ch.target,
        "values": {name: enc(v) for name, v in ch.values},
        "multiplicity": str(ch.multiplicity),
        "witness": None if ch.witness is None else [str(x) for x in ch.witness],
    }
    if ch.p is not None:
        out["p"] = str(ch.p)
        out["k"] = str(ch.k)
    return out


# ------------------------------------------------------------ raising bound


def _witness_eigenvalue(M, w) -> Fraction:
    img = [sum(Fraction(a) * b for a, b in zip(row, w)) for row in M]
    i = next(i for i, x in enumerate(w) if x)
    lam = img[i] / w[i]
    if any(img[j] != lam * w[j] for j in range(len(w))):
        raise ValueError("witness is not an eigenvector")
    return lam


def raising_valuation(m: int, ell: int, v_E: int = 0, v_index_kp: int = 0, v_E_tilde: int = 0) -> int:
    """n = max(0, v(m) - v(E) - v([K':J]) - v(E~)) for m = eta(e_KK') - [K:J][K':J]."""
    if m == 0:
        raise MZero("m = 0: raising is vacuous")
    return max(0, valuation(m, ell) - v_E - v_index_kp - v_E_tilde)


def ribet_block_bound(q: int, a_q: int, ell: int) -> dict:
    """The bound on the block model with delta^v delta = [[q+1, T], [T^v, q+1]].

    T is kept as a symbol: e_KK' is the product of the off-diagonal blocks,
    and an eigenform with T f = a_q f (T self-adjoint) gives eta(e_KK') = a_q^2.
    Unit weights make E = 1 and the witness is taken primitive.
    """
    import sympy

    T = sympy.Symbol("T")
    gram = sympy.Matrix([[q + 1, T], [T, q + 1]])
    e_kkp = sympy.expand(gram[0, 1] * gram[1, 0])
    index_k = index_kp = q + 1
    if index_kp % ell == 0:
        raise EllDividesIndex(f"{ell} divides [K':J] = {index_kp}")
    eta = int(e_kkp.subs(T, a_q))
    m = eta - index_k * index_kp
    det = int(gram.det().subs(T, a_q))
    out = {"e_KKp": str(e_kkp), "eta_e_KKp": eta, "m": m, "det": det}
    out["n"] = None if m == 0 else raising_valuation(m, ell, 0, valuation(index_kp, ell), 0)
    return out


def class_constant_content(model: DoubleCosetModel, f) -> int:
    """gcd over x of f(x) - f(rep(class of x)); zero when f is class-constant."""
    g = 0
    for xs in k_classes(model):
        base = f[xs[0]]
        for x in xs[1:]:
            g = gcd(g, int(f[x]) - int(base))
    return g


def raising_bound(model: DoubleCosetModel, eta: EigenCharacter, ell: int) -> CongruenceCertificate:
    """Valuation bound n for the character ``eta`` at level K.

    ``eta`` must carry an integral primitive eigenvector witness on X_K; its
    value on e_KK' is recomputed from the witness.
    """
    deg = build_degeneracy(model)
    ik, ikp = deg.index_k, deg.index_kp
    if ikp % ell == 0:
        raise EllDividesIndex(f"{ell} divides [K':J] = {ikp}; raising needs ell not dividing [K':J]")
    if eta.witness is None:
        raise ValueError("eta needs an eigenvector witness")
    w = [int(x) for x in eta.witness]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g != 1:
        raise ValueError("witness must be a primitive integer vector")
    lam = _witness_eigenvalue(e_kkp_matrix(model), w)
    if lam.denominator != 1:
        raise ValueError("eta(e_KK') is not an integer")
    if E_KKP in eta.names and Fraction(eta.value(E_KKP)) != lam:
        raise ValueError("eta(e_KK') disagrees with its witness")
    lam = int(lam)
    m = lam - ik * ikp
    if m == 0:
        raise MZero("m = 0: the eigenform is invariant under the group generated by K and K'; raising is vacuous")

    A_U = lcm(annihilators(model, "K").a_min, annihilators(model, "Kp").a_min)
    B_V = annihilators(model, "J").b_min
    C = 1
    for d in ihara_defect(model):
        C = lcm(C, d)
    E = A_U * B_V * C * C
    vE = valuation(E, ell)
    vkp = valuation(ikp, ell)
    content = class_constant_content(model, w)
    diags = []
    if content == 0:
        vEt = None
        n = 0
        diags.append("witness is class-constant; primitivity bound unavailable")
    else:
        vEt = valuation(content, ell)
        n = raising_valuation(m, ell, vE, vkp, vEt)
    return CongruenceCertificate(
        ell=ell,
        k=1,
        m_value=m,
        valuation_bound=n,
        v_E=vE,
        v_index_kp=vkp,
        v_E_tilde=vEt,
        A_U=A_U,
        B_V=B_V,
        C=C,
        index_k=ik,
        index_kp=ikp,
        eta_e_value=lam,
        diagnostics=diags,
        model_hash=model.digest(),
    )


# ------------------------------------------------------------ abelian check


def _invariant_closure(family: dict, start, F: Field):
    """Smallest subspace containing ``start`` and stable under every operator."""
    basis = [list(v) for v in start]
    if not basis:
        return []
    mats = list(family.values())
    cur_rank = rank(basis, F)
    while True:
        new = list(basis)
        for M in mats:
            for v in basis:
                new.append([sum(a * b for a, b in zip(row, v)) for row in M])
        r = rank(new, F)
        if r == cur_rank:
            return _independent(basis, F)
        basis, cur_rank = _independent(new, F), r


def _independent(vectors, F: Field):
    from .exactalg.linalg import rref

    R, _ = rref(vectors, F)
    return R


def class_constant_space(model: DoubleCosetModel):
    nk = model.size("K")
    return [[Fraction(int(x in xs)) for x in range(nk)] for xs in k_classes(model)]


def abelian_check(model: DoubleCosetModel, eta_bar: EigenCharacter) -> bool:
    """Whether eta_bar occurs on the class-constant functions at level K.

    The class-constant space is first closed up under the K-level family so
    that it is an invariant subspace.
    """
    fam = k_level_family(model)
    names = [n for n in sorted(fam) if n in eta_bar.names]
    if not names:
        raise ValueError("eta_bar has no values on the K-level family")
    space = _invariant_closure(fam, class_constant_space(model), QQ)
    ints = lattice_saturate(
        Lattice.from_generators([_clear(v) for v in space], model.size("K"))
    ).basis
    gf = get_field(eta_bar.p, eta_bar.k)
    F = Field(gf)
    mats = [restrict(fam[n], [list(map(Fraction, v)) for v in ints], QQ) for n in names]
    mats = [F.matrix(R) for R in mats]
    k = len(ints)
    basis = [[F.one if i == j else F.zero for i in range(k)] for j in range(k)]
    targets = [F.elem(eta_bar.value(n)) for n in names]
    return bool(occurs_on(mats, basis, targets, F))


# ------------------------------------------------------------ detection


def _restrict_to_lattice(M, L: Lattice):
    basis = [[Fraction(x) for x in v] for v in L.basis]
    R = restrict(_frac(M), basis, QQ)
    return R


def new_space_operators(model: DoubleCosetModel, deg: DegeneracyData | None = None) -> dict:
    """Central operators restricted to the new lattice (coordinates in its basis)."""
    deg = deg or build_degeneracy(model)
    out = {}
    if deg.new_lattice.rank == 0:
        return out
    for op in model.central_operators():
        out[op.name] = _restrict_to_lattice(op.matrix, deg.new_lattice)
    return out


def detect_new_congruence(model: DoubleCosetModel, eta_bar: EigenCharacter) -> CongruenceCertificate:
    """Search the new lattice mod ell for eta' with eta'(phi) = eta_bar(e_K*phi).

    Returns a certificate whose status is ``found`` or ``not_found``; the
    valuation fields are left at zero (see ``certify`` for the full pipeline).
    """
    central = model.central_operators()
    if not central:
        raise NoCentralOps("no central-at-J operators are registered")
    if abelian_check(model, eta_bar):
        raise AbelianInput("eta_bar is abelian modulo ell relative to K (class-partition surrogate)")
    deg = build_degeneracy(model)
    p, k = eta_bar.p, eta_bar.k
    cert = CongruenceCertificate(
        ell=p,
        k=k,
        m_value=0,
        valuation_bound=0,
        v_E=0,
        v_index_kp=0,
        v_E_tilde=0,
        A_U=1,
        B_V=1,
        C=1,
        index_k=deg.index_k,
        index_kp=deg.index_kp,
        eta_e_value=0,
        status="not_found",
        model_hash=model.digest(),
    )
    found, spectrum = _search_new(model, deg, eta_bar)
    cert.new_characters = [character_to_dict(ch) for ch in spectrum]
    if found is not None:
        cert.status = "found"
        cert.witness_character = character_to_dict(found)
    cert.diagnostics.append("abelianity tested against the class-partition surrogate (class-abelian)")
    return cert


def _search_new(model, deg, eta_bar):
    nl = deg.new_lattice
    if nl.rank == 0:
        return None, []
    ops = new_space_operators(model, deg)
    names = sorted(ops)
    p, k = eta_bar.p, eta_bar.k
    spectrum = simultaneous_spectra({n: ops[n] for n in names}, (p, k))
    F = Field(get_field(p, k))
    targets = [F.elem(eta_bar.value(CENTRAL_PREFIX + n)) for n in names]
    mats = [F.matrix(ops[n]) for n in names]
    lat = [[F(x) for x in v] for v in nl.basis]
    spectrum = [_to_ambient(ch, nl.basis) for ch in spectrum]
    r = nl.rank
    basis = [[F.one if i == j else F.zero for i in range(r)] for j in range(r)]
    block = occurs_on(mats, basis, targets, F)
    if not block:
        return None, spectrum
    rows = []
    for M, t in zip(mats, targets):
        R = restrict(M, block, F)
        rows += [[x - t if i == j else x for j, x in enumerate(row)] for i, row in enumerate(R)]
    coeffs = nullspace(rows, F, len(block))[0]
    coords = combine(block, coeffs, F)
    # back to functions on X_J
    nj = nl.ambient_rank
    vec = combine(lat, coords, F)
    lead = next(x for x in vec if x)
    vec = [x / lead for x in vec]
    found = EigenCharacter(
        "GF",
        tuple((n, t.v) for n, t in zip(names, targets)),
        len(block),
        tuple(x.v for x in vec),
        p=p,
        k=k,
    )
    assert len(vec) == nj
    return found, spectrum


def _to_ambient(ch: EigenCharacter, basis) -> EigenCharacter:
    """Re-express a new-lattice witness as a function on X_J."""
    if ch.witness is None or ch.field is None:
        return ch
    F = Field(ch.field)
    lat = [[F(x) for x in v] for v in basis]
    vec = combine(lat, [F.elem(x) for x in ch.witness], F)
    return replace(ch, witness=tuple(x.v for x in vec))


def verify_witness(model: DoubleCosetModel, eta_bar: EigenCharacter, witness: dict) -> bool:
    """Check eta'(phi) = eta_bar(e_K*phi) and phi w = eta'(phi) w on F^X_J."""
    p, k = int(witness["p"]), int(witness["k"])
    F = Field(get_field(p, k))
    w = [F.elem(int(x)) for x in witness["witness"]]
    if not any(w):
        return False
    for op in model.central_operators():
        val = F.elem(int(witness["values"][op.name]))
        if val != F.elem(eta_bar.value(CENTRAL_PREFIX + op.name)):
            return False
        M = F.matrix(op.matrix)
        img = [sum((a * b for a, b in zip(row, w)), F.zero) for row in M]
        if img != [val * x for x in w]:
            return False
    return True


def certify(model: DoubleCosetModel, eta: EigenCharacter, ell: int, rank_one: bool = False) -> CongruenceCertificate:
    """Full pipeline for a rational character eta at level K.

    Runs the abelian check and the raising bound, then searches the new
    lattice for a congruent character.
    """
    from .exactalg.spectra import reduce_character

    report = _require_valid(model)
    if report.index_kp % ell == 0:
        raise EllDividesIndex(f"{ell} divides [K':J] = {report.index_kp}; raising needs ell not dividing [K':J]")
    eta_bar = reduce_character(eta, ell)
    if abelian_check(model, eta_bar):
        raise AbelianInput("eta is abelian modulo ell relative to K (class-partition surrogate)")
    cert = raising_bound(model, eta, ell)
    det = detect_new_congruence(model, eta_bar)
    cert.status = det.status
    cert.witness_character = det.witness_character
    cert.new_characters = det.new_characters
    cert.diagnostics.extend(det.diagnostics)
    if rank_one:
        cert = rank_one_refine(model, cert)
    return cert


# ------------------------------------------------------------ rank one


def rank_one_refine(model: DoubleCosetModel, cert: CongruenceCertificate) -> CongruenceCertificate:
    if not model.rank_one:
        raise NotRankOne("model is not declared rank-one")
    if cert.witness_character is None:
        cert.rank_one_flag = None
        cert.diagnostics.append("rank-one refinement skipped: no new character was found")
        return cert
    wc = cert.witness_character
    p, k = int(wc["p"]), int(wc["k"])
    F = Field(get_field(p, k))
    at_k = _occurs_at_level(model, "K", wc, F)
    at_kp = _occurs_at_level(model, "Kp", wc, F)
    coprime = (cert.index_k * cert.index_kp) % p != 0
    if not at_k:
        cert.rank_one_flag = True
        cert.diagnostics.append("rank-one: the new character has no K-level eigenspace mod ell (ramified conclusion)")
    elif at_kp and coprime:
        cert.rank_one_flag = False
        cert.diagnostics.append("ContradictionPath: new character occurs at K and K' with ell prime to the indices")
    else:
        cert.rank_one_flag = False
        cert.diagnostics.append("rank-one: the new character occurs at level K; ramification not certified")
    return cert


def _occurs_at_level(model, side, wc, F: Field) -> bool:
    report = validate(model)
    index = report.index_k if side == "K" else report.index_kp
    mats, targets = [], []
    for op in model.central_operators():
        A = compatible_operator(model, op.matrix, side, index)
        mats.append(F.matrix(A))
        targets.append(F.elem(int(wc["values"][op.name])))
    n = model.size(side)
    basis = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    return bool(occurs_on(mats, basis, targets, F))


def class_partition_summary(model: DoubleCosetModel) -> dict:
    cp = class_partition(model)
    return {
        "blocks": [list(b) for b in cp.blocks],
        "representatives": list(cp.representatives),
        "radius": {y: str(cp.radius[y]) for y in model.x_j},
    }
