"""The acceptance suite: twelve timed checks, each returning a CriterionResult."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import product
from math import gcd, isqrt

from sympy import factorint, primerange

from .cosetmodel import DoubleCosetModel, pullback, pullback_adjoint
from .eigensys import has_nilpotent_mod_p, hecke_ring, lift_character, reduces_to, semisimple_mod_p
from .errors import EllDividesIndex, NotReduced, SuiteFailure
from .exactalg.lattice import Lattice
from .exactalg.spectra import reduce_character, simultaneous_spectra
from .generators import random_commuting_family, random_valid_models
from .levelraise import (
    CENTRAL_PREFIX,
    CongruenceCertificate,
    build_degeneracy,
    certify,
    congruence_module,
    ihara_defect,
    k_characters,
    ribet_block_bound,
    valuation,
    verify_witness,
)
from .satake import (
    C2,
    GL3,
    GSP4,
    A2,
    allowed_types,
    brute_force_exclusions,
    constituent_sums,
    exclusions,
    profile_gl3,
    profile_gsp4,
    raising_types,
    unitary_dual_filter,
    verify_checksum,
    weyl_double_cosets,
)
from .satake.tables import GL3_TABLE, GSP4_TABLE

DEFAULT_SEED = 20240917
CORPUS = "corpus/v1"


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    limit: float
    detail: str

    @property
    def ok(self) -> bool:
        return self.passed and self.elapsed < self.limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        timing = f"{self.elapsed:.2f}s/{self.limit:g}s"
        return f"[{status}] {self.number:2d} {self.name} ({timing}) {self.detail}"

    def to_dict(self) -> dict:
        return {
            "number": str(self.number),
            "name": self.name,
            "passed": self.ok,
            "limit_seconds": str(self.limit),
            "detail": self.detail,
        }


def _timed(number: int, name: str, limit: float, fn, *args) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = fn(*args)
    except Exception as exc:  # a crash is a failure with its message
        passed, detail = False, f"error: {exc!r}"
    return CriterionResult(number, name, passed, time.perf_counter() - start, limit, detail)


def _prime_powers(bound: int) -> list[int]:
    return [q for q in range(2, bound) if len(factorint(q)) == 1]


def corpus_path(*parts: str):
    return resources.files("heckeraise").joinpath(CORPUS, *parts)


def load_corpus_manifest() -> list[dict]:
    doc = json.loads(corpus_path("raising", "manifest.json").read_text(encoding="utf-8"))
    return doc["entries"]


def load_corpus_model(filename: str) -> DoubleCosetModel:
    return DoubleCosetModel.from_dict(json.loads(corpus_path("raising", filename).read_text(encoding="utf-8")))


# ------------------------------------------------------------ 1-5: tables and Satake


EXPECTED_ROWS = {
    (GL3, "I"): (1, 3, 6),
    (GL3, "IIa"): (0, 1, 3),
    (GL3, "IIIa"): (0, 0, 1),
    (GSP4, "I"): (1, 2, 4, 4, 8),
    (GSP4, "IVa"): (0, 0, 0, 0, 1),
    (GSP4, "VIb"): (0, 0, 0, 1, 1),
}


def check_tables(gl3=None, gsp4=None):
    if not verify_checksum(gl3, gsp4):
        return False, "table checksum mismatch"
    gl3 = GL3_TABLE if gl3 is None else gl3
    gsp4 = GSP4_TABLE if gsp4 is None else gsp4
    for (group, label), row in EXPECTED_ROWS.items():
        table = gl3 if group == GL3 else gsp4
        if tuple(table[label][0]) != row:
            return False, f"{group} {label} row is {table[label][0]}, expected {row}"
    if profile_gl3("IIa").dims != (0, 1, 3) or profile_gsp4("IVa").dims != (0, 0, 0, 0, 1):
        return False, "profile accessors disagree with the tables"
    return True, f"checksum ok, {len(EXPECTED_ROWS)} spot rows match"


def check_constituent_sums():
    count = 0
    for group, typ in ((GL3, "I"), (GSP4, "I")):
        sums = constituent_sums(group)
        for fam, total in sums.items():
            if fam == typ:
                continue
            count += 1
            if total != sums[typ]:
                return False, f"{group} family {fam} sums to {total}, not {sums[typ]}"
    return count == 7, f"{count} reducible families sum to the type I row"


def check_weyl():
    a2 = tuple(weyl_double_cosets(A2, (), right) for right in (("s1", "s2"), ("s1",), ()))
    c2 = tuple(weyl_double_cosets(C2, (), right) for right in (("s_short", "s_long"), ("s_long",), ("s_short",), ()))
    ok = a2 == (1, 3, 6) and c2 == (1, 4, 4, 8)
    ok = ok and a2 == GL3_TABLE["I"][0] and c2 == tuple(GSP4_TABLE["I"][0][i] for i in (0, 2, 3, 4))
    return ok, f"A2 K/J/I = {a2}, C2 K/J/J'/I = {c2}"


def check_endgames(bound: int = 50):
    gl3 = {t.label for t in unitary_dual_filter(raising_types(GL3))}
    gsp4 = {t.label for t in unitary_dual_filter(raising_types(GSP4))}
    if gl3 != {"I", "IIa"}:
        return False, f"GL3 filter gives {sorted(gl3)}"
    if gsp4 != {"I", "IIa", "IIIa", "Va", "VIa"}:
        return False, f"GSp4 filter gives {sorted(gsp4)}"
    pairs = refined = 0
    for ell in primerange(2, bound):
        for q in _prime_powers(bound):
            if q % ell == 0:
                continue
            pairs += 1
            got = {t.label for t in allowed_types(GSP4, q, ell)}
            if pow(q, 4, ell) != 1:
                refined += 1
                if got != {"I", "IIa", "IIIa"}:
                    return False, f"q={q}, ell={ell}: allowed {sorted(got)}"
            elif not got >= {"I", "IIa", "IIIa"}:
                return False, f"q={q}, ell={ell}: allowed {sorted(got)}"
    return True, f"{pairs} (q, ell) pairs, {refined} with q^4 != 1 reduce to {{I, IIa, IIIa}}"


def check_exclusions(bound: int = 50):
    pairs = 0
    for ell in primerange(2, bound):
        for q in _prime_powers(bound):
            if q % ell == 0:
                continue
            pairs += 1
            closed, brute = exclusions(q, ell), brute_force_exclusions(q, ell)
            if closed != brute:
                return False, f"q={q}, ell={ell}: closed form {sorted(closed)}, search {sorted(brute)}"
    return True, f"closed form agrees with exhaustive search on {pairs} pairs"


# ------------------------------------------------------------ 6-8: degeneracy and lattices


def _block_formula(model, index_k, index_kp):
    iota = pullback(model, "K")
    iotap = pullback(model, "Kp")
    adj = pullback_adjoint(model, "K")
    adjp = pullback_adjoint(model, "Kp")
    nj, nk, nkp = model.size("J"), model.size("K"), model.size("Kp")

    def prod(A, B, rows, cols):
        return [[sum(A[i][y] * B[y][j] for y in range(nj)) for j in range(cols)] for i in range(rows)]

    b = prod(adj, iotap, nk, nkp)
    c = prod(adjp, iota, nkp, nk)
    top = [[Fraction(index_k * (i == j)) for j in range(nk)] + b[i] for i in range(nk)]
    bottom = [c[i] + [Fraction(index_kp * (i == j)) for j in range(nkp)] for i in range(nkp)]
    return top + bottom


def check_block_identity(models):
    for i, model in enumerate(models):
        deg = build_degeneracy(model)
        block = _block_formula(model, deg.index_k, deg.index_kp)
        if [list(r) for r in deg.delta_gram] != block:
            return False, f"model {i}: direct product differs from the block formula"
    sizes = [len(m.x_j) for m in models]
    return True, f"{len(models)} models, |X_J| in [{min(sizes)}, {max(sizes)}]"


def check_ihara(models):
    for i, model in enumerate(models):
        tors = ihara_defect(model)
        if tors:
            return False, f"model {i}: nontrivial defect {tors}"
    return True, f"{len(models)} models, every defect trivial"


def check_congruence_law(bound: int = 20):
    Z = Lattice.full(1)
    for d in range(1, bound + 1):
        for E in range(1, bound + 1):
            got = congruence_module(Z, Z, [[d]], E)
            order = d * d // gcd(d * d, E)
            want = [order] if order > 1 else []
            if got != want:
                return False, f"d={d}, E={E}: got {got}, expected {want}"
    return True, f"{bound * bound} (d, E) pairs"


# ------------------------------------------------------------ 9: raising corpus


def _nullspace_mod(A, p: int, ncols: int) -> list[list[int]]:
    """Right kernel of A over F_p by plain Gauss-Jordan elimination."""
    rows = [[x % p for x in r] for r in A]
    piv = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(piv):
            v[pc] = -rows[i][fc] % p
        out.append(v)
    return out


def brute_force_characters(ops: dict, p: int) -> dict:
    """Every joint eigenvalue tuple in F_p of the operators on F_p^n, with its eigenspace.

    Each operator is tried at every t in F_p, restricted to the joint
    eigenspace of the operators before it; empty branches are dropped.
    """
    names = sorted(ops)
    mats = [[[x % p for x in row] for row in ops[nm]] for nm in names]
    n = len(mats[0])
    out = {}

    def walk(depth, basis, prefix):
        if depth == len(mats):
            out[tuple(zip(names, prefix))] = basis
            return
        M = mats[depth]
        MB = [[sum(M[i][k] * v[k] for k in range(n)) % p for i in range(n)] for v in basis]
        for t in range(p):
            # (M - t) applied to each basis vector, as columns
            cols = [[(mb[i] - t * v[i]) % p for i in range(n)] for mb, v in zip(MB, basis)]
            coeffs = _nullspace_mod([list(r) for r in zip(*cols)], p, len(basis))
            if coeffs:
                sub = [[sum(c * v[i] for c, v in zip(cf, basis)) % p for i in range(n)] for cf in coeffs]
                walk(depth + 1, sub, prefix + (t,))

    walk(0, [[int(i == j) for i in range(n)] for j in range(n)], ())
    return out


def _rank_mod(vectors, p: int) -> int:
    if not vectors:
        return 0
    return len(vectors[0]) - len(_nullspace_mod(vectors, p, len(vectors[0])))


def check_raising_entry(entry: dict) -> tuple[bool, str]:
    model = load_corpus_model(entry["model"])
    ell = int(entry["ell"])
    eta = k_characters(model)[int(entry["character"])]
    cert = certify(model, eta, ell)
    name = entry["name"]
    if cert.valuation_bound < 1:
        return False, f"{name}: n = {cert.valuation_bound}"
    if cert.status != "found" or cert.witness_character is None:
        return False, f"{name}: no congruent new character"
    golden = corpus_path("raising", entry["certificate"]).read_text(encoding="utf-8")
    if cert.to_json() != golden or CongruenceCertificate.from_json(golden).to_json() != golden:
        return False, f"{name}: certificate differs from the golden file"
    eta_bar_values = {}
    for nm, v in eta.values:
        v = Fraction(v)
        eta_bar_values[nm] = v.numerator * pow(v.denominator, -1, ell) % ell
    eta_bar = reduce_character(eta, ell)
    if not verify_witness(model, eta_bar, cert.witness_character):
        return False, f"{name}: witness fails eta'(phi) = eta_bar(e_K * phi)"
    # independent oracle: joint eigenspaces on all of F^{X_J}, met with new mod ell
    central = {op.name: op.as_lists() for op in model.central_operators()}
    table = brute_force_characters(central, ell)
    target = tuple((nm, eta_bar_values[CENTRAL_PREFIX + nm]) for nm in sorted(central))
    wc = cert.witness_character
    if tuple((nm, int(wc["values"][nm])) for nm in sorted(central)) != target:
        return False, f"{name}: witness values differ from eta_bar(e_K * phi)"
    if target not in table:
        return False, f"{name}: target system absent from the brute-force spectrum"
    new = [[x % ell for x in v] for v in build_degeneracy(model).new_lattice.basis]
    space = table[target]
    w = [int(x) % ell for x in wc["witness"]]
    if not any(w):
        return False, f"{name}: zero witness"
    if _rank_mod(space + [w], ell) != _rank_mod(space, ell) or _rank_mod(new + [w], ell) != _rank_mod(new, ell):
        return False, f"{name}: witness is not a joint eigenvector in new mod ell"
    return True, f"{name}: n={cert.valuation_bound}"


def check_raising_corpus():
    entries = load_corpus_manifest()
    details = []
    for entry in entries:
        ok, msg = check_raising_entry(entry)
        if not ok:
            return False, msg
        details.append(msg)
    return len(entries) >= 5, f"{len(entries)} models: " + ", ".join(details)


# ------------------------------------------------------------ 10: rank-one block form


def check_ribet(qs=(2, 3, 5, 7), ells=(3, 5, 7, 11)):
    checked = refused = vacuous = 0
    for q in qs:
        amax = isqrt(484 * q) // 10  # floor(2.2 sqrt(q)), exactly
        for a in range(-amax, amax + 1):
            target = a * a - (1 + q) ** 2
            for ell in ells:
                try:
                    res = ribet_block_bound(q, a, ell)
                except EllDividesIndex:
                    refused += 1
                    continue
                if res["det"] != -res["m"] or res["m"] != target:
                    return False, f"q={q}, a={a}: block data inconsistent"
                if target == 0:
                    vacuous += 1
                    if res["n"] is not None:
                        return False, f"q={q}, a={a}: m = 0 should be vacuous"
                    continue
                v = valuation(target, ell)
                for n in range(0, v + 3):
                    if (res["n"] >= n) != (v >= n):
                        return False, f"q={q}, a={a}, ell={ell}, n={n}: conditions differ"
                checked += 1
    return True, f"{checked} cases equivalent, {vacuous} vacuous (a^2 = (1+q)^2), {refused} refused (ell | q+1)"


# ------------------------------------------------------------ 11-12: Hecke rings


def seeded_families(seed: int, count: int = 50):
    rng = random.Random(seed)
    return [random_commuting_family(rng) for _ in range(count)]


def check_lifts(families, ells=(2, 3, 5, 7)):
    total = 0
    for i, ops in enumerate(families):
        ring = hecke_ring(ops)
        for ell in ells:
            for eta_bar in simultaneous_spectra(ops, ell):
                lifts = lift_character(ring, eta_bar)
                if not lifts:
                    return False, f"family {i}, ell={ell}: a character has no lift"
                if not all(reduces_to(ch, eta_bar) for ch in lifts):
                    return False, f"family {i}, ell={ell}: a lift does not reduce back"
                total += 1
    return True, f"{len(families)} families, {total} mod-ell characters lift and reduce back"


def check_semisimplicity(families, bound: int = 20):
    certified = nilpotent = skipped = 0
    for i, ops in enumerate(families):
        ring = hecke_ring(ops)
        for p in primerange(2, bound):
            nil = has_nilpotent_mod_p(ring, p)
            nilpotent += nil
            try:
                cert = semisimple_mod_p(ring, p)
            except NotReduced:
                skipped += 1
                continue
            certified += cert
            if cert and nil:
                return False, f"family {i}, p={p}: certified despite a nilpotent"
    return True, f"{certified} certificates, {nilpotent} nilpotent cases, {skipped} non-reduced skips"


# ------------------------------------------------------------ suite


def run_suite(seed: int = DEFAULT_SEED, gl3_table=None, gsp4_table=None, only=None) -> list[CriterionResult]:
    """Run the criteria (all, or the numbers in ``only``) in order."""
    cache = {}

    def models():
        if "models" not in cache:
            cache["models"] = random_valid_models(seed, 100)
        return cache["models"]

    def families():
        if "families" not in cache:
            cache["families"] = seeded_families(seed)
        return cache["families"]

    plan = [
        (1, "table fidelity", 1, lambda: check_tables(gl3_table, gsp4_table)),
        (2, "constituent sums", 1, check_constituent_sums),
        (3, "Weyl double cosets", 1, check_weyl),
        (4, "raising endgames", 5, check_endgames),
        (5, "exclusion oracle", 30, check_exclusions),
        (6, "block identity", 30, lambda: check_block_identity(models())),
        (7, "Ihara property", 60, lambda: check_ihara(models())),
        (8, "congruence-module law", 1, check_congruence_law),
        (9, "raising corpus", 60, check_raising_corpus),
        (10, "rank-one block specialization", 10, check_ribet),
        (11, "lift round trip", 30, lambda: check_lifts(families())),
        (12, "semisimplicity certificates", 30, lambda: check_semisimplicity(families())),
    ]
    results = []
    for number, name, limit, fn in plan:
        if only is not None and number not in only:
            continue
        results.append(_timed(number, name, limit, fn))
    return results


def require_pass(results: list[CriterionResult]) -> None:
    """Raise SuiteFailure naming the first failing criterion, if any."""
    for r in results:
        if not r.ok:
            raise SuiteFailure(r.line())
