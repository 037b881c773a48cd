"""Finite double-coset models.

A model consists of three finite sets X_K, X_K', X_J, surjections
pi: X_J -> X_K and pip: X_J -> X_K', positive integer weights on each set,
and named integer operator matrices.  Functions on a set are column vectors
indexed by the set in input order; an operator matrix M acts by
(M f)(x) = sum_y M[x][y] f(y).

The pairing on functions at a level is <f, g> = sum_x f(x) g(x) / w(x).
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

from .errors import ModelError, ParseError
from .exactalg.lattice import Lattice, lattice_sum, quotient_invariants
from .exactalg.linalg import sparse_matmul

LEVELS = ("K", "Kp", "J")
SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class Operator:
    name: str
    level: str
    matrix: tuple
    adjoint: str | None = None
    central_at_j: bool = False

    def as_lists(self):
        return [list(r) for r in self.matrix]


@dataclass(frozen=True, eq=False)
class DoubleCosetModel:
    x_k: tuple
    x_kp: tuple
    x_j: tuple
    pi: Mapping
    pip: Mapping
    w_k: Mapping
    w_kp: Mapping
    w_j: Mapping
    operators: tuple = ()
    prime_q: int | None = None
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        _check_structure(self)

    # index helpers
    def labels(self, level: str) -> tuple:
        return {"K": self.x_k, "Kp": self.x_kp, "J": self.x_j}[level]

    def weights(self, level: str) -> list[int]:
        w = {"K": self.w_k, "Kp": self.w_kp, "J": self.w_j}[level]
        return [w[x] for x in self.labels(level)]

    def size(self, level: str) -> int:
        return len(self.labels(level))

    def projection(self, side: str) -> list[int]:
        """For side K or Kp, the index in X_side of the image of each y in X_J."""
        target = self.labels(side)
        pos = {x: i for i, x in enumerate(target)}
        mp = self.pi if side == "K" else self.pip
        return [pos[mp[y]] for y in self.x_j]

    def operator(self, name: str) -> Operator:
        for op in self.operators:
            if op.name == name:
                return op
        raise KeyError(name)

    def operators_at(self, level: str) -> list[Operator]:
        return [op for op in self.operators if op.level == level]

    def central_operators(self) -> list[Operator]:
        return [op for op in self.operators if op.level == "J" and op.central_at_j]

    @property
    def rank_one(self) -> bool:
        return bool(self.metadata.get("rank_one", False))

    # serialization
    def to_dict(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "x_k": list(self.x_k),
            "x_kp": list(self.x_kp),
            "x_j": list(self.x_j),
            "pi": {y: self.pi[y] for y in self.x_j},
            "pip": {y: self.pip[y] for y in self.x_j},
            "w_k": {x: str(self.w_k[x]) for x in self.x_k},
            "w_kp": {x: str(self.w_kp[x]) for x in self.x_kp},
            "w_j": {x: str(self.w_j[x]) for x in self.x_j},
            "operators": {
                op.name: {
                    "level": op.level,
                    "matrix": [[str(v) for v in row] for row in op.matrix],
                    "adjoint": op.adjoint,
                    "central_at_j": op.central_at_j,
                }
                for op in self.operators
            },
        }
        meta = dict(self.metadata)
        if self.prime_q is not None:
            meta["prime_q"] = str(self.prime_q)
        if meta:
            doc["metadata"] = meta
        return doc

    @classmethod
    def from_dict(cls, doc) -> "DoubleCosetModel":
        try:
            return _from_dict(doc)
        except ModelError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"malformed model document: {exc!r}") from exc

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _parse_int(v) -> int:
    if isinstance(v, bool):
        raise ValueError("booleans are not integers")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        return int(v.strip())
    raise ValueError(f"expected an integer, got {v!r}")


def _from_dict(doc) -> DoubleCosetModel:
    if not isinstance(doc, Mapping):
        raise ParseError("model document must be a mapping")
    ver = str(doc.get("schema_version", SCHEMA_VERSION))
    if ver != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {ver!r}")
    x_k = tuple(str(x) for x in doc["x_k"])
    x_kp = tuple(str(x) for x in doc["x_kp"])
    x_j = tuple(str(x) for x in doc["x_j"])
    pi = {str(k): str(v) for k, v in doc["pi"].items()}
    pip = {str(k): str(v) for k, v in doc["pip"].items()}
    w_k = {str(k): _parse_int(v) for k, v in doc["w_k"].items()}
    w_kp = {str(k): _parse_int(v) for k, v in doc["w_kp"].items()}
    w_j = {str(k): _parse_int(v) for k, v in doc["w_j"].items()}
    ops = []
    for name, spec in doc.get("operators", {}).items():
        ops.append(
            Operator(
                name=str(name),
                level=str(spec["level"]),
                matrix=tuple(tuple(_parse_int(v) for v in row) for row in spec["matrix"]),
                adjoint=None if spec.get("adjoint") is None else str(spec["adjoint"]),
                central_at_j=bool(spec.get("central_at_j", False)),
            )
        )
    meta = dict(doc.get("metadata", {}) or {})
    q = meta.pop("prime_q", None)
    q = None if q is None else _parse_int(q)
    return DoubleCosetModel(x_k, x_kp, x_j, pi, pip, w_k, w_kp, w_j, tuple(ops), q, meta)


def _check_structure(m: DoubleCosetModel) -> None:
    """Parse-time checks; semantic invariants are left to ``validate``."""
    for name, xs in (("x_k", m.x_k), ("x_kp", m.x_kp), ("x_j", m.x_j)):
        if not xs:
            raise ModelError(f"{name} is empty")
        if len(set(xs)) != len(xs):
            raise ModelError(f"{name} has repeated labels")
    for name, mp, target in (("pi", m.pi, m.x_k), ("pip", m.pip, m.x_kp)):
        tset = set(target)
        for y in m.x_j:
            if y not in mp:
                raise ModelError(f"{name} is undefined at {y!r}")
            if mp[y] not in tset:
                raise ModelError(f"{name}({y!r}) = {mp[y]!r} is not a known label")
        extra = set(mp) - set(m.x_j)
        if extra:
            raise ModelError(f"{name} has keys outside x_j: {sorted(extra)}")
    for name, w, xs in (("w_k", m.w_k, m.x_k), ("w_kp", m.w_kp, m.x_kp), ("w_j", m.w_j, m.x_j)):
        for x in xs:
            if x not in w:
                raise ModelError(f"{name} is missing {x!r}")
            if not isinstance(w[x], int) or isinstance(w[x], bool) or w[x] <= 0:
                raise ModelError(f"{name}[{x!r}] must be a positive integer")
    seen = set()
    for op in m.operators:
        if op.name in seen:
            raise ModelError(f"duplicate operator name {op.name!r}")
        seen.add(op.name)
        if op.level not in LEVELS:
            raise ModelError(f"operator {op.name!r} has unknown level {op.level!r}")
        n = m.size(op.level)
        if len(op.matrix) != n or any(len(r) != n for r in op.matrix):
            raise ModelError(f"operator {op.name!r} must be {n}x{n}")
        if op.central_at_j and op.level != "J":
            raise ModelError(f"operator {op.name!r} is flagged central at J but lives at {op.level}")
    for op in m.operators:
        if op.adjoint is not None and op.adjoint not in seen:
            raise ModelError(f"operator {op.name!r} names unknown adjoint {op.adjoint!r}")


# ------------------------------------------------------------ pullbacks


def pullback(model: DoubleCosetModel, side: str) -> list[list[int]]:
    """The n_J x n_side 0/1 matrix of f -> f o pi (or pip)."""
    proj = model.projection(side)
    n = model.size(side)
    return [[int(proj[y] == x) for x in range(n)] for y in range(len(proj))]


def pullback_adjoint(model: DoubleCosetModel, side: str) -> list[list[Fraction]]:
    """Adjoint of the pullback for the weighted pairings.

    (iota^v g)(x) = w_side(x) * sum over y above x of g(y) / w_J(y).
    """
    proj = model.projection(side)
    wk = model.weights(side)
    wj = model.weights("J")
    n = model.size(side)
    out = [[Fraction(0)] * len(proj) for _ in range(n)]
    for y, x in enumerate(proj):
        out[x][y] = Fraction(wk[x], wj[y])
    return out


def fiber_masses(model: DoubleCosetModel, side: str) -> list[Fraction]:
    """w_side(x) * sum_{y over x} 1/w_J(y) for each x; all equal [side:J] in a valid model."""
    proj = model.projection(side)
    wk = model.weights(side)
    wj = model.weights("J")
    acc = [Fraction(0)] * model.size(side)
    for y, x in enumerate(proj):
        acc[x] += Fraction(1, wj[y])
    return [a * wk[x] for x, a in enumerate(acc)]


def index_of(model: DoubleCosetModel, side: str) -> int:
    masses = fiber_masses(model, side)
    first = masses[0]
    if any(m != first for m in masses) or first.denominator != 1 or first <= 0:
        raise ModelError(f"mass formula fails at level {side}")
    return int(first)


# ------------------------------------------------------------ validation


@dataclass
class ValidationReport:
    accepted: bool
    index_k: int | None
    index_kp: int | None
    failures: list

    def to_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "index_k": None if self.index_k is None else str(self.index_k),
            "index_kp": None if self.index_kp is None else str(self.index_kp),
            "failures": self.failures,
        }


def _diag_inv(ws):
    return [Fraction(1, w) for w in ws]


def validate(model: DoubleCosetModel, strict_torsion_free: bool = False) -> ValidationReport:
    """Check every model invariant; failures are collected with witnesses.

    With ``strict_torsion_free`` every weight must equal 1.
    """
    failures = []
    indices = {}
    for side, mp, target in (("K", model.pi, model.x_k), ("Kp", model.pip, model.x_kp)):
        hit = {mp[y] for y in model.x_j}
        missing = [x for x in target if x not in hit]
        if missing:
            failures.append({"check": "surjective", "side": side, "witness": missing[0]})
            continue
        masses = fiber_masses(model, side)
        first = masses[0]
        bad = None
        if first.denominator != 1:
            bad = 0
        else:
            bad = next((i for i, m in enumerate(masses) if m != first), None)
        if bad is not None:
            failures.append(
                {
                    "check": "mass_formula",
                    "side": side,
                    "witness": target[bad],
                    "mass": str(masses[bad]),
                    "expected": str(first) if bad else "an integer",
                }
            )
        else:
            indices[side] = int(first)

    if strict_torsion_free:
        for level in LEVELS:
            for x, w in zip(model.labels(level), model.weights(level)):
                if w != 1:
                    failures.append({"check": "torsion_free", "level": level, "witness": x, "weight": str(w)})
                    break

    for op in model.operators:
        if op.adjoint is None:
            continue
        partner = model.operator(op.adjoint)
        if partner.level != op.level:
            failures.append({"check": "adjoint_level", "pair": [op.name, partner.name]})
            continue
        g = _diag_inv(model.weights(op.level))
        A, B = op.matrix, partner.matrix
        n = len(A)
        # <A f, h> = <f, B h> for all f, h  <=>  A[y][x] g[y] = g[x] B[x][y]
        w = next(
            ((x, y) for x in range(n) for y in range(n) if A[y][x] * g[y] != g[x] * B[x][y]),
            None,
        )
        if w is not None:
            labels = model.labels(op.level)
            failures.append(
                {"check": "adjointness", "pair": [op.name, partner.name], "witness": [labels[w[0]], labels[w[1]]]}
            )

    central = model.central_operators()
    for i in range(len(central)):
        for j in range(i + 1, len(central)):
            A = central[i].as_lists()
            B = central[j].as_lists()
            if _mm(A, B) != _mm(B, A):
                failures.append({"check": "central_commute", "pair": [central[i].name, central[j].name]})
    if central and "K" in indices and "Kp" in indices:
        for side in ("K", "Kp"):
            e = averaging_projector(model, side, index=indices[side])
            for op in central:
                A = [[Fraction(v) for v in row] for row in op.matrix]
                if _mm(A, e) != _mm(e, A):
                    failures.append({"check": "central_projector", "operator": op.name, "side": side})

    accepted = not failures
    return ValidationReport(accepted, indices.get("K"), indices.get("Kp"), failures)


def _mm(A, B):
    return sparse_matmul(A, B)


# ------------------------------------------------------------ pairings


@dataclass(frozen=True)
class WeightedPairing:
    level: str
    gram: tuple

    def pair(self, f, g) -> Fraction:
        return sum(Fraction(a) * b * self.gram[i][i] for i, (a, b) in enumerate(zip(f, g)))


def gram_matrix(model: DoubleCosetModel, level: str) -> WeightedPairing:
    ws = model.weights(level)
    n = len(ws)
    return WeightedPairing(
        level, tuple(tuple(Fraction(1, ws[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))
    )


@dataclass(frozen=True)
class AnnihilatorData:
    a_min: int
    b_min: int


def annihilators(model: DoubleCosetModel, level: str) -> AnnihilatorData:
    ws = model.weights(level)
    n = len(ws)
    a_min = 1
    for w in ws:
        a_min = lcm(a_min, w)
    L = Lattice.full(n)
    # vectors v with <v, L> integral are exactly sum c_x w(x) e_x
    dual = Lattice.from_generators([[ws[i] if i == j else 0 for j in range(n)] for i in range(n)], n)
    _, tors = quotient_invariants(L, lattice_sum(L, dual))
    b_min = 1
    for d in tors:
        b_min = lcm(b_min, d)
    return AnnihilatorData(a_min, b_min)


def averaging_projector(model: DoubleCosetModel, side: str, index: int | None = None):
    """e = iota iota^v / [side:J] on functions on X_J, as a Fraction matrix."""
    if index is None:
        index = index_of(model, side)
    proj = model.projection(side)
    adj = pullback_adjoint(model, side)
    nj = len(proj)
    return [[adj[proj[y]][z] / index for z in range(nj)] for y in range(nj)]


# ------------------------------------------------------------ class partition


@dataclass(frozen=True)
class ClassPartition:
    """Blocks of X_J (labels, input order), one representative each, and radii."""

    blocks: tuple
    representatives: tuple
    radius: Mapping

    def block_of(self, y) -> int:
        for i, b in enumerate(self.blocks):
            if y in b:
                return i
        raise KeyError(y)


def class_partition(model: DoubleCosetModel) -> ClassPartition:
    nj = len(model.x_j)
    parent = list(range(nj))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    adjacency = [[] for _ in range(nj)]
    for side in ("K", "Kp"):
        first_in_fiber = {}
        fibers = {}
        for y, x in enumerate(model.projection(side)):
            fibers.setdefault(x, []).append(y)
            if x in first_in_fiber:
                union(first_in_fiber[x], y)
            else:
                first_in_fiber[x] = y
        for ys in fibers.values():
            for a in ys:
                adjacency[a].extend(b for b in ys if b != a)
    groups = {}
    for y in range(nj):
        groups.setdefault(find(y), []).append(y)
    ordered = sorted(groups.values(), key=lambda ys: ys[0])
    radius = {}
    for ys in ordered:
        rep = ys[0]
        dist = {rep: 0}
        dq = deque([rep])
        while dq:
            a = dq.popleft()
            for b in adjacency[a]:
                if b not in dist:
                    dist[b] = dist[a] + 1
                    dq.append(b)
        for y in ys:
            radius[model.x_j[y]] = dist[y]
    blocks = tuple(tuple(model.x_j[y] for y in ys) for ys in ordered)
    reps = tuple(b[0] for b in blocks)
    return ClassPartition(blocks, reps, radius)


def k_classes(model: DoubleCosetModel, partition: ClassPartition | None = None) -> list[list[int]]:
    """The partition of X_K (as index lists) induced by the class partition of X_J."""
    partition = partition or class_partition(model)
    pos = {x: i for i, x in enumerate(model.x_k)}
    out = []
    for b in partition.blocks:
        xs = sorted({pos[model.pi[y]] for y in b})
        out.append(xs)
    return out


def load_model(path) -> DoubleCosetModel:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read model document {path}: {exc}") from exc
    return DoubleCosetModel.from_dict(doc)
