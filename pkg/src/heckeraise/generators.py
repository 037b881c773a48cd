"""Seeded constructions of valid double-coset models.

Two families are provided.  Group models take a permutation group G with
subgroups K, K' and Gamma, set J = K meet K', and use X_H = Gamma\\G/H with
weight |Gamma meet xHx^-1| at x.  Class sums of G act on Gamma\\G/J by right
convolution and are registered as central-at-J operators.  Fiber models
have unit weights and random equal-size fibers on each side.
"""

from __future__ import annotations

import random
from itertools import permutations

from .cosetmodel import DoubleCosetModel, Operator


def compose(a, b):
    """(a b)(i) = a(b(i))."""
    return tuple(a[i] for i in b)


def inverse(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def generate(gens, degree: int) -> frozenset:
    e = tuple(range(degree))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(seen)


def symmetric_group(degree: int) -> frozenset:
    return frozenset(permutations(range(degree)))


def conjugacy_classes(G) -> list[list[tuple]]:
    """Classes sorted by (size, smallest element); the identity class comes first."""
    seen = set()
    out = []
    for g in sorted(G):
        if g in seen:
            continue
        cls = sorted({compose(compose(h, g), inverse(h)) for h in G})
        seen.update(cls)
        out.append(cls)
    out.sort(key=lambda c: (len(c), c[0]))
    return out


def _double_cosets(G, left, right):
    """Orbit index of each element, and the smallest element of each orbit."""
    index = {}
    reps = []
    for g in sorted(G):
        if g in index:
            continue
        k = len(reps)
        reps.append(g)
        for a in left:
            ag = compose(a, g)
            for b in right:
                index[compose(ag, b)] = k
    return index, reps


def _weight(g, gamma, H) -> int:
    gi = inverse(g)
    return sum(1 for c in gamma if compose(compose(gi, c), g) in H)


def group_model(
    G,
    K,
    Kp,
    gamma=None,
    central: int | None = None,
    metadata: dict | None = None,
) -> DoubleCosetModel:
    """The double-coset model of (G, K, K', Gamma) with class-sum operators.

    ``central`` limits how many non-identity class sums are registered
    (smallest classes first); None registers all of them.
    """
    degree = len(next(iter(G)))
    e = tuple(range(degree))
    gamma = frozenset(gamma) if gamma is not None else frozenset({e})
    J = frozenset(K & Kp)
    idx_k, reps_k = _double_cosets(G, gamma, K)
    idx_kp, reps_kp = _double_cosets(G, gamma, Kp)
    idx_j, reps_j = _double_cosets(G, gamma, J)
    x_k = tuple(f"x{i}" for i in range(len(reps_k)))
    x_kp = tuple(f"z{i}" for i in range(len(reps_kp)))
    x_j = tuple(f"y{i}" for i in range(len(reps_j)))
    pi = {x_j[i]: x_k[idx_k[g]] for i, g in enumerate(reps_j)}
    pip = {x_j[i]: x_kp[idx_kp[g]] for i, g in enumerate(reps_j)}
    w_k = {x_k[i]: _weight(g, gamma, K) for i, g in enumerate(reps_k)}
    w_kp = {x_kp[i]: _weight(g, gamma, Kp) for i, g in enumerate(reps_kp)}
    w_j = {x_j[i]: _weight(g, gamma, J) for i, g in enumerate(reps_j)}
    classes = conjugacy_classes(G)[1:]
    if central is not None:
        classes = classes[:central]
    names = {cls[0]: f"T{ci + 1}" for ci, cls in enumerate(classes)}
    ops = []
    nj = len(reps_j)
    for ci, cls in enumerate(classes):
        M = [[0] * nj for _ in range(nj)]
        for y, g in enumerate(reps_j):
            for c in cls:
                M[y][idx_j[compose(g, c)]] += 1
        # the adjoint of a class sum is the sum over the inverse class
        inv = set(inverse(c) for c in cls)
        adjoint = next((nm for first, nm in names.items() if first in inv), None)
        ops.append(Operator(names[cls[0]], "J", tuple(tuple(r) for r in M), adjoint, True))
    meta = {"construction": "group", "degree": str(degree), "order": str(len(G))}
    meta.update(metadata or {})
    return DoubleCosetModel(x_k, x_kp, x_j, pi, pip, w_k, w_kp, w_j, tuple(ops), None, meta)


def random_subgroup(rng: random.Random, G, max_gens: int = 2):
    elems = sorted(G)
    degree = len(elems[0])
    gens = [rng.choice(elems) for _ in range(rng.randint(1, max_gens))]
    return generate(gens, degree)


def random_group_model(rng: random.Random, max_j: int = 50, central: int | None = 1, attempts: int = 200):
    """A group model on S_4 or S_5 with |X_J| <= max_j and connected class partition."""
    for _ in range(attempts):
        degree = rng.choice((4, 5))
        G = symmetric_group(degree)
        K = random_subgroup(rng, G)
        Kp = random_subgroup(rng, G)
        J = K & Kp
        if len(K) == len(G) or len(Kp) == len(G) or K == Kp:
            continue
        gamma = random_subgroup(rng, G, 1) if rng.random() < 0.5 else None
        gsize = len(gamma) if gamma else 1
        if len(G) // (len(J) * gsize) > max_j * 2:
            continue
        m = group_model(G, K, Kp, gamma, central)
        if len(m.x_j) <= max_j:
            return m
    raise RuntimeError("no group model found within the attempt budget")


def random_fiber_model(rng: random.Random, max_j: int = 50) -> DoubleCosetModel:
    """Unit-weight model with equal fiber sizes a = [K:J] and b = [K':J]."""
    a = rng.randint(1, 5)
    b = rng.randint(1, 5)
    # |X_J| must be a common multiple of a and b
    base = a * b
    nj = base * rng.randint(1, max(1, max_j // base))
    x_j = tuple(f"y{i}" for i in range(nj))
    x_k = tuple(f"x{i}" for i in range(nj // a))
    x_kp = tuple(f"z{i}" for i in range(nj // b))
    order = list(range(nj))
    rng.shuffle(order)
    pi = {x_j[y]: x_k[pos // a] for pos, y in enumerate(order)}
    rng.shuffle(order)
    pip = {x_j[y]: x_kp[pos // b] for pos, y in enumerate(order)}
    ones = lambda xs: {x: 1 for x in xs}  # noqa: E731
    meta = {"construction": "fiber"}
    return DoubleCosetModel(x_k, x_kp, x_j, pi, pip, ones(x_k), ones(x_kp), ones(x_j), (), None, meta)


def random_valid_models(seed: int, count: int, max_j: int = 50) -> list[DoubleCosetModel]:
    """Alternating group and fiber models, reproducible from ``seed``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        if i % 2 == 0:
            out.append(random_group_model(rng, max_j))
        else:
            out.append(random_fiber_model(rng, max_j))
    return out


def random_commuting_family(rng: random.Random, max_rank: int = 8, count: int = 2, entry: int = 3) -> dict:
    """Commuting integer matrices, as integer polynomials in one seed matrix A.

    A is a random integer matrix, a block sum of two copies of one block
    (so it is derogatory), or upper triangular with a repeated diagonal
    (usually not semisimple).
    """
    n = rng.randint(1, max_rank)
    shape = rng.choice(("generic", "doubled", "triangular"))
    if shape == "doubled" and n >= 2:
        h = n // 2
        B = [[rng.randint(-entry, entry) for _ in range(h)] for _ in range(h)]
        A = [[0] * n for _ in range(n)]
        for i in range(h):
            for j in range(h):
                A[i][j] = A[i + h][j + h] = B[i][j]
        if n % 2:
            A[n - 1][n - 1] = rng.randint(-entry, entry)
    elif shape == "triangular":
        diag = [rng.randint(-entry, entry) for _ in range(max(1, n // 2))]
        A = [[0] * n for _ in range(n)]
        for i in range(n):
            A[i][i] = diag[i % len(diag)]
            for j in range(i + 1, n):
                A[i][j] = rng.randint(-1, 1)
    else:
        A = [[rng.randint(-entry, entry) for _ in range(n)] for _ in range(n)]
    ops = {}
    for k in range(count):
        coeffs = [rng.randint(-2, 2) for _ in range(rng.randint(2, 3))]
        ops[f"T{k}"] = _poly_in(coeffs, A)
    return ops


def _poly_in(coeffs, A):
    n = len(A)
    out = [[0] * n for _ in range(n)]
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for c in coeffs:
        for i in range(n):
            for j in range(n):
                out[i][j] += c * P[i][j]
        P = [[sum(P[i][t] * A[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    return out


# ------------------------------------------------------------ raising corpus

# (name, ell, predicate on (model, certificate))
CORPUS_SLOTS = (
    ("small_l3", 3, lambda m, c: len(m.x_j) <= 12),
    ("weighted_l3", 3, lambda m, c: max(m.weights("J")) > 1),
    ("deep_l2", 2, lambda m, c: c.valuation_bound >= 2),
    ("s5_l3", 3, lambda m, c: m.metadata.get("degree") == "5"),
    ("l5", 5, lambda m, c: True),
    ("l7", 7, lambda m, c: True),
)


def raising_candidates(model):
    """(character index, ell, certificate) for every raising hit on ``model``."""
    from fractions import Fraction

    from .cosetmodel import class_partition, validate
    from .errors import AbelianInput, EllDividesIndex, MZero
    from .levelraise import E_KKP, certify, k_characters

    if len(class_partition(model).blocks) != 1:
        return
    report = validate(model)
    for ci, ch in enumerate(k_characters(model)):
        if ch.witness is None or ch.is_symbolic:
            continue
        lam = Fraction(ch.value(E_KKP))
        m = lam - report.index_k * report.index_kp
        if m == 0 or lam.denominator != 1:
            continue
        for ell in (2, 3, 5, 7):
            if report.index_kp % ell == 0 or m % ell:
                continue
            try:
                cert = certify(model, ch, ell)
            except (AbelianInput, EllDividesIndex, MZero):
                continue
            if cert.valuation_bound >= 1 and cert.status == "found":
                yield ci, ell, cert


def search_raising_corpus(seed: int = 7, max_j: int = 50, max_models: int = 2000) -> list[dict]:
    """Fill CORPUS_SLOTS from seeded random group models; deterministic for a seed."""
    rng = random.Random(seed)
    filled = {}
    seen = set()
    for _ in range(max_models):
        if len(filled) == len(CORPUS_SLOTS):
            break
        degree = rng.choice((4, 5))
        G = symmetric_group(degree)
        K = random_subgroup(rng, G)
        Kp = random_subgroup(rng, G)
        if len(K) in (1, len(G)) or len(Kp) in (1, len(G)) or K == Kp:
            continue
        gamma = random_subgroup(rng, G, 1) if rng.random() < 0.6 else None
        gsize = len(gamma) if gamma else 1
        if len(G) // (len(K & Kp) * gsize) > max_j + 10:
            continue
        model = group_model(G, K, Kp, gamma, None)
        if len(model.x_j) > max_j or model.digest() in seen:
            continue
        seen.add(model.digest())
        for ci, ell, cert in raising_candidates(model):
            for name, slot_ell, pred in CORPUS_SLOTS:
                if name not in filled and ell == slot_ell and pred(model, cert):
                    filled[name] = {"name": name, "model": model, "character": ci, "ell": ell, "certificate": cert}
                    break
    return [filled[name] for name, _, _ in CORPUS_SLOTS if name in filled]
