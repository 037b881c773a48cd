"""Finite Weyl groups of type A2 and C2 by explicit enumeration.

A2 acts on 3 coordinates by permutations, with s1 = (0 1) and s2 = (1 2).
C2 acts on 2 coordinates by signed permutations, with ``s_short`` swapping
the coordinates and ``s_long`` negating the second one.
"""

from __future__ import annotations

from collections import deque

A2 = "A2"
C2 = "C2"


def _compose(f, g):
    """(f o g) for signed permutations given as tuples of (sign * (index + 1))."""
    out = []
    for v in g:
        i = abs(v) - 1
        s = 1 if v > 0 else -1
        out.append(s * f[i])
    return tuple(out)


def simple_reflections(kind: str) -> dict:
    if kind == A2:
        return {"s1": (2, 1, 3), "s2": (1, 3, 2)}
    if kind == C2:
        return {"s_short": (2, 1), "s_long": (1, -2)}
    raise ValueError(f"unknown Weyl type {kind!r}")


def identity(kind: str):
    return (1, 2, 3) if kind == A2 else (1, 2)


def enumerate_group(kind: str, gens=None) -> dict:
    """Map each element of the subgroup generated by ``gens`` to its length.

    Lengths are word lengths in the given generators (BFS distance).
    """
    refl = simple_reflections(kind)
    if gens is None:
        gens = list(refl)
    gs = [refl[g] for g in gens]
    e = identity(kind)
    dist = {e: 0}
    dq = deque([e])
    while dq:
        w = dq.popleft()
        for s in gs:
            u = _compose(w, s)
            if u not in dist:
                dist[u] = dist[w] + 1
                dq.append(u)
    return dist


def weyl_double_cosets(kind: str, left_gens=(), right_gens=()) -> int:
    """|W_L \\ W / W_R| for parabolic subgroups generated by simple reflections."""
    refl = simple_reflections(kind)
    for g in list(left_gens) + list(right_gens):
        if g not in refl:
            raise ValueError(f"{g!r} is not a simple reflection of {kind}")
    W = list(enumerate_group(kind))
    WL = list(enumerate_group(kind, list(left_gens)))
    WR = list(enumerate_group(kind, list(right_gens)))
    seen = set()
    count = 0
    for w in W:
        if w in seen:
            continue
        count += 1
        for a in WL:
            for b in WR:
                seen.add(_compose(_compose(a, w), b))
    return count


def minimal_coset_lengths(kind: str, right_gens) -> list[int]:
    """Lengths of the minimal representatives of W / W_R, sorted."""
    length = enumerate_group(kind)
    WR = list(enumerate_group(kind, list(right_gens)))
    seen = set()
    out = []
    for w in sorted(length, key=lambda u: (length[u], u)):
        if w in seen:
            continue
        coset = {_compose(w, b) for b in WR}
        seen |= coset
        out.append(min(length[u] for u in coset))
    return sorted(out)


def bruhat_index(kind: str, right_gens, q: int) -> int:
    """sum of q^l(w) over minimal coset representatives of W / W_R."""
    return sum(q ** l for l in minimal_coset_lengths(kind, right_gens))
