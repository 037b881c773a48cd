"""Integer matrices: products, normal forms and integer kernels.

Matrices are plain nested lists (or tuples) of Python ints, row-major.
Nothing here uses fixed-width arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import flint

IntMatrix = List[List[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> IntMatrix:
    return [[0] * n for _ in range(m)]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    return len(M), (len(M[0]) if len(M) else 0)


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def to_int_matrix(M) -> IntMatrix:
    return [[int(x) for x in row] for row in M]


def det(M) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    A = to_int_matrix(M)
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass
class SmithForm:
    """``left @ M @ right`` is diagonal with entries ``invariant_factors``."""

    invariant_factors: list[int]
    left: IntMatrix
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)


def _row_addmul(A, dst, src, c):
    if c:
        rs = A[src]
        rd = A[dst]
        for k in range(len(rd)):
            rd[k] += c * rs[k]


def _col_addmul(A, dst, src, c):
    if c:
        for row in A:
            row[dst] += c * row[src]


def _swap_cols(A, i, j):
    if i != j:
        for row in A:
            row[i], row[j] = row[j], row[i]


def smith_normal_form(M) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Returns factors d_1 | d_2 | ... of length ``min(rows, cols)``; trailing
    zeros mark the rank defect.
    """
    A = to_int_matrix(M)
    m, n = shape(A)
    L = identity(m)
    R = identity(n)
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        L[t], L[i] = L[i], L[t]
        _swap_cols(A, t, j)
        _swap_cols(R, t, j)
        while True:
            changed = False
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    _row_addmul(A, i, t, -q)
                    _row_addmul(L, i, t, -q)
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        L[t], L[i] = L[i], L[t]
                        changed = True
                        break
            if changed:
                continue
            p = A[t][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    _col_addmul(A, j, t, -q)
                    _col_addmul(R, j, t, -q)
                    if A[t][j]:
                        _swap_cols(A, t, j)
                        _swap_cols(R, t, j)
                        changed = True
                        break
            if changed:
                continue
            p = A[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _row_addmul(A, t, bad, 1)
            _row_addmul(L, t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
        t += 1
    factors = [A[i][i] for i in range(min(m, n))]
    return SmithForm(factors, L, R)


def hermite_rows(vectors, ambient: int | None = None) -> IntMatrix:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    The result is a canonical basis: pivots positive, entries above each
    pivot reduced into ``[0, pivot)``. Zero rows are dropped.  FLINT does
    the reduction; naive elimination suffers coefficient blowup here.
    """
    rows = [[int(x) for x in v] for v in vectors]
    if ambient is None:
        ambient = len(rows[0]) if rows else 0
    rows = [r for r in rows if any(r)]
    if not rows or ambient == 0:
        return []
    H = flint.fmpz_mat(rows).hnf()
    out = []
    for row in H.tolist():
        row = [int(x) for x in row]
        if any(row):
            out.append(row)
    return out


def integer_kernel(M, ncols: int | None = None) -> IntMatrix:
    """Basis (as rows) of the integer right kernel ``{x in Z^n : M x = 0}``."""
    M = to_int_matrix(M)
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    if m == 0:
        return identity(n)
    aug = [[M[i][j] for i in range(m)] + [int(k == j) for k in range(n)] for j in range(n)]
    H = hermite_rows(aug, m + n)
    return [row[m:] for row in H if not any(row[:m])]


def determinantal_divisors(M) -> list[int]:
    """gcd of all k x k minors for k = 1..rank; brute force, small matrices only."""
    from itertools import combinations
    from math import gcd

    A = to_int_matrix(M)
    m, n = shape(A)
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, det([[A[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        out.append(g)
    return out
