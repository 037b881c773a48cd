"""Dense linear algebra over an exact field.

Entries are any objects with field operators: ``fractions.Fraction`` for Q,
``GFElem`` for finite fields.  Operators act on column vectors.
"""

from __future__ import annotations

from fractions import Fraction

from .finfield import GF, GFElem


class Field:
    """Tiny adapter giving zero, one and coercion for a coefficient field."""

    def __init__(self, gf: GF | None = None):
        self.gf = gf

    @property
    def is_rational(self) -> bool:
        return self.gf is None

    def __call__(self, x):
        if self.gf is None:
            return Fraction(x)
        if isinstance(x, GFElem):
            return x
        if isinstance(x, Fraction):
            return GFElem(self.gf, self.gf.div(self.gf.from_int(x.numerator), self.gf.from_int(x.denominator)))
        return GFElem(self.gf, self.gf.from_int(x))

    def elem(self, encoding: int):
        return GFElem(self.gf, encoding)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def matrix(self, M):
        return [[self(x) for x in row] for row in M]

    def __eq__(self, other):
        return isinstance(other, Field) and self.gf is other.gf

    def __hash__(self):
        return hash(None if self.gf is None else (self.gf.p, self.gf.k))

    def __repr__(self):
        return "QQ" if self.gf is None else repr(self.gf)


QQ = Field()


def rref(M, F: Field):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = F.one / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(M, F: Field, ncols: int | None = None):
    """Basis (list of vectors) of {v : M v = 0}."""
    if not M:
        n = ncols or 0
        return [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    n = len(M[0])
    R, piv = rref(M, F)
    free = [c for c in range(n) if c not in set(piv)]
    out = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for row, pc in zip(R, piv):
            v[pc] = -row[f]
        out.append(v)
    return out


def rank(M, F: Field) -> int:
    if not M:
        return 0
    return len(rref(M, F)[1])


def matmul(A, B):
    Bt = list(zip(*B))
    return [[_dot(row, col) for col in Bt] for row in A]


def sparse_matmul(A, B):
    """Product that skips zero entries; suited to pullback-style 0/1 matrices."""
    ncols = len(B[0]) if B else 0
    brows = [[(j, x) for j, x in enumerate(row) if x] for row in B]
    out = []
    for row in A:
        acc = [0] * ncols
        for t, a in enumerate(row):
            if a:
                for j, b in brows[t]:
                    acc[j] += a * b
        out.append(acc)
    return out


def matvec(A, v):
    return [_dot(row, v) for row in A]


def _dot(u, v):
    it = iter(zip(u, v))
    a, b = next(it)
    s = a * b
    for a, b in it:
        s = s + a * b
    return s


def identity(n: int, F: Field):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_sub_scalar(A, lam, F: Field):
    return [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(A)]


def matpow(A, e: int, F: Field):
    n = len(A)
    R = identity(n, F)
    B = A
    while e:
        if e & 1:
            R = matmul(R, B)
        B = matmul(B, B)
        e >>= 1
    return R


def poly_at_matrix(coeffs, A, F: Field):
    """Evaluate a polynomial (coefficients low to high) at a square matrix."""
    n = len(A)
    R = [[F.zero] * n for _ in range(n)]
    for c in reversed(list(coeffs)):
        R = matmul(R, A)
        c = F(c)
        for i in range(n):
            R[i][i] = R[i][i] + c
    return R


def solve_in_span(basis, v, F: Field):
    """Coordinates c with sum c_i basis_i = v, or None."""
    if not basis:
        return [] if not any(v) else None
    n = len(v)
    k = len(basis)
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    R, piv = rref(aug, F)
    if k in piv:
        return None
    c = [F.zero] * k
    for row, pc in zip(R, piv):
        c[pc] = row[k]
    return c


def restrict(A, basis, F: Field):
    """Matrix of A on the invariant subspace spanned by ``basis`` (columns = images)."""
    k = len(basis)
    if k == 0:
        return []
    n = len(basis[0])
    # one elimination for all images
    images = [matvec(A, b) for b in basis]
    aug = [[basis[j][i] for j in range(k)] + [img[i] for img in images] for i in range(n)]
    R, piv = rref(aug, F)
    if any(p >= k for p in piv):
        raise ValueError("subspace is not invariant")
    cols = [[F.zero] * k for _ in range(k)]
    for row, pc in zip(R, piv):
        for t in range(k):
            cols[t][pc] = row[k + t]
    return [[cols[t][i] for t in range(k)] for i in range(k)]


def combine(basis, coords, F: Field):
    """Vector sum_i coords_i * basis_i."""
    n = len(basis[0])
    v = [F.zero] * n
    for c, b in zip(coords, basis):
        if c:
            v = [x + c * y for x, y in zip(v, b)]
    return v
