from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeraise.errors import NonCommuting, NotSublattice
from heckeraise.exactalg.finfield import GFElem, conway_free_modulus, get_field
from heckeraise.exactalg.intmat import det, determinantal_divisors, matmul, smith_normal_form
from heckeraise.exactalg.lattice import Lattice, lattice_intersect, lattice_saturate, quotient_invariants
from heckeraise.exactalg.polys import charpoly, factor_mod, reduce_mod
from heckeraise.exactalg.spectra import MinPoly, reduce_character, simultaneous_spectra

int_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def _minor_oracle(M):
    """Invariant factors d_k = D_k / D_{k-1} from gcds of k x k minors."""
    D = determinantal_divisors(M)
    out, prev = [], 1
    for d in D:
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


# ---- Smith form


@pytest.mark.parametrize(
    "M, factors",
    [
        ([[2, 0], [0, 3]], [1, 6]),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
        ([[2, 4], [6, 8]], [2, 4]),
    ],
)
def test_smith_examples(M, factors):
    assert smith_normal_form(M).invariant_factors == factors


def test_smith_2468_by_hand():
    # gcd of entries is 2 and |det| = 8
    M = [[2, 4], [6, 8]]
    assert gcd(*[x for r in M for x in r]) == 2
    assert abs(det(M)) // 2 == 4
    assert _minor_oracle(M) == [2, 4]


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_smith_transforms(M):
    sf = smith_normal_form(M)
    D = matmul(matmul(sf.left, M), sf.right)
    m, n = len(M), len(M[0])
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    assert abs(det(sf.left)) == 1 and abs(det(sf.right)) == 1
    nonzero = [d for d in sf.invariant_factors if d]
    assert [abs(d) for d in diag if d] == nonzero
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert nonzero == _minor_oracle(M)


# ---- lattices


def test_intersect_examples():
    Z2 = Lattice.full(2)
    assert lattice_intersect(Z2, Z2) == Z2
    two = Lattice.from_generators([[2, 0], [0, 2]])
    diag = Lattice.from_generators([[1, 1], [1, -1]])
    assert lattice_intersect(two, diag) == two
    zero = lattice_intersect(Lattice.from_generators([[1, 0]]), Lattice.from_generators([[0, 1]]))
    assert zero.rank == 0


def test_intersect_by_residues():
    # membership of v in both lattices depends only on v mod 4
    two = Lattice.from_generators([[2, 0], [0, 2]])
    diag = Lattice.from_generators([[1, 1], [1, -1]])
    inter = lattice_intersect(two, diag)
    for v in product(range(4), repeat=2):
        both = two.coordinates(list(v)) is not None and diag.coordinates(list(v)) is not None
        assert both == (inter.coordinates(list(v)) is not None)


@pytest.mark.parametrize(
    "gens, sat",
    [
        ([[2, 0], [0, 2]], [[1, 0], [0, 1]]),
        ([[2, 4]], [[1, 2]]),
        ([[6, 10]], [[3, 5]]),
    ],
)
def test_saturate_examples(gens, sat):
    assert lattice_saturate(Lattice.from_generators(gens)) == Lattice.from_generators(sat)


@pytest.mark.parametrize(
    "sub, n, expected",
    [
        ([[2, 0], [0, 2]], 2, (0, [2, 2])),
        ([[1, 0], [0, 6]], 2, (0, [6])),
        ([[1, 1, 0], [0, 1, 1]], 3, (1, [])),
    ],
)
def test_quotient_examples(sub, n, expected):
    assert quotient_invariants(Lattice.from_generators(sub), Lattice.full(n)) == expected


def test_quotient_not_sublattice():
    with pytest.raises(NotSublattice):
        quotient_invariants(Lattice.full(2), Lattice.from_generators([[2, 0], [0, 2]]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-12, 12), min_size=3, max_size=3), min_size=1, max_size=3))
def test_saturation_properties(gens):
    if all(not any(v) for v in gens):
        return
    L = Lattice.from_generators(gens, 3)
    S = lattice_saturate(L)
    assert lattice_saturate(S) == S
    assert all(S.coordinates(list(v)) is not None for v in L.basis)
    free, tors = quotient_invariants(L, S)
    assert free == 0
    if L.rank == 3:
        idx = 1
        for d in tors:
            idx *= d
        assert idx == abs(det([list(r) for r in L.basis]))


# ---- finite fields


def test_field_modulus_is_smallest_irreducible():
    # x^2 + 1 is irreducible mod 3 and is the first monic quadratic without roots
    assert tuple(conway_free_modulus(3, 2)) == (1, 0, 1)
    gf = get_field(3, 2)
    assert gf.order == 9
    nonzero = range(1, 9)
    assert all(gf.mul(a, gf.inv(a)) == 1 for a in nonzero)


@pytest.mark.parametrize("p, k", [(2, 3), (5, 2), (7, 1), (3, 4)])
def test_field_axioms(p, k):
    gf = get_field(p, k)
    els = [GFElem(gf, a) for a in range(min(gf.order, 40))]
    for a in els:
        for b in els[:10]:
            assert a * b == b * a
            assert (a + b) - b == a
            if b:
                assert (a / b) * b == a
    g = GFElem(gf, 2 % gf.order or 1)
    assert g ** (gf.order) == g


# ---- spectra


def test_spectra_diagonal_pair():
    chars = simultaneous_spectra({"A": [[1, 0], [0, 2]], "B": [[3, 0], [0, 4]]})
    assert [(c.value("A"), c.value("B"), c.multiplicity) for c in chars] == [(1, 3, 1), (2, 4, 1)]


def test_spectra_collapse_mod_3():
    (c,) = simultaneous_spectra({"A": [[1, 0], [0, 4]]}, 3)
    assert c.value("A") == 1 and c.multiplicity == 2


def test_spectra_conjugate_pair_over_f9():
    chars = simultaneous_spectra({"A": [[0, -1], [1, 0]]}, 3)
    assert len(chars) == 2
    gf = get_field(3, 2)
    for c in chars:
        assert c.k == 2
        x = c.value("A")
        assert gf.add(gf.mul(x, x), 1) == 0
    # over Q the pair is reported through its minimal polynomial
    (q,) = simultaneous_spectra({"A": [[0, -1], [1, 0]]})
    assert isinstance(q.value("A"), MinPoly) and q.multiplicity == 2


def test_spectra_non_commuting():
    with pytest.raises(NonCommuting):
        simultaneous_spectra({"A": [[0, 1], [0, 0]], "B": [[0, 0], [1, 0]]})


def _rank_mod(M, p):
    M = [[x % p for x in r] for r in M]
    rank = 0
    for c in range(len(M[0]) if M else 0):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _roots_with_mult(M, p):
    """Eigenvalues in GF(p) with generalized multiplicity n - rank((M - r)^n) mod p."""
    n = len(M)
    out = {}
    for r in range(p):
        A = [[(M[i][j] - (r if i == j else 0)) % p for j in range(n)] for i in range(n)]
        P = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(n):
            P = [[sum(P[i][t] * A[t][j] for t in range(n)) % p for j in range(n)] for i in range(n)]
        mult = n - _rank_mod(P, p)
        if mult:
            out[r] = mult
    return out


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
    ),
    st.sampled_from([2, 3, 5, 7]),
)
def test_spectra_match_charpoly_mod_p(M, p):
    n = len(M)
    chars = simultaneous_spectra({"A": M}, p)
    assert sum(c.multiplicity for c in chars) == n
    rational = {c.value("A"): c.multiplicity for c in chars if c.k == 1}
    assert rational == _roots_with_mult(M, p)
    # the remaining multiplicity sits on irreducible factors of degree > 1
    cp = reduce_mod([int(Fraction(c)) for c in charpoly(M)], p)
    linear = sum(e for f, e in factor_mod(cp, p) if len(f) == 2)
    assert sum(rational.values()) == linear


def test_reduce_character():
    (c,) = [x for x in simultaneous_spectra({"A": [[1, 0], [0, 4]]}) if x.value("A") == 4]
    red = reduce_character(c, 3)
    assert red.target == "GF" and red.value("A") == 1
