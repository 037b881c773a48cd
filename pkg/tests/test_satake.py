from fractions import Fraction

import pytest

from heckeraise.errors import AmbiguousHalfPower, BadParams
from heckeraise.exactalg.finfield import GFElem, get_field
from heckeraise.satake import (
    A2,
    C2,
    GL3,
    GSP4,
    SatakeParamsGL3,
    SatakeParamsGSp4,
    allowed_types,
    bruhat_check,
    check_gsp4_condition,
    check_u3_condition,
    classify_gl3,
    classify_gsp4,
    exclusions,
    parahoric_indices,
    profile_gl3,
    profile_gsp4,
    unitary_dual_filter,
    weyl_double_cosets,
)
from heckeraise.satake.classify import gl3_type_i_unitary, satake_matrix_gsp4
from heckeraise.satake.conditions import brute_force_exclusions, raising_types
from heckeraise.satake.tables import constituent_sums, rep_type, verify_checksum


def labels(types):
    return [t.label for t in types]


# ---- classification


@pytest.mark.parametrize(
    "chi, expected",
    [
        ((1, 2, 3), ["I"]),
        ((10, 2, 7), ["IIa", "IIb"]),
        ((Fraction(3, 5), 3, 15), ["IIIa", "IIIb", "IIIc", "IIId"]),
        ((Fraction(-7, 5), -7, -35), ["IIIa", "IIIb", "IIIc", "IIId"]),
    ],
)
def test_classify_gl3(chi, expected):
    assert labels(classify_gl3(SatakeParamsGL3(5, chi))) == expected


@pytest.mark.parametrize(
    "vals, expected",
    [
        ((Fraction(1, 9), Fraction(1, 3), 1), ["IVa", "IVb", "IVc", "IVd"]),
        ((Fraction(-1, 3), -1, 1), ["Va", "Vb", "Vc", "Vd"]),
        ((2, 5, 1), ["I"]),
        ((Fraction(1, 3), 1, 7), ["VIa", "VIb", "VIc", "VId"]),
    ],
)
def test_classify_gsp4(vals, expected):
    assert labels(classify_gsp4(SatakeParamsGSp4(3, *vals))) == expected


def test_gsp4_weyl_invariance():
    a = SatakeParamsGSp4(3, Fraction(1, 9), Fraction(1, 3), 2)
    b = SatakeParamsGSp4(3, Fraction(1, 3), Fraction(1, 9), 2)
    c = SatakeParamsGSp4(3, 9, Fraction(1, 3), Fraction(2, 9))
    assert a.values == b.values == c.values


def test_gsp4_over_finite_field():
    gf = get_field(7, 2)
    v = lambda x: GFElem(gf, gf.from_int(x))  # noqa: E731
    # nu = 1/3 = 5 mod 7
    p = SatakeParamsGSp4(3, v(5) * v(5), v(5), v(1))
    assert labels(classify_gsp4(p))[0] == "IVa"


def test_half_power():
    p = SatakeParamsGSp4(3, 2, 5, 1)
    with pytest.raises(AmbiguousHalfPower):
        satake_matrix_gsp4(p, half_twist=True)
    sq = SatakeParamsGSp4(4, 2, 5, 1)
    assert satake_matrix_gsp4(sq, half_twist=True) == tuple(8 * x for x in satake_matrix_gsp4(sq))


def test_bad_params():
    with pytest.raises(BadParams):
        SatakeParamsGL3(6, (1, 2, 3))
    with pytest.raises(BadParams):
        SatakeParamsGL3(5, (0, 2, 3))
    with pytest.raises(BadParams):
        check_u3_condition((1, 1, 1), 7, 7)


def test_type_i_unitarity():
    assert gl3_type_i_unitary(SatakeParamsGL3(4, (1, -1, 1))) == "unitary"
    assert gl3_type_i_unitary(SatakeParamsGL3(4, (Fraction(1, 2), 1, 1))) == "unitary"
    assert gl3_type_i_unitary(SatakeParamsGL3(5, (2, 3, 7))) == "not unitary"
    gf = get_field(7)
    vals = tuple(GFElem(gf, x) for x in (1, 2, 3))
    assert gl3_type_i_unitary(SatakeParamsGL3(5, vals)) == "indeterminate"


# ---- tables


@pytest.mark.parametrize(
    "label, dims",
    [("I", (1, 3, 6)), ("IIa", (0, 1, 3)), ("IIIa", (0, 0, 1))],
)
def test_profile_gl3(label, dims):
    assert profile_gl3(label).dims == dims


def test_profile_gl3_flags():
    assert rep_type(GL3, "IIa").generic
    assert rep_type(GL3, "IIIa").generic
    assert rep_type(GL3, "IIIb").remark == "not unitary"
    assert rep_type(GL3, "IIId").remark == "irrelevant"


@pytest.mark.parametrize(
    "label, dims",
    [("I", (1, 2, 4, 4, 8)), ("IVa", (0, 0, 0, 0, 1)), ("VIb", (0, 0, 0, 1, 1))],
)
def test_profile_gsp4(label, dims):
    assert profile_gsp4(label).dims == dims


def test_profile_gsp4_flags():
    iva = rep_type(GSP4, "IVa")
    assert iva.generic and iva.square_integrable
    vib = rep_type(GSP4, "VIb")
    assert vib.tempered and not vib.generic


def test_constituent_sums():
    assert set(constituent_sums(GL3).values()) == {(1, 3, 6)}
    assert set(constituent_sums(GSP4).values()) == {(1, 2, 4, 4, 8)}
    reducible = [f for g in (GL3, GSP4) for f in constituent_sums(g) if f != "I"]
    assert len(reducible) == 7


def test_checksum():
    assert verify_checksum()


# ---- Weyl groups and indices


def test_weyl_double_cosets():
    assert weyl_double_cosets(A2) == 6
    assert weyl_double_cosets(A2, (), ["s1"]) == 3
    assert weyl_double_cosets(C2, (), ["s_short"]) == 4
    assert weyl_double_cosets(C2) == 8


def test_parahoric_indices():
    assert parahoric_indices(GL3, 2) == {"[K:J]": 7}
    idx = parahoric_indices(GSP4, 2)
    assert idx["[K':J]"] == 2 and idx["[K:J]"] == 15
    assert all(bruhat_check(g, q) for g in (GL3, GSP4) for q in (2, 3, 4, 5, 7))


# ---- congruence conditions


def test_u3_condition():
    assert check_u3_condition((2, 1, Fraction(1, 2)), 2, 5).flag
    r = check_u3_condition((2, 1, Fraction(1, 2)), 2, 7)
    assert not r.flag and any("1+q+q^2" in x for x in r.reasons)
    assert check_u3_condition((2, 1, 3), 2, 5).flag
    assert check_u3_condition((3, 2, 1), 2, 5).flag
    assert not check_u3_condition((2, 2, 3), 2, 5).flag


def test_gsp4_condition():
    assert check_gsp4_condition((1, 3, 9, 27), 3, 11).flag
    r = check_gsp4_condition((1, 2, 4, 3), 2, 5)
    assert r.flag and r.refinement is False
    r = check_gsp4_condition((1, 3, 2, 6), 3, 7)
    assert r.flag and r.refinement is True
    assert not check_gsp4_condition((1, 3, 2, 5), 3, 7).flag


@pytest.mark.parametrize(
    "q, ell, expected",
    [(3, 7, {"Va", "VIa"}), (2, 3, set()), (4, 5, set())],
)
def test_exclusions(q, ell, expected):
    assert exclusions(q, ell) == expected
    assert brute_force_exclusions(q, ell) == expected


def test_exclusions_against_oracle_small():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for ell in (2, 3, 5, 7, 11, 13):
            if q % ell:
                assert exclusions(q, ell) == brute_force_exclusions(q, ell), (q, ell)


def test_unitary_filter():
    iii = [rep_type(GL3, x) for x in ("IIIa", "IIIb", "IIIc", "IIId")]
    assert labels(unitary_dual_filter(iii)) == ["IIIa"]
    iv = [rep_type(GSP4, x) for x in ("IVa", "IVb", "IVc", "IVd")]
    assert labels(unitary_dual_filter(iv)) == ["IVa"]
    assert labels(unitary_dual_filter([rep_type(GL3, "I")])) == ["I"]


def test_endgames():
    assert labels(unitary_dual_filter(raising_types(GL3))) == ["I", "IIa"]
    assert sorted(labels(allowed_types(GSP4))) == sorted(["I", "IIa", "IIIa", "Va", "VIa"])
    assert labels(allowed_types(GSP4, 3, 7)) == ["I", "IIa", "IIIa"]
    assert all(t.generic for g in (GL3, GSP4) for t in allowed_types(g))
