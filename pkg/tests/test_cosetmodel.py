from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeraise.cosetmodel import (
    DoubleCosetModel,
    annihilators,
    averaging_projector,
    class_partition,
    gram_matrix,
    pullback,
    pullback_adjoint,
    validate,
)
from heckeraise.errors import ModelError, ParseError
from heckeraise.exactalg.linalg import matmul
from heckeraise.generators import random_valid_models

from conftest import make_model


def test_tiny_accepted(tiny):
    r = validate(tiny)
    assert r.accepted and r.failures == []
    assert (r.index_k, r.index_kp) == (2, 2)


def test_mass_formula_failure(tiny):
    doc = tiny.to_dict()
    doc["w_j"]["1"] = "2"
    r = validate(DoubleCosetModel.from_dict(doc))
    assert not r.accepted
    (f,) = [f for f in r.failures if f["side"] == "K"]
    assert f["check"] == "mass_formula" and f["witness"] == "a"


def test_not_surjective():
    m = make_model("ax", "b", "12", {"1": "a", "2": "a"}, {"1": "b", "2": "b"})
    r = validate(m)
    assert not r.accepted
    assert {"check": "surjective", "side": "K", "witness": "x"} in r.failures


def test_strict_flag(weighted_fiber, tiny):
    assert validate(weighted_fiber).accepted
    r = validate(weighted_fiber, strict_torsion_free=True)
    assert not r.accepted and r.failures[0]["check"] == "torsion_free"
    assert validate(tiny, strict_torsion_free=True).accepted


def test_adjointness_failure(tiny):
    doc = tiny.to_dict()
    doc["operators"] = {"A": {"level": "J", "matrix": [[0, 1], [0, 0]], "adjoint": "A"}}
    r = validate(DoubleCosetModel.from_dict(doc))
    assert [f["check"] for f in r.failures] == ["adjointness"]


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("x_k"),
        lambda d: d.__setitem__("w_j", {"1": "0", "2": "1"}),
        lambda d: d.__setitem__("x_j", []),
        lambda d: d.__setitem__("schema_version", "9"),
        lambda d: d["pi"].__setitem__("1", "nowhere"),
    ],
)
def test_parse_errors(tiny, mutate):
    doc = tiny.to_dict()
    mutate(doc)
    with pytest.raises(ParseError):
        DoubleCosetModel.from_dict(doc)


def test_model_error_is_parse_error():
    assert issubclass(ModelError, ParseError)


def test_round_trip(weighted_fiber):
    again = DoubleCosetModel.from_dict(weighted_fiber.to_dict())
    assert again.to_dict() == weighted_fiber.to_dict()
    assert again.digest() == weighted_fiber.digest()


def test_gram_examples(tiny):
    m = make_model(
        "ab", "c", "12", {"1": "a", "2": "b"}, {"1": "c", "2": "c"},
        w_k={"a": 2, "b": 3}, w_kp={"c": 6}, w_j={"1": 2, "2": 3},
    )
    assert validate(m).accepted
    assert gram_matrix(m, "K").gram == ((Fraction(1, 2), 0), (0, Fraction(1, 3)))
    assert gram_matrix(tiny, "J").gram == ((1, 0), (0, 1))
    assert gram_matrix(tiny, "K").gram == ((1,),)


def test_annihilator_examples(tiny, weighted_fiber):
    m = make_model(
        "ab", "c", "12", {"1": "a", "2": "b"}, {"1": "c", "2": "c"},
        w_k={"a": 2, "b": 3}, w_kp={"c": 6}, w_j={"1": 2, "2": 3},
    )
    assert (annihilators(tiny, "J").a_min, annihilators(tiny, "J").b_min) == (1, 1)
    a = annihilators(m, "K")
    assert (a.a_min, a.b_min) == (6, 1)
    a = annihilators(weighted_fiber, "J")
    assert (a.a_min, a.b_min) == (2, 1)


def test_projector_examples(tiny, weighted_fiber):
    h = Fraction(1, 2)
    assert averaging_projector(tiny, "K") == [[h, h], [h, h]]
    assert validate(weighted_fiber).index_k == 3
    e = averaging_projector(weighted_fiber, "K")
    assert e == [[Fraction(2, 3), Fraction(1, 3)]] * 2
    g = [5, 11]
    assert [sum(a * b for a, b in zip(row, g)) for row in e] == [Fraction(2 * 5 + 11, 3)] * 2


def test_class_partition_examples(tiny, chain_model):
    cp = class_partition(tiny)
    assert len(cp.blocks) == 1 and cp.radius["1"] == 0
    cp = class_partition(chain_model)
    assert cp.blocks == (("1", "2", "3"),)
    assert cp.representatives == ("1",)
    assert [cp.radius[y] for y in "123"] == [0, 1, 2]


def test_class_partition_disjoint_union():
    m = make_model(
        "ab", "cd", "1234",
        {"1": "a", "2": "a", "3": "b", "4": "b"},
        {"1": "c", "2": "c", "3": "d", "4": "d"},
    )
    assert class_partition(m).blocks == (("1", "2"), ("3", "4"))


def _pair(ws, f, g):
    return sum(Fraction(a) * b / w for a, b, w in zip(f, g, ws))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_model_properties(seed):
    model = random_valid_models(seed, 2, max_j=24)[seed % 2]
    r = validate(model)
    assert r.accepted
    wj = model.weights("J")
    for side, index in (("K", r.index_k), ("Kp", r.index_kp)):
        iota = pullback(model, side)
        adj = pullback_adjoint(model, side)
        n = model.size(side)
        assert matmul(adj, iota) == [[index * int(i == j) for j in range(n)] for i in range(n)]
        ws = model.weights(side)
        f = [(3 * i + seed) % 7 - 3 for i in range(n)]
        g = [(5 * i + seed) % 11 - 5 for i in range(len(wj))]
        lf = [sum(row[x] * f[x] for x in range(n)) for row in iota]
        ag = [sum(row[y] * g[y] for y in range(len(wj))) for row in adj]
        assert _pair(wj, lf, g) == _pair(ws, f, ag)
        e = averaging_projector(model, side)
        assert matmul(e, e) == e
        # self-adjoint for the J pairing: W^-1 e is symmetric
        nj = len(wj)
        assert all(e[y][z] / wj[y] == e[z][y] / wj[z] for y in range(nj) for z in range(nj))
        a = annihilators(model, side)
        assert a.b_min == 1
        assert a.a_min == lcm(*ws)
