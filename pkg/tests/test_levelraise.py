import json
from dataclasses import replace
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeraise import acceptance
from heckeraise.cosetmodel import DoubleCosetModel
from heckeraise.errors import (
    AbelianInput,
    EllDividesIndex,
    MZero,
    NoCentralOps,
    NotRankOne,
    ZeroE,
)
from heckeraise.exactalg.intmat import smith_normal_form
from heckeraise.exactalg.lattice import Lattice
from heckeraise.exactalg.spectra import reduce_character
from heckeraise.levelraise import (
    E_KKP,
    CongruenceCertificate,
    abelian_check,
    build_degeneracy,
    certify,
    congruence_module,
    detect_new_congruence,
    ihara_defect,
    k_characters,
    raising_bound,
    raising_valuation,
    rank_one_refine,
    ribet_block_bound,
    verify_witness,
)
from heckeraise.generators import random_valid_models

from conftest import make_model


def _char(model, value):
    """The rational K-level character taking ``value`` on e_KK'."""
    return next(c for c in k_characters(model) if c.value(E_KKP) == value)


# ---- degeneracy


def test_tiny_degeneracy(tiny):
    deg = build_degeneracy(tiny)
    assert deg.delta == ((1, 1), (1, 1))
    assert [list(r) for r in deg.delta_gram] == [[2, 2], [2, 2]]
    assert deg.old_lattice.rank == 1 and deg.new_lattice.rank == 1


def test_old_new_orthogonal(weighted_fiber):
    deg = build_degeneracy(weighted_fiber)
    ws = weighted_fiber.weights("J")
    for u in deg.old_lattice.basis:
        for v in deg.new_lattice.basis:
            assert sum(Fraction(a * b, w) for a, b, w in zip(u, v, ws)) == 0


def test_ihara_examples(tiny, path_model):
    assert ihara_defect(tiny) == []
    assert ihara_defect(path_model) == []
    same = make_model("ab", "cd", "12", {"1": "a", "2": "b"}, {"1": "c", "2": "d"})
    assert ihara_defect(same) == []


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_block_identity_and_ihara(seed):
    model = random_valid_models(seed, 2, max_j=30)[seed % 2]
    deg = build_degeneracy(model)
    nk, nkp = deg.n_k, deg.n_kp
    g = deg.delta_gram
    assert all(g[i][j] == (deg.index_k if i == j else 0) for i in range(nk) for j in range(nk))
    assert all(g[nk + i][nk + j] == (deg.index_kp if i == j else 0) for i in range(nkp) for j in range(nkp))
    assert acceptance.check_block_identity([model])[0]
    assert ihara_defect(model) == []


# ---- congruence module


def test_congruence_scalar():
    Z = Lattice.full(1)
    for d in (1, 2, 3, 6):
        tors = congruence_module(Z, Z, [[d]], 1)
        assert tors == ([d * d] if d > 1 else [])


def test_congruence_identity_delta():
    Z = Lattice.full(3)
    eye = [[int(i == j) for j in range(3)] for i in range(3)]
    assert congruence_module(Z, Z, eye, 1) == []


@pytest.mark.parametrize("d, E", [(4, 6), (6, 4), (5, 25), (7, 3), (20, 20)])
def test_congruence_scaling_law(d, E):
    Z = Lattice.full(1)
    expected = d * d // gcd(d * d, E)
    assert congruence_module(Z, Z, [[d]], E) == ([expected] if expected > 1 else [])


def test_congruence_tiny_divides_snf(tiny):
    deg = build_degeneracy(tiny)
    U = Lattice.full(2)
    V = Lattice.full(2)
    tors = congruence_module(U, V, deg.delta, 1)
    snf = [d for d in smith_normal_form([list(r) for r in deg.delta_gram]).invariant_factors if d]
    assert tors == [2] and snf == [2]
    assert all(any(s % t == 0 for s in snf) for t in tors)


def test_zero_e():
    with pytest.raises(ZeroE):
        congruence_module(Lattice.full(1), Lattice.full(1), [[2]], 0)


# ---- raising bound


def test_raising_valuation_arithmetic():
    # eta(e_KK') = 13 and [K:J][K':J] = 4 give m = 9
    assert raising_valuation(13 - 4, 3, 0, 0, 0) == 2
    assert raising_valuation(9, 3, v_E_tilde=1) == 1
    assert raising_valuation(9, 3, v_E=5) == 0
    with pytest.raises(MZero):
        raising_valuation(0, 3)


def test_constant_character_is_vacuous(path_model):
    with pytest.raises(MZero):
        raising_bound(path_model, _char(path_model, 2), 3)


def test_raising_bound_path(path_model):
    cert = raising_bound(path_model, _char(path_model, 0), 3)
    assert (cert.m_value, cert.index_k, cert.index_kp) == (-2, 1, 2)
    assert cert.valuation_bound == 0
    with pytest.raises(EllDividesIndex):
        raising_bound(path_model, _char(path_model, 0), 2)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_ribet_block(q):
    for a in range(-6, 7):
        for ell in (3, 5, 7, 11):
            if (q + 1) % ell == 0:
                with pytest.raises(EllDividesIndex):
                    ribet_block_bound(q, a, ell)
                continue
            out = ribet_block_bound(q, a, ell)
            m = a * a - (q + 1) ** 2
            assert out["m"] == m and out["det"] == -m
            if m:
                v = 0
                while m % ell ** (v + 1) == 0:
                    v += 1
                assert out["n"] == v


# ---- abelian check and detection


def test_abelian_examples(path_model):
    const = _char(path_model, 2)
    other = _char(path_model, 0)
    assert abelian_check(path_model, reduce_character(const, 3))
    assert not abelian_check(path_model, reduce_character(other, 3))
    # T takes 3 and 1, e_KK' takes 2 and 0: equal mod 2
    assert abelian_check(path_model, reduce_character(other, 2))


def test_detect_not_found_on_zero_new_space(path_model):
    assert build_degeneracy(path_model).new_lattice.rank == 0
    cert = detect_new_congruence(path_model, reduce_character(_char(path_model, 0), 3))
    assert cert.status == "not_found"
    assert cert.new_characters == []


def test_detect_errors(tiny, path_model):
    eta = k_characters(tiny)[0]
    with pytest.raises(NoCentralOps):
        detect_new_congruence(tiny, reduce_character(eta, 3))
    with pytest.raises(AbelianInput):
        detect_new_congruence(path_model, reduce_character(_char(path_model, 2), 3))
    with pytest.raises(AbelianInput):
        certify(path_model, _char(path_model, 2), 3)


# ---- corpus and certificates


@pytest.fixture(scope="module")
def corpus():
    return acceptance.load_corpus_manifest()


def test_corpus_size(corpus):
    assert len(corpus) >= 5


@pytest.mark.parametrize("name", ["small_l3", "weighted_l3", "deep_l2", "s5_l3", "l5", "l7"])
def test_corpus_entry(corpus, name):
    entry = next(e for e in corpus if e["name"] == name)
    model = acceptance.load_corpus_model(entry["model"])
    ell = int(entry["ell"])
    eta = k_characters(model)[int(entry["character"])]
    cert = certify(model, eta, ell)
    assert cert.valuation_bound >= 1 and cert.status == "found"
    assert cert.valuation_bound == int(entry["n"])
    assert verify_witness(model, reduce_character(eta, ell), cert.witness_character)
    golden = acceptance.corpus_path("raising", entry["certificate"]).read_text(encoding="utf-8")
    assert cert.to_json() == golden


def test_certificate_round_trip(corpus):
    entry = corpus[0]
    text = acceptance.corpus_path("raising", entry["certificate"]).read_text(encoding="utf-8")
    cert = CongruenceCertificate.from_json(text)
    assert cert.to_json() == text
    assert all(isinstance(v, str) for v in (cert.to_dict()["m"], cert.to_dict()["n"]))
    json.loads(text)


def test_rank_one_refine(corpus, tiny):
    entry = corpus[0]
    model = acceptance.load_corpus_model(entry["model"])
    ell = int(entry["ell"])
    eta = k_characters(model)[int(entry["character"])]
    cert = certify(model, eta, ell)
    with pytest.raises(NotRankOne):
        rank_one_refine(model, cert)
    ranked = DoubleCosetModel.from_dict({**model.to_dict(), "metadata": {"rank_one": True}})
    out = rank_one_refine(ranked, CongruenceCertificate.from_json(cert.to_json()))
    assert out.rank_one_flag is not None
    assert any(d.startswith("rank-one") or d.startswith("ContradictionPath") for d in out.diagnostics)


def test_rank_one_absent_at_k(corpus):
    """A witness value table that no K-level eigenvector carries sets the flag."""
    entry = corpus[0]
    model = acceptance.load_corpus_model(entry["model"])
    ranked = DoubleCosetModel.from_dict({**model.to_dict(), "metadata": {"rank_one": True}})
    ell = int(entry["ell"])
    eta = k_characters(model)[int(entry["character"])]
    cert = certify(model, eta, ell)
    names = [op.name for op in model.central_operators()]
    present = {
        tuple(int(c.value("e_K*" + n)) for n in names)
        for c in k_characters(model, ell)
        if c.k == 1
    }
    absent = next(
        v for v in ((a,) * len(names) for a in range(ell)) if v not in present
    )
    wc = dict(cert.witness_character)
    wc["values"] = {n: str(a) for n, a in zip(names, absent)}
    cert.witness_character = wc
    out = rank_one_refine(ranked, cert)
    assert out.rank_one_flag is True


def test_rank_one_without_witness(path_model):
    ranked = replace(path_model, metadata={"rank_one": True})
    cert = detect_new_congruence(ranked, reduce_character(_char(path_model, 0), 3))
    out = rank_one_refine(ranked, cert)
    assert out.rank_one_flag is None
