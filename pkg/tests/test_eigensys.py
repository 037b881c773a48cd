import random

import pytest

from heckeraise.eigensys import (
    characters,
    has_nilpotent_mod_p,
    hecke_ring,
    is_homomorphism,
    lift_character,
    reduces_to,
    saturation_index,
    semisimple_mod_p,
)
from heckeraise.errors import NonCommuting, NotOccurring, NotReduced
from heckeraise.exactalg.spectra import EigenCharacter, MinPoly
from heckeraise.generators import random_commuting_family

DIAG12 = {"T": [[1, 0], [0, 2]]}
DIAG14 = {"T": [[1, 0], [0, 4]]}
ROT = {"T": [[0, -1], [1, 0]]}


def test_ring_ranks():
    assert hecke_ring({"I": [[1, 0], [0, 1]]}).rank == 1
    assert hecke_ring(DIAG12).rank == 2
    nil = hecke_ring({"N": [[0, 1], [0, 0]]})
    assert nil.rank == 2 and nil.trace_form_disc == 0


def test_ring_rejects_non_commuting():
    with pytest.raises(NonCommuting):
        hecke_ring({"A": [[0, 1], [0, 0]], "B": [[0, 0], [1, 0]]})


def test_saturation_examples():
    assert saturation_index(hecke_ring({"D": [[0, 0], [0, 2]]})) == (2, [2])
    assert saturation_index(hecke_ring(DIAG12)) == (1, [])
    assert saturation_index(hecke_ring({"I": [[1, 0], [0, 1]]})) == (1, [])


def test_semisimple_examples():
    split = hecke_ring({"E": [[1, 0], [0, 0]]})
    assert split.trace_form_disc == 1
    assert all(semisimple_mod_p(split, p) for p in (2, 3, 5, 7))
    # S^2 = 2, a copy of Z[sqrt 2] with discriminant 8
    root2 = hecke_ring({"S": [[0, 2], [1, 0]]})
    assert root2.trace_form_disc == 8
    assert not semisimple_mod_p(root2, 2)
    assert all(semisimple_mod_p(root2, p) for p in (3, 5, 7, 11))
    assert not semisimple_mod_p(hecke_ring({"D": [[0, 0], [0, 2]]}), 2)
    with pytest.raises(NotReduced):
        semisimple_mod_p(hecke_ring({"N": [[0, 1], [0, 0]]}), 3)


def test_characters_examples():
    assert len(characters(hecke_ring(DIAG12))) == 2
    (c,) = characters(hecke_ring(DIAG14), 3)
    assert c.multiplicity == 2 and c.value("T") == 1
    pair = characters(hecke_ring(ROT), 3)
    assert len(pair) == 2 and all(c.k == 2 for c in pair)


def test_lift_examples():
    ring = hecke_ring(DIAG14)
    (eb,) = characters(ring, 3)
    lifts = lift_character(ring, eb)
    assert sorted(c.value("T") for c in lifts) == [1, 4]
    ring = hecke_ring(ROT)
    eb = next(c for c in characters(ring, 5) if c.value("T") == 2)
    (lift,) = lift_character(ring, eb)
    assert isinstance(lift.value("T"), MinPoly) and tuple(lift.value("T").coeffs) == (1, 0, 1)
    assert reduces_to(lift, eb)


def test_lift_not_occurring():
    ring = hecke_ring(DIAG12)
    fake = EigenCharacter("GF", (("T", 0),), 1, None, p=5, k=1)
    with pytest.raises(NotOccurring):
        lift_character(ring, fake)


@pytest.mark.parametrize("seed", range(12))
def test_random_families(seed):
    rng = random.Random(seed)
    ring = hecke_ring(random_commuting_family(rng))
    for ch in characters(ring):
        assert ch.witness is None or is_homomorphism(ring, ch)
    assert sum(c.multiplicity for c in characters(ring)) == ring.n
    for ell in (2, 3, 5):
        for eb in characters(ring, ell):
            assert is_homomorphism(ring, eb)
            lifts = lift_character(ring, eb)
            assert lifts and all(reduces_to(x, eb) for x in lifts)
    try:
        certified = [p for p in (2, 3, 5, 7, 11, 13) if semisimple_mod_p(ring, p)]
    except NotReduced:
        return
    assert not any(has_nilpotent_mod_p(ring, p) for p in certified)
