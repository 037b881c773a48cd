import random

import pytest

from heckeraise.cosetmodel import averaging_projector, pullback, pullback_adjoint, validate
from heckeraise.exactalg.linalg import matmul
from heckeraise.generators import (
    conjugacy_classes,
    group_model,
    random_valid_models,
    symmetric_group,
)


def test_s3_classes():
    classes = conjugacy_classes(symmetric_group(3))
    assert [len(c) for c in classes] == [1, 2, 3]


def test_group_model_s3():
    G = symmetric_group(3)
    K = frozenset({(0, 1, 2), (1, 0, 2)})
    Kp = frozenset({(0, 1, 2), (0, 2, 1)})
    m = group_model(G, K, Kp)
    r = validate(m)
    assert r.accepted
    assert (len(m.x_k), len(m.x_kp), len(m.x_j)) == (3, 3, 6)
    assert (r.index_k, r.index_kp) == (2, 2)
    assert [op.name for op in m.central_operators()] == ["T1", "T2"]


def test_seeded_models_are_reproducible():
    a = [m.digest() for m in random_valid_models(5, 6)]
    b = [m.digest() for m in random_valid_models(5, 6)]
    assert a == b


@pytest.mark.parametrize("seed", range(10))
def test_random_models_valid(seed):
    for m in random_valid_models(seed, 4, max_j=40):
        r = validate(m)
        assert r.accepted, r.failures
        assert len(m.x_j) <= 40
        for side, index in (("K", r.index_k), ("Kp", r.index_kp)):
            got = matmul(pullback_adjoint(m, side), pullback(m, side))
            n = m.size(side)
            assert got == [[index if i == j else 0 for j in range(n)] for i in range(n)]
            e = averaging_projector(m, side)
            assert matmul(e, e) == e
