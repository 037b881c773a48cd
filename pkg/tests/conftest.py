import pytest

from heckeraise.cosetmodel import DoubleCosetModel, Operator


def make_model(x_k, x_kp, x_j, pi, pip, w_k=None, w_kp=None, w_j=None, operators=(), metadata=None):
    ones = lambda xs: {x: 1 for x in xs}  # noqa: E731
    return DoubleCosetModel(
        tuple(x_k),
        tuple(x_kp),
        tuple(x_j),
        dict(pi),
        dict(pip),
        w_k or ones(x_k),
        w_kp or ones(x_kp),
        w_j or ones(x_j),
        tuple(operators),
        None,
        metadata or {},
    )


@pytest.fixture
def tiny():
    """Two points of X_J over singletons, unit weights."""
    return make_model("a", "b", "12", {"1": "a", "2": "a"}, {"1": "b", "2": "b"})


@pytest.fixture
def path_model():
    """X_J = X_K = {a, b} over one K' point, with T = [[2,1],[1,2]] at level K.

    T has eigenvalues 3 (constants) and 1 on (1, -1); e_KK' has 2 and 0.
    """
    ops = (
        Operator("T", "K", ((2, 1), (1, 2)), "T"),
        Operator("I", "J", ((1, 0), (0, 1)), "I", True),
    )
    return make_model("ab", "c", "12", {"1": "a", "2": "b"}, {"1": "c", "2": "c"}, operators=ops)


@pytest.fixture
def chain_model():
    """pi-fibers {1,2},{3} and pip-fibers {1},{2,3}."""
    return make_model(
        "ab",
        "cd",
        "123",
        {"1": "a", "2": "a", "3": "b"},
        {"1": "c", "2": "d", "3": "d"},
        w_k={"a": 1, "b": 2},
        w_kp={"c": 2, "d": 1},
    )


@pytest.fixture
def weighted_fiber():
    """One K point of weight 2 over fiber weights (1, 2), so [K:J] = 3."""
    return make_model(
        "a",
        "b",
        "12",
        {"1": "a", "2": "a"},
        {"1": "b", "2": "b"},
        w_k={"a": 2},
        w_kp={"b": 2},
        w_j={"1": 1, "2": 2},
    )
