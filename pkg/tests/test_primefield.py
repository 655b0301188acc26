import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from strictpoly.primefield import (
    PFMatrix,
    block,
    direct_sum,
    inverse,
    kernel_basis,
    kron,
    matmul,
    rref,
    solve,
)


def sympy_rank(a, p):
    """Independent oracle: sympy's rank over GF(p) via its DomainMatrix."""
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF

    if a.size == 0:
        return 0
    dm = DomainMatrix([[GF(p)(int(x)) for x in row] for row in a.tolist()], a.shape, GF(p))
    return dm.rank()


def rand_matrix(rng, p, max_size=12):
    r, c = rng.integers(1, max_size, size=2)
    a = rng.integers(0, p, size=(r, c))
    # low-rank products make dependencies common
    if rng.random() < 0.5:
        k = int(rng.integers(1, min(r, c) + 1))
        a = rng.integers(0, p, size=(r, k)) @ rng.integers(0, p, size=(k, c))
    return PFMatrix(a, p)


def test_examples():
    r, rank, piv = rref(PFMatrix.identity(4, 7))
    assert r == PFMatrix.identity(4, 7) and rank == 4 and piv == [0, 1, 2, 3]
    r, rank, piv = rref(PFMatrix.zeros(3, 3, 5))
    assert r.is_zero() and rank == 0 and piv == []
    assert PFMatrix([[1, 2], [2, 4]], 5).rank() == 1
    assert kernel_basis(PFMatrix.identity(3, 3)).cols == 0
    assert kernel_basis(PFMatrix.zeros(4, 4, 3)).cols == 4
    b = PFMatrix([[1], [2], [0]], 3)
    assert solve(PFMatrix.identity(3, 3), b) == b
    assert kron(PFMatrix.identity(2, 5), PFMatrix.identity(3, 5)) == PFMatrix.identity(6, 5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_nullity_against_sympy(p):
    rng = np.random.default_rng(p)
    for _ in range(200):
        m = rand_matrix(rng, p, max_size=60 if _ < 5 else 12)
        rank = m.rank()
        assert rank == sympy_rank(m.array, p)
        k = kernel_basis(m)
        assert k.cols == m.cols - rank
        assert matmul(m, k).is_zero()
        assert k.rank() == k.cols


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rref_idempotent(p):
    rng = np.random.default_rng(10 + p)
    for _ in range(50):
        m = rand_matrix(rng, p)
        r, _, _ = rref(m)
        assert rref(r)[0] == r


@pytest.mark.parametrize("p", [2, 3, 5])
def test_solve(p):
    rng = np.random.default_rng(20 + p)
    for _ in range(50):
        m = rand_matrix(rng, p)
        x = PFMatrix(rng.integers(0, p, size=(m.cols, 1)), p)
        b = matmul(m, x)
        y = solve(m, b)
        assert y is not None and matmul(m, y) == b
    # inconsistent system
    assert solve(PFMatrix([[1, 0], [0, 0]], p), [0, 1]) is None


@pytest.mark.parametrize("p", [2, 3, 5])
def test_kron_mixed_product_and_associativity(p):
    rng = np.random.default_rng(30 + p)
    for _ in range(30):
        a, c = (PFMatrix(rng.integers(0, p, size=(3, 3)), p) for _ in range(2))
        b, d = (PFMatrix(rng.integers(0, p, size=(2, 2)), p) for _ in range(2))
        assert matmul(kron(a, b), kron(c, d)) == kron(matmul(a, c), matmul(b, d))
        assert matmul(matmul(a, c), a) == matmul(a, matmul(c, a))


def test_inverse_and_errors():
    m = PFMatrix([[1, 1], [0, 1]], 2)
    assert matmul(m, inverse(m)) == PFMatrix.identity(2, 2)
    with pytest.raises(ZeroDivisionError):
        inverse(PFMatrix([[1, 1], [1, 1]], 3))
    with pytest.raises(ValueError):
        matmul(PFMatrix.identity(2, 3), PFMatrix.identity(3, 3))
    with pytest.raises(ValueError):
        PFMatrix.identity(2, 3) + PFMatrix.identity(2, 5)


def test_immutable_and_hashable():
    m = PFMatrix([[1, 2]], 3)
    with pytest.raises(ValueError):
        m.array[0, 0] = 2
    assert hash(m) == hash(PFMatrix([[4, 5]], 3))


def test_block_and_direct_sum():
    a = PFMatrix.identity(2, 3)
    z = PFMatrix.zeros(2, 2, 3)
    assert block([[a, z], [z, a]], 3) == PFMatrix.identity(4, 3)
    assert direct_sum([a, PFMatrix.identity(1, 3)], 3) == PFMatrix.identity(3, 3)


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=6))
def test_transpose_rank(rows):
    m = PFMatrix(rows, 7)
    assert m.rank() == m.T.rank()
