import itertools
from math import comb

import numpy as np
import pytest

from strictpoly.algebra import AModule, ResourceError, StructAlgebra, hom_space
from strictpoly.partitions import Partition, enumerate_partitions
from strictpoly.schur import (
    IsoResult,
    is_isomorphic,
    kostka_profile,
    kuhn_dual,
    schur_algebra,
    simple_module,
    tensor_space,
    twist_label,
    weyl_module,
)
from strictpoly.symchar import dim_schur, kostka


def random_elements(alg, count, seed=0):
    rng = np.random.default_rng(seed)
    return [rng.integers(0, alg.p, size=alg.dim) for _ in range(count)]


@pytest.mark.parametrize("n,d,p", [(2, 2, 2), (2, 3, 3), (3, 2, 2), (3, 3, 2), (2, 4, 2), (1, 3, 5), (3, 1, 3)])
def test_dimension_formula(n, d, p):
    assert schur_algebra(n, d, p).dim == comb(n * n + d - 1, d)


def test_dimension_examples():
    assert schur_algebra(2, 2, 2).dim == 10
    assert schur_algebra(3, 3, 3).dim == 165
    for n in (1, 2, 3):
        assert schur_algebra(n, 1, 2).dim == n * n


@pytest.mark.parametrize("n,d,p", [(2, 2, 2), (2, 3, 3), (3, 2, 3), (3, 3, 2)])
def test_orbit_equals_commutant(n, d, p):
    a = schur_algebra(n, d, p, method="orbit")
    b = schur_algebra(n, d, p, method="commutant")
    assert a.pivots == b.pivots
    assert np.array_equal(a.rep % p, b.rep % p)
    assert all(np.array_equal(x, y) for x, y in zip(a.consts, b.consts))


@pytest.mark.parametrize("n,d,p", [(2, 2, 2), (2, 3, 3), (3, 3, 2), (3, 3, 3)])
def test_algebra_laws(n, d, p):
    alg = schur_algebra(n, d, p)
    assert alg.check_unit()
    assert alg.check_associativity()
    # the representation is a homomorphism
    for x, y in itertools.combinations(random_elements(alg, 4, seed=n + d), 2):
        lhs = alg.element_matrix(alg.mul(x, y))
        rhs = alg.element_matrix(x) @ alg.element_matrix(y) % p
        assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("n,d,p", [(2, 2, 2), (2, 3, 3), (3, 3, 2)])
def test_transpose_anti_automorphism(n, d, p):
    alg = schur_algebra(n, d, p)
    t = alg.tau_matrix()
    assert np.array_equal(t @ t % p, np.eye(alg.dim, dtype=t.dtype))
    for x, y in itertools.combinations(random_elements(alg, 4, seed=7), 2):
        assert np.array_equal(alg.apply_tau(alg.mul(x, y)), alg.mul(alg.apply_tau(y), alg.apply_tau(x)))
        # tau acts on tensor space as matrix transpose
        assert np.array_equal(alg.element_matrix(alg.apply_tau(x)), alg.element_matrix(x).T % p)


@pytest.mark.parametrize("n,d,p", [(2, 2, 2), (3, 3, 3), (2, 3, 2)])
def test_weight_idempotents(n, d, p):
    alg = schur_algebra(n, d, p)
    xi = alg.weight_idempotents()
    assert len(xi) == comb(n + d - 1, d)
    total = sum(xi.values()) % p
    assert np.array_equal(total, alg.unit)
    for a, b in itertools.product(xi, repeat=2):
        prod = alg.mul(xi[a], xi[b])
        assert np.array_equal(prod, xi[a] if a == b else np.zeros_like(prod))


def test_truncated_algebra_is_corner():
    full = schur_algebra(3, 3, 2)
    cut = schur_algebra(3, 3, 2, weights="partitions")
    assert cut.dim < full.dim
    assert cut.check_associativity() and cut.check_unit()
    assert set(cut.xi) == {(3, 0, 0), (2, 1, 0), (1, 1, 1)}


def test_tensor_space_cap():
    with pytest.raises(ResourceError):
        tensor_space(4, 8, 2, max_tensor_dim=1000)
    with pytest.raises(ResourceError):
        schur_algebra(5, 5, 2, max_tensor_dim=100)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_weyl_kostka_profiles(p, d):
    n = d
    alg = schur_algebra(n, d, p)
    for lam in enumerate_partitions(d):
        w = weyl_module(lam, alg=alg)
        assert w.module.check()
        assert w.module.dim == dim_schur(lam, n)
        prof = kostka_profile(w, alg)
        for alpha, k in prof.items():
            assert k == kostka(lam, alpha)


def test_simple_dimensions():
    alg = schur_algebra(2, 2, 2)
    assert simple_module((2,), alg=alg).dim == 2
    assert simple_module((1, 1), alg=alg).dim == 1
    # in characteristic 0-like range every Weyl module is simple
    alg = schur_algebra(3, 2, 3)
    for lam in enumerate_partitions(2):
        assert simple_module(lam, alg=alg).dim == dim_schur(lam, 3)


def test_gram_radical_is_submodule():
    for p, n, d in [(2, 2, 2), (2, 3, 3), (3, 3, 3), (2, 2, 4)]:
        alg = schur_algebra(n, d, p)
        for lam in enumerate_partitions(d, max_rows=n):
            w = weyl_module(lam, alg=alg)
            g = w.gram.array
            assert np.array_equal(g, g.T)
            rad, piv = w.radical()
            if rad.shape[0]:
                sub = w.module.submodule(rad, piv)
                assert sub.check()
            # the highest weight vector is never in the radical
            assert rad.shape[0] < w.module.dim


def test_twist_label_examples():
    assert twist_label((1,), 2, 1) == Partition((2,))
    assert twist_label((2, 1), 3, 1) == Partition((6, 3))
    assert twist_label((1,), 2, 2) == Partition((4,))


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_kuhn_self_duality_of_simples(p, d):
    alg = schur_algebra(d, d, p)
    for lam in enumerate_partitions(d):
        s = simple_module(lam, alg=alg)
        dual = kuhn_dual(s)
        assert dual.check()
        res = is_isomorphic(s, dual)
        assert res.isomorphic is True, lam
        assert res.witness.rank() == s.dim


def test_kuhn_dual_involution():
    alg = schur_algebra(2, 3, 2)
    m = alg.tensor_module()
    back = kuhn_dual(kuhn_dual(m))
    assert np.array_equal(back.action, m.action)


def test_is_isomorphic_basic_cases():
    alg = schur_algebra(2, 2, 2)
    s2 = simple_module((2,), alg=alg)
    s11 = simple_module((1, 1), alg=alg)
    assert is_isomorphic(s2, s2).isomorphic is True
    assert is_isomorphic(s2, s11).isomorphic is False
    w = weyl_module((2,), alg=alg).module
    assert is_isomorphic(w, kuhn_dual(w)).isomorphic is False
    with pytest.raises(TypeError):
        bool(is_isomorphic(s2, s2))
    assert isinstance(is_isomorphic(s11, s11), IsoResult)


def test_hom_space_simple_schur():
    alg = schur_algebra(2, 2, 2)
    s2 = simple_module((2,), alg=alg)
    s11 = simple_module((1, 1), alg=alg)
    assert hom_space(s2, s2).shape[0] == 1
    assert hom_space(s2, s11).shape[0] == 0


def test_struct_algebra_json_roundtrip():
    alg = schur_algebra(2, 2, 3)
    back = StructAlgebra.from_dict(alg.to_dict())
    assert back.dim == alg.dim
    assert np.array_equal(back.unit, alg.unit)
    x, y = random_elements(alg, 2)
    assert np.array_equal(back.mul(x, y), alg.mul(x, y))


def test_bad_arguments():
    with pytest.raises(ValueError):
        weyl_module((2, 1), n=2, d=2, p=2)
    with pytest.raises(ValueError):
        weyl_module((1, 1, 1), n=2, d=3, p=2)
    with pytest.raises(ValueError):
        schur_algebra(2, 2, 2, method="magic")
