import itertools
from math import factorial

import numpy as np
import pytest

from strictpoly.algebra import ResourceError
from strictpoly.partitions import Partition, basic_diagrams, enumerate_partitions
from strictpoly.symchar import GradedDim, character_degree, graded_dim_Ai, graded_dim_corner_lr
from strictpoly.wreath import (
    GroupAlgebra,
    NotDefectZeroError,
    act_on_tuple,
    algebra_Ai,
    character_value,
    compose,
    corner_algebra,
    corner_graded_dim,
    cycle_type,
    defect_zero_idempotent,
    perm_inverse,
    permutations,
    primitive_idempotent,
    sign,
    wreath_product,
)


def brute_character(lam, rho):
    """chi_lam(rho) from the permutation module formula: det expansion of Jacobi-Trudi
    is avoided; use chi = sum over S_l of sign * (number of row-stabiliser fixed points)."""
    # Frobenius formula: chi_lam(rho) = coefficient of x^(lam + delta) in a_delta * p_rho
    lam = Partition(lam)
    n = max(len(lam), 1)
    target = tuple(lam[k] + n - 1 - k if k < len(lam) else n - 1 - k for k in range(n))
    poly = {}
    for s in itertools.permutations(range(n)):
        exps = tuple(n - 1 - s[k] for k in range(n))
        poly[exps] = poly.get(exps, 0) + sign_of(s)
    for r in rho:
        new = {}
        for exps, c in poly.items():
            for k in range(n):
                e = list(exps)
                e[k] += r
                e = tuple(e)
                new[e] = new.get(e, 0) + c
        poly = new
    return poly.get(target, 0)


def sign_of(s):
    inv = sum(1 for a, b in itertools.combinations(range(len(s)), 2) if s[a] > s[b])
    return -1 if inv % 2 else 1


def test_Ai_examples():
    a = algebra_Ai(2, 1)
    assert a.dim == 2 and a.degrees == [0, 2]
    assert algebra_Ai(3, 1).degrees == [0, 2, 4]
    assert algebra_Ai(2, 2).degrees == [0, 2, 4, 6]
    assert algebra_Ai(2, 2).labels == ["1", "x1", "x2", "x1*x2"]


@pytest.mark.parametrize("p,i", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (2, 3)])
def test_Ai_laws(p, i):
    a = algebra_Ai(p, i)
    assert a.check_unit() and a.check_associativity() and a.is_graded()
    assert a.graded_dim() == graded_dim_Ai(p, i).graded_dim()
    # commutative and x_j^p = 0
    for x, y in itertools.product(range(a.dim), repeat=2):
        assert np.array_equal(a.mul(a.basis_vector(x), a.basis_vector(y)), a.mul(a.basis_vector(y), a.basis_vector(x)))
    x1 = a.basis_vector(1)
    assert a.power(x1, p - 1).any()
    assert not a.power(x1, p).any()


@pytest.mark.parametrize("d", range(1, 6))
def test_character_values(d):
    for lam in enumerate_partitions(d):
        for rho in enumerate_partitions(d):
            assert character_value(lam, rho) == brute_character(lam, rho)
    # column orthogonality at the identity: sum chi(1)^2 = d!
    assert sum(character_degree(lam) ** 2 for lam in enumerate_partitions(d)) == factorial(d)


def test_permutation_helpers():
    perms = permutations(3)
    assert perms[0] == (0, 1, 2) and len(perms) == 6
    for s, t in itertools.product(perms, repeat=2):
        assert sign(compose(s, t)) == sign(s) * sign(t)
        assert compose(s, perm_inverse(s)) == perms[0]
        u = (2, 0, 1)
        assert act_on_tuple(compose(s, t), u) == act_on_tuple(s, act_on_tuple(t, u))
    assert cycle_type((1, 0, 2)) == Partition((2, 1))


def test_idempotent_examples_p3():
    ga = GroupAlgebra(2, 3)
    e2 = defect_zero_idempotent((2,), 3)
    e11 = defect_zero_idempotent((1, 1), 3)
    # 2(1 + swap) and 2(1 - swap) over F_3
    assert e2.tolist() == [2, 2] and e11.tolist() == [2, 1]
    assert not ga.mul(e2, e11).any()
    assert np.array_equal((e2 + e11) % 3, ga.element({(0, 1): 1}))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_idempotent_laws(p):
    for d in range(1, 5):
        basics = basic_diagrams(d, p)
        ga = GroupAlgebra(d, p)
        cents = {lam: defect_zero_idempotent(lam, p) for lam in basics}
        for lam, e in cents.items():
            assert np.array_equal(ga.mul(e, e), e)
            # central
            for g in ga.perms:
                x = ga.element({g: 1})
                assert np.array_equal(ga.mul(x, e), ga.mul(e, x))
            f = primitive_idempotent(lam, p)
            assert np.array_equal(ga.mul(f, f), f)
            assert np.array_equal(ga.mul(e, f), f)
            assert ga.left_ideal_dim(f) == character_degree(lam)
        for a, b in itertools.combinations(cents.values(), 2):
            assert not ga.mul(a, b).any()


def test_not_defect_zero():
    with pytest.raises(NotDefectZeroError):
        primitive_idempotent((2,), 2)
    with pytest.raises(NotDefectZeroError):
        defect_zero_idempotent((2,), 2)
    with pytest.raises(NotDefectZeroError):
        corner_graded_dim((3,), 3, 1)
    with pytest.raises(NotDefectZeroError):
        corner_algebra((1, 1), 2, 1)


@pytest.mark.parametrize("p,i,d", [(3, 1, 2), (2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 3)])
def test_wreath_product_laws(p, i, d):
    w = wreath_product(p, i, d)
    assert w.dim == factorial(d) * p ** (i * d)
    assert w.check_unit() and w.is_graded()
    rng = np.random.default_rng(d + p)
    triples = [tuple(rng.integers(0, w.dim, size=3)) for _ in range(300)]
    assert w.check_associativity(triples)


def test_wreath_examples():
    w = wreath_product(3, 1, 2)
    assert w.dim == 18
    assert w.check_associativity()
    # (m, s)(m', s') = (m s(m'), s s')
    swap = w.index(0, 1)
    x1_left = w.index(w.tuples.index((1, 0)), 0)
    x1_right = w.index(w.tuples.index((0, 1)), 0)
    assert np.array_equal(w.mul(w.basis_vector(swap), w.basis_vector(x1_left)),
                          w.mul(w.basis_vector(x1_right), w.basis_vector(swap)))


def test_wreath_d1_is_Ai():
    for p, i in [(2, 1), (3, 1), (2, 2)]:
        w = wreath_product(p, i, 1)
        a = algebra_Ai(p, i)
        assert w.dim == a.dim and w.degrees == a.degrees
        assert all(np.array_equal(x, y) for x, y in zip(w.consts, a.consts))


def test_wreath_cap():
    with pytest.raises(ResourceError):
        wreath_product(5, 2, 3, cap=1000)


CORNER_CASES = [(lam, p, i) for p in (2, 3, 5) for i in (1, 2) for d in (1, 2, 3) for lam in basic_diagrams(d, p)]


@pytest.mark.parametrize("lam,p,i", CORNER_CASES, ids=[f"{l}-p{p}-i{i}" for l, p, i in CORNER_CASES])
def test_corner_matches_lr_formula(lam, p, i):
    d = lam.weight
    g = corner_graded_dim(lam, p, i)
    assert g == graded_dim_corner_lr(lam, d, p, i)
    top = 2 * d * (p**i - 1)
    assert g.top() == top and g.is_palindromic(top)


@pytest.mark.parametrize("lam,p,i", [((1,), 2, 1), ((2,), 3, 1), ((1, 1), 3, 1), ((2, 1), 2, 1), ((2,), 3, 2), ((2, 1), 5, 1)])
def test_central_corner_is_matrix_algebra_over_primitive(lam, p, i):
    prim = corner_graded_dim(lam, p, i, kind="primitive")
    cent = corner_graded_dim(lam, p, i, kind="central")
    assert cent == prim * GradedDim.const(character_degree(Partition(lam)) ** 2)


@pytest.mark.parametrize("lam,p,i", [((1,), 2, 1), ((1,), 3, 2), ((2,), 3, 1), ((1, 1), 3, 1), ((2, 1), 2, 1), ((2,), 5, 1)])
def test_explicit_corner_algebra(lam, p, i):
    c = corner_algebra(lam, p, i)
    assert c.check_unit() and c.check_associativity() and c.is_graded()
    assert c.graded_dim() == corner_graded_dim(lam, p, i)


def test_corner_d1_is_Ai():
    for p, i in [(2, 1), (3, 1), (2, 2)]:
        c = corner_algebra((1,), p, i)
        a = algebra_Ai(p, i)
        assert c.dim == a.dim and c.degrees == a.degrees
        assert all(np.array_equal(x, y) for x, y in zip(c.consts, a.consts))


def test_corner_algebra_cap():
    with pytest.raises(ResourceError):
        corner_algebra((2, 1), 5, 2)
