"""The truncated polynomial algebras A_i, wreath products
A_i^{(x)d} x| k[S_d], symmetric-group idempotents and corner algebras."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .algebra import ResourceError, StructAlgebra
from .partitions import Partition, is_basic, rim_hooks
from .primefield import DTYPE, rank_array, row_basis
from .symchar import GradedDim, character_degree

WREATH_CAP = 2500
CORNER_ORBIT_CAP = 200_000


class NotDefectZeroError(ValueError):
    """The requested idempotent does not exist over F_p."""


class GradedStructAlgebra(StructAlgebra):
    """A StructAlgebra whose basis is homogeneous, all degrees even."""

    def __init__(self, p, labels, consts, unit, degrees, name=""):
        super().__init__(p, labels, consts, unit, degrees, name)
        if any(x % 2 for x in self.degrees):
            raise ValueError("odd degree present: the wreath product would need Koszul signs")
        if not self.is_graded():
            raise ValueError("structure constants do not respect the grading")

    def graded_dim(self) -> GradedDim:
        out: dict = {}
        for x in self.degrees:
            out[x] = out.get(x, 0) + 1
        return GradedDim(out)


# -- A_i ---------------------------------------------------------------------

def _monomials(p: int, i: int):
    """Exponent vectors of k[x_1..x_i]/(x_j^p), sorted by degree then lexicographically."""
    exps = list(itertools.product(range(p), repeat=i))
    deg = lambda a: sum(a[j] * 2 * p**j for j in range(i))
    return sorted(exps, key=lambda a: (deg(a), a)), deg


def _mono_label(a) -> str:
    parts = []
    for j, e in enumerate(a):
        if e == 1:
            parts.append(f"x{j + 1}")
        elif e > 1:
            parts.append(f"x{j + 1}^{e}")
    return "*".join(parts) or "1"


@lru_cache(maxsize=None)
def _ai_table(p: int, i: int):
    monos, deg = _monomials(p, i)
    index = {a: n for n, a in enumerate(monos)}
    table = np.full((len(monos), len(monos)), -1, dtype=np.int64)
    for a, na in index.items():
        for b, nb in index.items():
            c = tuple(x + y for x, y in zip(a, b))
            if max(c) < p:
                table[na, nb] = index[c]
    return monos, [deg(a) for a in monos], table


def algebra_Ai(p: int, i: int) -> GradedStructAlgebra:
    """k[x_1..x_i]/(x_j^p) with |x_j| = 2p^(j-1)."""
    if i < 1:
        raise ValueError("i must be at least 1")
    monos, degs, table = _ai_table(p, i)
    a, b = np.nonzero(table >= 0)
    c = table[a, b]
    unit = np.zeros(len(monos), dtype=DTYPE)
    unit[0] = 1
    return GradedStructAlgebra(p, [_mono_label(m) for m in monos], (a, b, c, np.ones_like(c)), unit, degs,
                               name=f"A_{i} over F_{p}")


# -- the symmetric group -----------------------------------------------------

@lru_cache(maxsize=None)
def permutations(d: int) -> tuple:
    """All permutations of range(d) as tuples, identity first."""
    return tuple(itertools.permutations(range(d)))


def compose(s, t) -> tuple:
    """(s t)(k) = s(t(k))."""
    return tuple(s[x] for x in t)


def perm_inverse(s) -> tuple:
    out = [0] * len(s)
    for k, x in enumerate(s):
        out[x] = k
    return tuple(out)


def cycle_type(s) -> Partition:
    seen, lengths = set(), []
    for start in range(len(s)):
        if start in seen:
            continue
        n, x = 0, start
        while x not in seen:
            seen.add(x)
            x = s[x]
            n += 1
        lengths.append(n)
    return Partition(sorted(lengths, reverse=True))


def sign(s) -> int:
    return -1 if (len(s) - cycle_type(s).rows) % 2 else 1


@lru_cache(maxsize=None)
def character_value(lam: Partition, rho: Partition) -> int:
    """Murnaghan-Nakayama: chi_lam at cycle type rho."""
    lam, rho = Partition(lam), Partition(rho)
    if lam.weight != rho.weight:
        raise ValueError("weights differ")
    if rho.weight == 0:
        return 1
    first, rest = rho[0], Partition(rho[1:])
    return sum((-1) ** leg * character_value(mu, rest) for mu, leg in rim_hooks(lam, first))


class GroupAlgebra:
    """k[S_d] with the permutation basis in ``permutations(d)`` order."""

    def __init__(self, d: int, p: int):
        self.d, self.p = d, p
        self.perms = permutations(d)
        self.index = {s: n for n, s in enumerate(self.perms)}
        n = len(self.perms)
        self.mult = np.array([[self.index[compose(s, t)] for t in self.perms] for s in self.perms], dtype=np.int64)
        self.dim = n

    def mul(self, x, y) -> np.ndarray:
        out = np.zeros(self.dim, dtype=DTYPE)
        np.add.at(out, self.mult.reshape(-1), np.outer(x, y).reshape(-1) % self.p)
        return out % self.p

    def left_matrix(self, x) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=DTYPE)
        for s in range(self.dim):
            for t in range(self.dim):
                m[self.mult[s, t], t] += x[s]
        return m % self.p

    def right_matrix(self, y) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=DTYPE)
        for s in range(self.dim):
            for t in range(self.dim):
                m[self.mult[s, t], s] += y[t]
        return m % self.p

    def element(self, coeffs: dict) -> np.ndarray:
        v = np.zeros(self.dim, dtype=DTYPE)
        for s, c in coeffs.items():
            v[self.index[tuple(s)]] += c
        return v % self.p

    def left_ideal_dim(self, e) -> int:
        return rank_array(self.right_matrix(e), self.p)


def _reduce_fraction(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise NotDefectZeroError(f"coefficient {x} is not p-integral for p={p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def defect_zero_idempotent(lam, p: int) -> np.ndarray:
    """Central idempotent chi(1)/d! sum chi(s^-1) s of a defect-zero block of k[S_d]."""
    lam = Partition(lam)
    d = lam.weight
    ga = GroupAlgebra(d, p)
    deg = character_degree(lam)
    e = np.array([_reduce_fraction(Fraction(deg * character_value(lam, cycle_type(perm_inverse(s))), factorial(d)), p)
                  for s in ga.perms], dtype=DTYPE)
    if not np.array_equal(ga.mul(e, e), e) or not e.any():
        raise AssertionError("character idempotent failed e^2 = e")
    if ga.left_ideal_dim(e) != deg * deg:
        raise AssertionError("block dimension differs from chi(1)^2")
    return e


def young_symmetrizer(lam, p: int) -> np.ndarray:
    """Row symmetrizer times column antisymmetrizer of the row-reading tableau."""
    lam = Partition(lam)
    d = lam.weight
    ga = GroupAlgebra(d, p)
    rows, pos = [], 0
    for r in lam:
        rows.append(list(range(pos, pos + r)))
        pos += r
    cols = [[rows[i][j] for i in range(len(rows)) if j < len(rows[i])] for j in range(lam[0] if lam else 0)]

    def subgroup(blocks):
        out = []
        for s in ga.perms:
            if all(sorted(s[x] for x in b) == b for b in blocks):
                out.append(s)
        return out

    row_sum = ga.element({s: 1 for s in subgroup(rows)})
    col_sum = ga.element({s: sign(s) for s in subgroup(cols)})
    return ga.mul(row_sum, col_sum)


def primitive_idempotent(lam, p: int) -> np.ndarray:
    """Normalised Young symmetrizer y / h, h the hook product; primitive in a defect-zero block."""
    lam = Partition(lam)
    ga = GroupAlgebra(lam.weight, p)
    h = 1
    for x in lam.hooks():
        h *= x
    if h % p == 0:
        raise NotDefectZeroError(f"hook product {h} of {lam} is divisible by {p}")
    f = young_symmetrizer(lam, p) * pow(h, -1, p) % p
    if not np.array_equal(ga.mul(f, f), f):
        raise AssertionError("normalised Young symmetrizer is not idempotent")
    if ga.left_ideal_dim(f) != character_degree(lam):
        raise AssertionError("Young idempotent is not primitive")
    return f


# -- wreath products ---------------------------------------------------------

class WreathProduct(GradedStructAlgebra):
    """A_i^{(x)d} x| k[S_d]; basis pairs (monomial tuple, permutation)."""

    def __init__(self, p, i, d, labels, consts, unit, degrees, tuples, perms):
        super().__init__(p, labels, consts, unit, degrees, name=f"A_{i}^{d} x| S_{d} over F_{p}")
        self.i, self.d = i, d
        self.tuples = tuples
        self.perms = perms
        self.nperm = len(perms)

    def index(self, t: int, s: int) -> int:
        return t * self.nperm + s

    def group_element(self, x) -> np.ndarray:
        """Embed an element of k[S_d] via the identity monomial tuple."""
        out = np.zeros(self.dim, dtype=DTYPE)
        out[: self.nperm] = x
        return out % self.p


def _tuple_data(p: int, i: int, d: int):
    monos, degs, table = _ai_table(p, i)
    m = len(monos)
    tuples = list(itertools.product(range(m), repeat=d))
    tuples.sort(key=lambda t: (sum(degs[x] for x in t), t))
    tindex = {t: n for n, t in enumerate(tuples)}
    return monos, degs, table, tuples, tindex


def act_on_tuple(s, t) -> tuple:
    """The factor in position k moves to position s(k)."""
    out = [0] * len(t)
    for k, x in enumerate(t):
        out[s[k]] = x
    return tuple(out)


def wreath_product(p: int, i: int, d: int, cap: int = WREATH_CAP) -> WreathProduct:
    size = factorial(d) * p ** (i * d)
    if size > cap:
        raise ResourceError("wreath product", size, cap, "cap")
    monos, degs, table, tuples, tindex = _tuple_data(p, i, d)
    perms = permutations(d)
    pindex = {s: n for n, s in enumerate(perms)}
    nt, npm = len(tuples), len(perms)
    tarr = np.array(tuples, dtype=np.int64).reshape(nt, d)
    # acted[s, t] = index of s(t)
    acted = np.array([[tindex[act_on_tuple(s, t)] for t in tuples] for s in perms], dtype=np.int64)
    mult = np.array([[pindex[compose(s, u)] for u in perms] for s in perms], dtype=np.int64)
    weights = np.array([table.shape[0] ** k for k in range(d)], dtype=np.int64)
    code_index = np.full(table.shape[0] ** d, -1, dtype=np.int64)
    code_index[(tarr * weights).sum(axis=1)] = np.arange(nt)
    I, J, K = [], [], []
    for si in range(npm):
        moved = tarr[acted[si]]  # s(t') for all t'
        prod = table[tarr[:, None, :], moved[None, :, :]]  # (t, t', d)
        ok = (prod >= 0).all(axis=2)
        ta, tb = np.nonzero(ok)
        tc = code_index[(prod[ta, tb] * weights).sum(axis=1)]
        for ui in range(npm):
            I.append(ta * npm + si)
            J.append(tb * npm + ui)
            K.append(tc * npm + mult[si, ui])
    I, J, K = (np.concatenate(x) for x in (I, J, K))
    labels = [(tuple(_mono_label(monos[x]) for x in t), s) for t in tuples for s in perms]
    degrees = [sum(degs[x] for x in t) for t in tuples for _ in perms]
    unit = np.zeros(nt * npm, dtype=DTYPE)
    unit[0] = 1
    return WreathProduct(p, i, d, labels, (I, J, K, np.ones_like(I)), unit, degrees, tuples, perms)


# -- corners -----------------------------------------------------------------

def _idempotent(lam, p, kind):
    if kind == "primitive":
        return primitive_idempotent(lam, p)
    if kind == "central":
        return defect_zero_idempotent(lam, p)
    raise ValueError(f"unknown idempotent kind {kind!r}")


def _require_basic(lam, p):
    lam = Partition(lam)
    if not is_basic(lam, p):
        raise NotDefectZeroError(f"{lam} is not basic for p={p}")
    return lam


def corner_graded_dim(lam, p: int, i: int, kind: str = "primitive", cap: int = CORNER_ORBIT_CAP) -> GradedDim:
    """Graded dimension of e (A_i^{(x)d} x| k[S_d]) e, orbit by orbit.

    W e is spanned by t.s with t a monomial tuple and s in k[S_d] e;
    e acts diagonally and preserves each S_d-orbit of tuples, so the corner
    in the degree of an orbit has dimension rank(e) on that orbit's block.
    """
    lam = _require_basic(lam, p)
    d = lam.weight
    e = _idempotent(lam, p, kind)
    ga = GroupAlgebra(d, p)
    ideal, _ = row_basis(ga.right_matrix(e).T, p, ga.dim)  # rows span k[S_d] e
    monos, degs, _ = _ai_table(p, i)
    ntuples = len(monos) ** d
    if ntuples * ga.dim > cap:
        raise ResourceError("corner orbit computation", ntuples * ga.dim, cap, "cap")
    support = [(g, int(c)) for g, c in enumerate(e) if c]
    # left multiplication by each group element on the ideal basis, in k[S_d] coordinates
    moved_ideal = {g: (ga.left_matrix(ga.element({ga.perms[g]: 1})) @ ideal.T % p).T for g, _ in support}
    out: dict = {}
    seen = set()
    for t in itertools.product(range(len(monos)), repeat=d):
        if t in seen:
            continue
        orbit = sorted({act_on_tuple(s, t) for s in ga.perms})
        seen.update(orbit)
        oindex = {u: n for n, u in enumerate(orbit)}
        rows = []
        for u in orbit:
            for j in range(ideal.shape[0]):
                v = np.zeros((len(orbit), ga.dim), dtype=DTYPE)
                for g, c in support:
                    v[oindex[act_on_tuple(ga.perms[g], u)]] += c * moved_ideal[g][j]
                rows.append(v.reshape(-1) % p)
        r = rank_array(np.array(rows), p)
        if r:
            deg = sum(degs[x] for x in t)
            out[deg] = out.get(deg, 0) + r
    return GradedDim(out)


CORNER_ALGEBRA_CAP = 800


def corner_algebra(lam, p: int, i: int, kind: str = "primitive", cap: int = CORNER_ALGEBRA_CAP) -> GradedStructAlgebra:
    """e W e as an algebra with unit e, from the explicit wreath product."""
    lam = _require_basic(lam, p)
    d = lam.weight
    w = wreath_product(p, i, d, cap)
    e = w.group_element(_idempotent(lam, p, kind))
    sandwich = (w.left_matrix(e) @ w.right_matrix(e)) % p  # columns: e b e
    degs = np.array(w.degrees)
    basis_rows, degrees = [], []
    for deg in sorted(set(w.degrees)):
        cols = np.flatnonzero(degs == deg)
        b, _ = row_basis(sandwich[:, cols].T, p, w.dim)
        basis_rows.extend(b)
        degrees.extend([deg] * b.shape[0])
    basis = np.array(basis_rows, dtype=DTYPE).reshape(-1, w.dim)
    pivots = [int(np.flatnonzero(r)[0]) for r in basis]
    n = basis.shape[0]
    I, J, K, V = [], [], [], []
    for a in range(n):
        la = w.left_matrix(basis[a])
        prods = (la @ basis.T % p).T  # row b: u_a u_b
        coords = prods[:, pivots]
        if not np.array_equal(coords @ basis % p, prods):
            raise AssertionError("corner is not closed under multiplication")
        bs, ks = np.nonzero(coords)
        I.extend([a] * len(bs))
        J.extend(bs.tolist())
        K.extend(ks.tolist())
        V.extend(coords[bs, ks].tolist())
    unit = e[pivots]
    if not np.array_equal(unit @ basis % p, e):
        raise AssertionError("e is not in its own corner")
    labels = [f"c{k}" for k in range(n)]
    alg = GradedStructAlgebra(p, labels, (I, J, K, V), unit, degrees, name=f"corner {lam} A_{i} over F_{p}")
    alg.ambient_basis = basis
    return alg
