"""Schur algebras S(n,d) over F_p acting on tensor space, with Weyl and
simple modules, the transpose anti-automorphism and Kuhn duality.

``weights`` restricts everything to the sum of the given weight spaces of
tensor space; with all partitions of d as weights (and n >= d) the
result is the idempotent truncation e S(n,d) e, which is Morita
equivalent to S(n,d).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .algebra import AModule, ResourceError, StructAlgebra, algebra_from_matrices, hom_space
from .partitions import Partition, enumerate_partitions
from .primefield import DTYPE, PFMatrix, inv_mod, kernel_array, rank_array, row_basis, rref_array, solve_array

DEFAULT_MAX_TENSOR_DIM = 65536
# entries of the dense (basis x tensor x tensor) representation array
MAX_REP_ENTRIES = 40_000_000
ISO_SWEEP_CAP = 6


def compositions(d: int, n: int) -> list[tuple[int, ...]]:
    """Compositions of d into n nonnegative parts, lexicographically decreasing."""
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in compositions(d - first, n - 1):
            out.append((first,) + rest)
    return out


def content(word, n: int) -> tuple[int, ...]:
    c = [0] * n
    for x in word:
        c[x] += 1
    return tuple(c)


def partition_weights(n: int, d: int) -> list[tuple[int, ...]]:
    """Partitions of d with at most n rows, padded to length n."""
    return [tuple(lam) + (0,) * (n - len(lam)) for lam in enumerate_partitions(d, max_rows=n)]


@dataclass
class TensorSpace:
    """(k^n)^{⊗d}, or the sum of some of its weight spaces; letters are 0..n-1."""

    n: int
    d: int
    p: int
    words: list[tuple[int, ...]]

    def __post_init__(self):
        self.index = {w: k for k, w in enumerate(self.words)}

    @property
    def dim(self) -> int:
        return len(self.words)

    def act(self, sigma, word):
        """Place permutation: letter at position k moves to position sigma[k]."""
        out = [0] * self.d
        for k, x in enumerate(word):
            out[sigma[k]] = x
        return tuple(out)

    def perm_matrix(self, sigma) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=DTYPE)
        for k, w in enumerate(self.words):
            m[self.index[self.act(sigma, w)], k] = 1
        return m

    def transpositions(self) -> list[np.ndarray]:
        """Matrices of the adjacent transpositions (generators of the group)."""
        out = []
        for k in range(self.d - 1):
            sigma = list(range(self.d))
            sigma[k], sigma[k + 1] = sigma[k + 1], sigma[k]
            out.append(self.perm_matrix(sigma))
        return out

    def permutations(self):
        for sigma in itertools.permutations(range(self.d)):
            yield sigma, self.perm_matrix(sigma)

    def word_label(self, w) -> str:
        return "".join(str(x + 1) for x in w)


def tensor_space(n: int, d: int, p: int, weights=None, max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM) -> TensorSpace:
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if weights is None:
        size = n**d
        if size > max_tensor_dim:
            raise ResourceError(f"tensor space (k^{n})^{d}", size, max_tensor_dim, "max_tensor_dim")
        words = list(itertools.product(range(n), repeat=d))
    else:
        wanted = {tuple(a) for a in weights}
        size = sum(_multinomial(d, a) for a in wanted)
        if size > max_tensor_dim:
            raise ResourceError("truncated tensor space", size, max_tensor_dim, "max_tensor_dim")
        words = [w for w in itertools.product(range(n), repeat=d) if content(w, n) in wanted] if n**d <= 4 * max_tensor_dim else _words_of_contents(n, d, wanted)
    return TensorSpace(n, d, p, words)


def _multinomial(d, alpha):
    out, rest = 1, d
    for a in alpha:
        out *= comb(rest, a)
        rest -= a
    return out


def _words_of_contents(n, d, wanted):
    words = set()
    for alpha in wanted:
        base = [x for x, a in enumerate(alpha) for _ in range(a)]
        words.update(itertools.permutations(base))
    return sorted(words)


class SchurAlgebra(StructAlgebra):
    """End_{Σ_d} of tensor space, with its defining representation.

    ``rep[b]`` is the matrix of basis element b on tensor space, ``tau`` the
    permutation of the basis induced by matrix transpose and ``xi`` maps
    each weight to the coordinates of its weight idempotent.
    """

    def __init__(self, base: StructAlgebra, space: TensorSpace, rep: np.ndarray, pivots, tau, xi, weights):
        super().__init__(base.p, base.labels, base.consts, base.unit, name=base.name)
        self.space = space
        self.n = space.n
        self.d = space.d
        self.rep = rep
        self.pivots = list(pivots)
        self.tau = np.asarray(tau)
        self.xi = xi
        self.weights = weights

    def tau_matrix(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=DTYPE)
        m[self.tau, np.arange(self.dim)] = 1
        return m

    def apply_tau(self, x) -> np.ndarray:
        out = np.zeros(self.dim, dtype=DTYPE)
        out[self.tau] = np.asarray(x, dtype=DTYPE)
        return out

    def tensor_module(self) -> AModule:
        return AModule(self, self.rep, label="tensor space")

    def weight_idempotents(self) -> dict[tuple[int, ...], np.ndarray]:
        return dict(self.xi)

    def element_matrix(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=DTYPE), self.rep, axes=1) % self.p


def _orbit_basis(space: TensorSpace):
    """Orbit sums of Σ_d on pairs of words, ordered by first position."""
    words = space.words
    key_index: dict = {}
    positions: list[list[tuple[int, int]]] = []
    for a, wi in enumerate(words):
        for b, wj in enumerate(words):
            key = tuple(sorted(zip(wi, wj)))
            k = key_index.get(key)
            if k is None:
                key_index[key] = len(positions)
                positions.append([(a, b)])
            else:
                positions[k].append((a, b))
    return key_index, positions


def commutant_basis(space: TensorSpace) -> tuple[np.ndarray, list[int]]:
    """Reduced echelon basis of the commutant of the place permutations.

    Solves X sigma = sigma X for the adjacent transpositions directly.
    """
    n = space.dim
    p = space.p
    eye = np.eye(n, dtype=DTYPE)
    blocks = []
    for s in space.transpositions():
        # row-major vec: vec(X S) = (I ⊗ S^T) vec X, vec(S X) = (S ⊗ I) vec X
        blocks.append(np.kron(eye, s.T) - np.kron(s, eye))
    if not blocks:
        basis = np.eye(n * n, dtype=DTYPE)
        return basis, list(range(n * n))
    system = np.vstack(blocks) % p
    ker = kernel_array(system, p)
    basis, piv = rref_array(ker, p)
    return basis[: len(piv)], piv


@lru_cache(maxsize=32)
def _schur_cached(n, d, p, weights, method, max_tensor_dim):
    return _build_schur(n, d, p, None if weights is None else list(weights), method, max_tensor_dim)


def schur_algebra(n: int, d: int, p: int, weights=None, method: str = "orbit",
                  max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM) -> SchurAlgebra:
    """S(n,d) over F_p (or its truncation to ``weights``; ``"partitions"``
    selects all partitions of d).

    ``method="orbit"`` takes orbit sums of pairs of words as basis;
    ``method="commutant"`` solves the commutation equations. Both give
    the same echelonized basis and hence identical structure constants.
    """
    if weights == "partitions":
        weights = partition_weights(n, d)
    key = None if weights is None else tuple(sorted(tuple(w) for w in weights))
    return _schur_cached(n, d, p, key, method, max_tensor_dim)


def _build_schur(n, d, p, weights, method, max_tensor_dim) -> SchurAlgebra:
    space = tensor_space(n, d, p, weights, max_tensor_dim)
    N = space.dim
    all_weights = weights if weights is not None else compositions(d, n)
    if method == "orbit":
        key_index, positions = _orbit_basis(space)
        dim = len(positions)
        if dim * N * N > MAX_REP_ENTRIES:
            raise ResourceError(f"representation of S({n},{d})", dim * N * N, MAX_REP_ENTRIES, "MAX_REP_ENTRIES")
        rep = np.zeros((dim, N, N), dtype=DTYPE)
        for c, pos in enumerate(positions):
            arr = np.array(pos)
            rep[c, arr[:, 0], arr[:, 1]] = 1
        pivots = [pos[0][0] * N + pos[0][1] for pos in positions]
        tau = []
        for pos in positions:
            a, b = pos[0]
            key = tuple(sorted(zip(space.words[b], space.words[a])))
            tau.append(key_index[key])
    elif method == "commutant":
        basis, pivots = commutant_basis(space)
        dim = basis.shape[0]
        rep = basis.reshape(dim, N, N)
        flat_t = np.transpose(rep, (0, 2, 1)).reshape(dim, -1)
        coeffs = flat_t[:, pivots]
        tau = [int(np.flatnonzero(row)[0]) for row in coeffs]
        for b, row in enumerate(coeffs):
            if np.count_nonzero(row) != 1 or row[tau[b]] != 1:
                raise ValueError("commutant basis is not permuted by transpose")
    else:
        raise ValueError(f"unknown method {method!r}")
    labels = []
    for pv in pivots:
        a, b = divmod(pv, N)
        labels.append(f"{space.word_label(space.words[a])}|{space.word_label(space.words[b])}")
    base = algebra_from_matrices(rep, pivots, p, labels, name=f"S({n},{d})")
    pivot_index = {pv: c for c, pv in enumerate(pivots)}
    xi = {}
    for alpha in all_weights:
        alpha = tuple(alpha)
        word = tuple(x for x, a in enumerate(alpha) for _ in range(a))
        pos = space.index[word] * N + space.index[word]
        # the diagonal projector onto a weight space contains its first diagonal entry
        vec = np.zeros(dim, dtype=DTYPE)
        vec[pivot_index[pos]] = 1
        xi[alpha] = vec
    alg = SchurAlgebra(base, space, rep, pivots, tau, xi, [tuple(a) for a in all_weights])
    if weights is None:
        expected = comb(n * n + d - 1, d)
        if alg.dim != expected:
            raise AssertionError(f"dim S({n},{d}) = {alg.dim}, expected {expected}")
    return alg


def weight_idempotents(alg: SchurAlgebra) -> dict:
    return alg.weight_idempotents()


def transpose_antiauto(alg: SchurAlgebra):
    """The map x -> tau(x) on algebra coordinates."""
    return alg.apply_tau


# -- Weyl and simple modules -------------------------------------------------

@dataclass
class WeylData:
    lam: Partition
    module: AModule
    embedding: np.ndarray  # basis of the module as rows in tensor coordinates
    pivots: list[int]
    highest_weight: np.ndarray  # coordinates of the generator in the module basis
    vector: np.ndarray  # the generator in tensor coordinates
    gram: PFMatrix

    def radical(self) -> tuple[np.ndarray, list[int]]:
        """Kernel of the contravariant form, in module coordinates."""
        ker = kernel_array(self.gram.array, self.module.p)
        return row_basis(ker, self.module.p, self.module.dim)


def highest_weight_vector(alg: SchurAlgebra, lam: Partition) -> np.ndarray:
    """Column antisymmetrization of the row-reading tensor of shape lam."""
    space = alg.space
    p = alg.p
    cells = list(lam.cells())
    pos = {c: k for k, c in enumerate(cells)}
    base = [i for i, _ in cells]
    columns = [[pos[(i, j)] for i in range(len(lam)) if lam[i] > j] for j in range(lam[0] if lam else 0)]
    v = np.zeros(space.dim, dtype=DTYPE)
    for perms in itertools.product(*(itertools.permutations(c) for c in columns)):
        sigma = list(range(space.d))
        sign = 1
        for col, perm in zip(columns, perms):
            for src, dst in zip(col, perm):
                sigma[src] = dst
            sign *= _perm_sign([col.index(x) for x in perm])
        word = space.act(sigma, tuple(base))
        v[space.index[word]] += sign
    return v % p


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for k in range(len(perm)):
        if seen[k]:
            continue
        length = 0
        j = k
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _resolve(alg, lam, n, d, p, weights):
    lam = Partition(lam)
    if alg is None:
        if lam.weight != d:
            raise ValueError(f"{lam} does not have weight {d}")
        alg = schur_algebra(n, d, p, weights)
    if len(lam) > alg.n:
        raise ValueError(f"{lam} has more than n={alg.n} rows")
    if lam.weight != alg.d:
        raise ValueError(f"{lam} does not have weight {alg.d}")
    return lam, alg


def weyl_module(lam, n: int | None = None, d: int | None = None, p: int | None = None,
                alg: SchurAlgebra | None = None, weights=None) -> WeylData:
    """Delta(lam) as the cyclic submodule of tensor space on the
    antisymmetrized highest-weight tensor, with its contravariant form."""
    lam, alg = _resolve(alg, lam, n, d, p, weights)
    p = alg.p
    tensor = alg.tensor_module()
    v = highest_weight_vector(alg, lam)
    basis, piv = tensor.generated(v)
    module = tensor.submodule(basis, piv, label=f"Delta{lam}")
    hw = v[piv]
    # a_k with a_k v = u_k, then <u_k, u_l> = coefficient of v in tau(a_k) u_l
    images = np.einsum("bij,j->ib", alg.rep, v) % p
    a = solve_array(images, basis.T, p)
    if a is None:
        raise AssertionError("Weyl module basis not reachable from the generator")
    tau_a = np.zeros_like(a)
    tau_a[alg.tau] = a
    j0 = int(np.flatnonzero(v)[0])
    r = alg.rep[:, j0, :] @ basis.T % p
    gram = (tau_a.T @ r) % p * inv_mod(v[j0], p) % p
    return WeylData(lam, module, basis, piv, hw, v, PFMatrix(gram, p))


def simple_from_weyl(w: WeylData) -> AModule:
    rad, rpiv = w.radical()
    simple, _ = w.module.quotient(rad, rpiv, label=f"L{w.lam}")
    return simple


def simple_module(lam, n: int | None = None, d: int | None = None, p: int | None = None,
                  alg: SchurAlgebra | None = None, weights=None) -> AModule:
    """L(lam): the Weyl module modulo the radical of its contravariant form."""
    return simple_from_weyl(weyl_module(lam, n, d, p, alg=alg, weights=weights))


def twist_label(lam, p: int, i: int) -> Partition:
    """Label of the i-th Frobenius twist of L(lam) (Steinberg)."""
    return Partition(lam).scale(p**i)


def kuhn_dual(m: AModule, alg: SchurAlgebra | None = None) -> AModule:
    """Dual space with b acting as the transpose of tau(b)."""
    alg = alg or m.algebra
    if not isinstance(alg, SchurAlgebra):
        raise TypeError("Kuhn duality needs the transpose anti-automorphism of a Schur algebra")
    act = np.transpose(m.action[alg.tau], (0, 2, 1))
    return AModule(m.algebra, act, label=f"{m.label}#")


@dataclass
class IsoResult:
    """Outcome of an isomorphism search; ``isomorphic`` is None when unknown."""

    isomorphic: bool | None
    witness: PFMatrix | None = None
    hom_dim: int = 0

    def __bool__(self):
        raise TypeError("IsoResult is three-valued; inspect .isomorphic")


def is_isomorphic(m: AModule, n: AModule, sweep_cap: int = ISO_SWEEP_CAP, tries: int = 64, seed: int = 0) -> IsoResult:
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if m.dim != n.dim:
        return IsoResult(False)
    p = m.p
    if m.dim == 0:
        return IsoResult(True, PFMatrix(np.zeros((0, 0), dtype=DTYPE), p))
    homs = hom_space(m, n)
    h = homs.shape[0]
    if h == 0:
        return IsoResult(False, hom_dim=0)
    if h <= sweep_cap:
        for coeffs in itertools.product(range(p), repeat=h):
            if not any(coeffs):
                continue
            x = np.tensordot(np.array(coeffs, dtype=DTYPE), homs, axes=1) % p
            if rank_array(x, p) == m.dim:
                return IsoResult(True, PFMatrix(x, p), h)
        return IsoResult(False, hom_dim=h)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        x = np.tensordot(rng.integers(0, p, size=h), homs, axes=1) % p
        if rank_array(x, p) == m.dim:
            return IsoResult(True, PFMatrix(x, p), h)
    return IsoResult(None, hom_dim=h)


def kostka_profile(w: WeylData, alg: SchurAlgebra) -> dict[tuple[int, ...], int]:
    """dim xi_alpha Delta(lam) for every weight alpha of the algebra."""
    return {alpha: w.module.weight_dim(vec) for alpha, vec in alg.xi.items()}
