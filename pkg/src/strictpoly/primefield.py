"""Exact dense linear algebra over the prime field F_p.

The array-level helpers (``rref_array``, ``kernel_array``, ...) work on
plain ``numpy.int64`` arrays and are what the module theory uses
internally. ``PFMatrix`` is the immutable public value type on top.
"""

from __future__ import annotations

import numpy as np

DTYPE = np.int64


def as_array(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=DTYPE) % p


def inv_mod(x: int, p: int) -> int:
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(x, -1, p)


def rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod p and its pivot columns."""
    a = np.array(a, dtype=DTYPE) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        if a[r, c] != 1:
            a[r] = a[r] * inv_mod(a[r, c], p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def row_basis(vectors: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced echelon basis (as rows) of the span of the given row vectors."""
    vectors = np.asarray(vectors, dtype=DTYPE)
    if vectors.ndim == 1:
        vectors = vectors.reshape(1, -1)
    if vectors.shape[0] == 0:
        width = vectors.shape[1] if ncols is None else ncols
        return np.zeros((0, width), dtype=DTYPE), []
    r, piv = rref_array(vectors, p)
    return r[: len(piv)], piv


def rank_array(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref_array(a, p)[1])


def kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as the rows of the returned array."""
    a = np.asarray(a, dtype=DTYPE)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=DTYPE)
    r, piv = rref_array(a, p)
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    out = np.zeros((len(free), cols), dtype=DTYPE)
    out[np.arange(len(free)), free] = 1
    if piv and free:
        out[:, piv] = (-r[: len(piv)][:, free].T) % p
    return out


def solve_array(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a x = b (b may be a matrix of right-hand sides)."""
    a = np.asarray(a, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug, piv = rref_array(np.hstack([a, b]), p)
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, b.shape[1]), dtype=DTYPE)
    for row, c in enumerate(piv):
        x[c] = aug[row, n:]
    return x[:, 0] if vec else x


def coords_in(basis: np.ndarray, pivots: list[int], vectors: np.ndarray, p: int, check: bool = True) -> np.ndarray:
    """Coordinates of row vectors w.r.t. a reduced echelon row basis.

    Reading off pivot entries is enough; with ``check`` the reconstruction
    is verified so vectors outside the span raise.
    """
    vectors = np.asarray(vectors, dtype=DTYPE)
    c = vectors[..., pivots] % p
    if check and not np.array_equal((c @ basis) % p, vectors % p):
        raise ValueError("vector not in the span of the basis")
    return c


def reduce_modulo(basis: np.ndarray, pivots: list[int], vectors: np.ndarray, p: int) -> np.ndarray:
    """Subtract the span of ``basis`` so every pivot entry becomes zero."""
    vectors = np.asarray(vectors, dtype=DTYPE)
    if not pivots:
        return vectors % p
    return (vectors - vectors[..., pivots] @ basis) % p


def inverse_array(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug, piv = rref_array(np.hstack([a, np.eye(n, dtype=DTYPE)]), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return aug[:, n:]


class PFMatrix:
    """An immutable matrix over F_p."""

    __slots__ = ("_a", "p")

    def __init__(self, entries, p: int):
        a = np.array(entries, dtype=DTYPE)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("PFMatrix needs a 2-d array")
        a %= p
        a.setflags(write=False)
        self._a = a
        self.p = p

    @classmethod
    def identity(cls, n, p):
        return cls(np.eye(n, dtype=DTYPE), p)

    @classmethod
    def zeros(cls, rows, cols, p):
        return cls(np.zeros((rows, cols), dtype=DTYPE), p)

    @classmethod
    def random(cls, rows, cols, p, rng=None):
        rng = np.random.default_rng(rng)
        return cls(rng.integers(0, p, size=(rows, cols)), p)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    def __eq__(self, other):
        return isinstance(other, PFMatrix) and self.p == other.p and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash((self.p, self._a.shape, self._a.tobytes()))

    def __repr__(self):
        return f"PFMatrix(p={self.p}, {self._a.tolist()})"

    def _same_field(self, other):
        if self.p != other.p:
            raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __matmul__(self, other):
        return matmul(self, other)

    def __add__(self, other):
        self._same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return PFMatrix(self._a + other._a, self.p)

    def __sub__(self, other):
        self._same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return PFMatrix(self._a - other._a, self.p)

    def scale(self, c: int):
        return PFMatrix(self._a * c, self.p)

    @property
    def T(self):
        return transpose(self)

    def rank(self) -> int:
        return rank_array(self._a, self.p)

    def is_zero(self) -> bool:
        return not self._a.any()


def matmul(a: PFMatrix, b: PFMatrix) -> PFMatrix:
    a._same_field(b)
    if a.cols != b.rows:
        raise ValueError(f"cannot compose {a.shape} with {b.shape}")
    return PFMatrix(a.array @ b.array, a.p)


def transpose(a: PFMatrix) -> PFMatrix:
    return PFMatrix(a.array.T, a.p)


def kron(a: PFMatrix, b: PFMatrix) -> PFMatrix:
    a._same_field(b)
    return PFMatrix(np.kron(a.array, b.array), a.p)


def block(rows_of_blocks, p: int) -> PFMatrix:
    """Assemble a block matrix from a nested list of PFMatrix."""
    arrays = [[m.array for m in row] for row in rows_of_blocks]
    return PFMatrix(np.block(arrays), p)


def direct_sum(mats, p: int) -> PFMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=DTYPE)
    r = c = 0
    for m in mats:
        out[r : r + m.rows, c : c + m.cols] = m.array
        r += m.rows
        c += m.cols
    return PFMatrix(out, p)


def rref(m: PFMatrix) -> tuple[PFMatrix, int, list[int]]:
    r, piv = rref_array(m.array, m.p)
    return PFMatrix(r, m.p), len(piv), piv


def kernel_basis(m: PFMatrix) -> PFMatrix:
    """Matrix whose columns form a basis of ker m."""
    k = kernel_array(m.array, m.p)
    return PFMatrix(k.T, m.p)


def solve(m: PFMatrix, b) -> PFMatrix | None:
    """A solution x of m x = b, or None when b is outside the column span."""
    barr = b.array if isinstance(b, PFMatrix) else np.asarray(b, dtype=DTYPE)
    if barr.ndim == 1:
        barr = barr.reshape(-1, 1)
    if barr.shape[0] != m.rows:
        raise ValueError(f"right-hand side has {barr.shape[0]} rows, matrix has {m.rows}")
    x = solve_array(m.array, barr, m.p)
    return None if x is None else PFMatrix(x, m.p)


def inverse(m: PFMatrix) -> PFMatrix:
    return PFMatrix(inverse_array(m.array, m.p), m.p)
