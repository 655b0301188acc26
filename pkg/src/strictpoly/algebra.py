"""Finite-dimensional algebras by structure constants, and their modules."""

from __future__ import annotations

import json
import numpy as np
from scipy import sparse

from .primefield import DTYPE, kernel_array, rank_array, row_basis, reduce_modulo


class ResourceError(RuntimeError):
    """A construction would exceed a configured size cap."""

    def __init__(self, what: str, size: int, cap: int, name: str = "cap"):
        super().__init__(f"{what} needs size {size}, above {name}={cap}")
        self.size = size
        self.cap = cap
        self.name = name


DENSE_REGULAR_CAP = 220


class StructAlgebra:
    """An associative unital algebra over F_p with a distinguished basis.

    Structure constants are kept sparse as parallel arrays ``(i, j, k, v)``
    meaning ``b_i * b_j`` has coefficient ``v`` on ``b_k``.
    """

    def __init__(self, p: int, labels, consts, unit, degrees=None, name=""):
        self.p = p
        self.labels = list(labels)
        i, j, k, v = (np.asarray(x, dtype=DTYPE) for x in consts)
        keep = (v % p) != 0
        self.consts = (i[keep], j[keep], k[keep], v[keep] % p)
        self.unit = np.asarray(unit, dtype=DTYPE) % p
        self.degrees = None if degrees is None else [int(x) for x in degrees]
        self.name = name
        self._left = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"<StructAlgebra {self.name or ''} dim={self.dim} over F_{self.p}>"

    def basis_vector(self, k: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=DTYPE)
        e[k] = 1
        return e

    def mul(self, x, y) -> np.ndarray:
        i, j, k, v = self.consts
        w = (np.asarray(x, dtype=DTYPE)[i] * np.asarray(y, dtype=DTYPE)[j] % self.p) * v
        out = np.zeros(self.dim, dtype=DTYPE)
        np.add.at(out, k, w)
        return out % self.p

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x*y acting on coordinate columns."""
        i, j, k, v = self.consts
        m = np.zeros((self.dim, self.dim), dtype=DTYPE)
        np.add.at(m, (k, j), np.asarray(x, dtype=DTYPE)[i] * v)
        return m % self.p

    def right_matrix(self, y) -> np.ndarray:
        """Matrix of x -> x*y acting on coordinate columns."""
        i, j, k, v = self.consts
        m = np.zeros((self.dim, self.dim), dtype=DTYPE)
        np.add.at(m, (k, i), np.asarray(y, dtype=DTYPE)[j] * v)
        return m % self.p

    def left_regular(self) -> np.ndarray:
        """Stack of left multiplication matrices of all basis elements."""
        if self._left is None:
            if self.dim > DENSE_REGULAR_CAP:
                raise ResourceError("dense regular representation", self.dim, DENSE_REGULAR_CAP, "DENSE_REGULAR_CAP")
            i, j, k, v = self.consts
            m = np.zeros((self.dim, self.dim, self.dim), dtype=DTYPE)
            np.add.at(m, (i, k, j), v)
            self._left = m % self.p
        return self._left

    def power(self, x, n: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def table(self) -> dict:
        i, j, k, v = self.consts
        out: dict = {}
        for a, b, c, val in zip(i.tolist(), j.tolist(), k.tolist(), v.tolist()):
            out.setdefault((a, b), {})[c] = val
        return out

    def check_associativity(self, triples=None) -> bool:
        """Check (ab)c = a(bc) on all basis triples, or on the given ones."""
        if triples is not None:
            for a, b, c in triples:
                ea, eb, ec = (self.basis_vector(t) for t in (a, b, c))
                if not np.array_equal(self.mul(self.mul(ea, eb), ec), self.mul(ea, self.mul(eb, ec))):
                    return False
            return True
        n, p = self.dim, self.p
        i, j, k, v = self.consts
        # rows k, columns (c, m): C[k, c, m]
        by_first = sparse.csr_matrix((v, (i, j * n + k)), shape=(n, n * n))
        # rows (b, c), columns k: C[b, c, k]
        by_pair = sparse.csr_matrix((v, (i * n + j, k)), shape=(n * n, n))
        for a in range(n):
            sel = i == a
            ca = sparse.csr_matrix((v[sel], (j[sel], k[sel])), shape=(n, n))
            lhs = (ca @ by_first).tocoo()
            rhs = (by_pair @ ca).tocoo()
            left = _mod_entries(lhs.row * n * n + lhs.col, lhs.data, p)
            right = _mod_entries(rhs.row * n + rhs.col, rhs.data, p)
            if left != right:
                return False
        return True

    def check_unit(self) -> bool:
        return all(
            np.array_equal(self.mul(self.unit, e), e) and np.array_equal(self.mul(e, self.unit), e)
            for e in (self.basis_vector(k) for k in range(self.dim))
        )

    def is_graded(self) -> bool:
        """Products of homogeneous basis elements land in the summed degree."""
        if self.degrees is None:
            return False
        i, j, k, _ = self.consts
        deg = np.asarray(self.degrees)
        return bool(np.all(deg[i] + deg[j] == deg[k]))

    def to_dict(self) -> dict:
        i, j, k, v = self.consts
        out = {
            "p": self.p,
            "name": self.name,
            "basis": [str(x) for x in self.labels],
            "unit": self.unit.tolist(),
            "structure_constants": [list(t) for t in zip(i.tolist(), j.tolist(), k.tolist(), v.tolist())],
        }
        if self.degrees is not None:
            out["degrees"] = self.degrees
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data) -> "StructAlgebra":
        triples = data["structure_constants"]
        cols = list(zip(*triples)) if triples else ([], [], [], [])
        return cls(data["p"], data["basis"], cols, data["unit"], data.get("degrees"), data.get("name", ""))


def _mod_entries(flat, data, p) -> dict:
    out: dict = {}
    for f, x in zip(flat.tolist(), data.tolist()):
        out[f] = (out.get(f, 0) + x) % p
    return {f: x for f, x in out.items() if x}


def algebra_from_matrices(mats: np.ndarray, pivots, p: int, labels=None, name="") -> StructAlgebra:
    """Algebra spanned by matrices forming a reduced echelon basis.

    ``pivots[c]`` is the flat position where basis matrix c has a 1 and
    every other basis matrix a 0, so coefficients of a product are read
    off at the pivot positions.
    """
    dim, n, _ = mats.shape
    rows = np.array([pv // n for pv in pivots])
    cols = np.array([pv % n for pv in pivots])
    r1 = mats[:, rows, :]  # (a, c, J) = E_a[I_c, J]
    r2 = mats[:, :, cols]  # (b, J, c) = E_b[J, K_c]
    c = np.einsum("acj,bjc->abc", r1, r2) % p
    i, j, k = np.nonzero(c)
    flat = mats.reshape(dim, -1)
    ident = np.eye(n, dtype=DTYPE).reshape(-1)
    unit = ident[list(pivots)]
    if not np.array_equal(unit @ flat % p, ident % p):
        raise ValueError("the identity is not in the span of the basis")
    labels = labels if labels is not None else list(range(dim))
    return StructAlgebra(p, labels, (i, j, k, c[i, j, k]), unit, name=name)


class AModule:
    """A left module: one action matrix (acting on columns) per basis element."""

    def __init__(self, algebra: StructAlgebra, action, label=""):
        self.algebra = algebra
        self.action = np.asarray(action, dtype=DTYPE) % algebra.p
        if self.action.ndim != 3 or self.action.shape[0] != algebra.dim:
            raise ValueError("need one square action matrix per basis element")
        self.label = label

    @property
    def p(self):
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def __repr__(self):
        return f"<AModule {self.label} dim={self.dim}>"

    def act(self, x) -> np.ndarray:
        """Action matrix of an algebra element given in coordinates."""
        return np.tensordot(np.asarray(x, dtype=DTYPE), self.action, axes=1) % self.p

    def check(self) -> bool:
        """Action respects the structure constants and the unit."""
        p = self.p
        m = self.dim
        if not np.array_equal(self.act(self.algebra.unit), np.eye(m, dtype=DTYPE)):
            return False
        i, j, k, v = self.algebra.consts
        n = self.algebra.dim
        lhs = np.einsum("aij,bjk->abik", self.action, self.action) % p
        rhs = np.zeros((n, n, m, m), dtype=DTYPE)
        chunk = max(1, 2_000_000 // max(1, m * m))
        for s in range(0, len(v), chunk):
            sl = slice(s, s + chunk)
            np.add.at(rhs, (i[sl], j[sl]), v[sl, None, None] * self.action[k[sl]])
        return bool(np.array_equal(lhs, rhs % p))

    def span_images(self, vectors) -> np.ndarray:
        """All b * v for basis elements b and the given row vectors, as rows."""
        vectors = np.asarray(vectors, dtype=DTYPE).reshape(-1, self.dim)
        imgs = np.einsum("bij,kj->bki", self.action, vectors) % self.p
        return imgs.reshape(-1, self.dim)

    def generated(self, vectors) -> tuple[np.ndarray, list[int]]:
        """Reduced echelon basis of the submodule generated by row vectors."""
        return row_basis(self.span_images(vectors), self.p, self.dim)

    def submodule(self, basis: np.ndarray, pivots, label="") -> "AModule":
        """Restriction to an invariant subspace given by a reduced echelon basis."""
        basis = np.asarray(basis, dtype=DTYPE)
        if basis.shape[0] == 0:
            return AModule(self.algebra, np.zeros((self.algebra.dim, 0, 0), dtype=DTYPE), label)
        imgs = np.einsum("km,bjm->bkj", basis, self.action) % self.p
        coords = imgs[:, :, pivots]
        recon = np.einsum("bkr,rm->bkm", coords, basis) % self.p
        if not np.array_equal(recon, imgs):
            raise ValueError("subspace is not invariant")
        return AModule(self.algebra, np.transpose(coords, (0, 2, 1)), label)

    def quotient(self, basis: np.ndarray, pivots, label="") -> tuple["AModule", list[int]]:
        """Quotient by an invariant subspace; returns it with the kept coordinates."""
        keep = [c for c in range(self.dim) if c not in set(pivots)]
        cols = np.transpose(self.action[:, :, keep], (0, 2, 1))  # (b, kept, m) images as rows
        red = reduce_modulo(np.asarray(basis, dtype=DTYPE), list(pivots), cols, self.p)
        act = np.transpose(red[:, :, keep], (0, 2, 1))
        return AModule(self.algebra, act, label), keep

    def radical_series_step(self, rad_elements) -> tuple[np.ndarray, list[int]]:
        """Basis of rad(A) * M for a list of algebra elements spanning rad(A)."""
        if len(rad_elements) == 0:
            return np.zeros((0, self.dim), dtype=DTYPE), []
        acts = np.tensordot(np.asarray(rad_elements, dtype=DTYPE), self.action, axes=1) % self.p
        vecs = np.transpose(acts, (0, 2, 1)).reshape(-1, self.dim)
        return row_basis(vecs, self.p, self.dim)

    def direct_sum(self, other: "AModule", label="") -> "AModule":
        m, n = self.dim, other.dim
        act = np.zeros((self.algebra.dim, m + n, m + n), dtype=DTYPE)
        act[:, :m, :m] = self.action
        act[:, m:, m:] = other.action
        return AModule(self.algebra, act, label)

    def weight_dim(self, idempotent) -> int:
        return rank_array(self.act(idempotent), self.p)

    def to_dict(self) -> dict:
        return {"label": self.label, "p": self.p, "dim": self.dim, "action": self.action.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def hom_space(m: AModule, n: AModule, elements=None) -> np.ndarray:
    """Basis of Hom_A(M, N) as an array of shape (h, dim N, dim M).

    Intersects the solution spaces of X rho_M(b) = rho_N(b) X one algebra
    element at a time, so the working system stays small.
    """
    p = m.p
    dm, dn = m.dim, n.dim
    current = np.eye(dm * dn, dtype=DTYPE)  # rows: vec(X), row-major (dn, dm)
    idx = range(m.algebra.dim) if elements is None else elements
    for b in idx:
        if current.shape[0] == 0:
            break
        a_m, a_n = m.action[b], n.action[b]
        xs = current.reshape(-1, dn, dm)
        resid = (np.einsum("hij,jk->hik", xs, a_m) - np.einsum("ij,hjk->hik", a_n, xs)) % p
        resid = resid.reshape(current.shape[0], -1)
        if not resid.any():
            continue
        ker = kernel_array(resid.T, p)
        current = row_basis(ker @ current % p, p, dm * dn)[0] if ker.shape[0] else ker @ current
    return current.reshape(-1, dn, dm)
