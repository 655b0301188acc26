"""Radicals, projective indecomposables, minimal projective resolutions
and Ext dimension tables over a finite-dimensional algebra."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .algebra import AModule, ResourceError, StructAlgebra
from .partitions import Partition, enumerate_partitions, parse_partition
from .primefield import (
    DTYPE,
    PFMatrix,
    kernel_array,
    rank_array,
    reduce_modulo,
    row_basis,
    rref_array,
    solve_array,
)
from .schur import SchurAlgebra, schur_algebra, simple_module, twist_label

MAX_RESOLUTION_DIM = 60_000


class IncompleteSimplesError(ValueError):
    """The given simple modules do not account for all of A / rad A."""


def _annihilator_system(simples) -> np.ndarray:
    """Rows: linear functionals on A whose common kernel is the intersection of annihilators."""
    rows = []
    for s in simples:
        if s.dim:
            rows.append(s.action.reshape(s.action.shape[0], -1).T)
    return np.vstack(rows) if rows else np.zeros((0, 0), dtype=DTYPE)


def radical(alg: StructAlgebra, simples) -> tuple[np.ndarray, list[int]]:
    """rad A as the intersection of the annihilators of the simples.

    Returns a reduced echelon basis (rows in algebra coordinates).
    """
    simples = list(simples)
    system = _annihilator_system(simples)
    if system.size == 0:
        basis = np.eye(alg.dim, dtype=DTYPE)
        return basis, list(range(alg.dim))
    ker = kernel_array(system % alg.p, alg.p)
    basis, piv = row_basis(ker, alg.p, alg.dim)
    expected = alg.dim - sum(s.dim**2 for s in simples)
    if basis.shape[0] != expected:
        raise IncompleteSimplesError(
            f"dim rad = {basis.shape[0]} but dim A - sum (dim L)^2 = {expected}: simple list incomplete or not pairwise distinct"
        )
    if not _looks_nil(alg, basis):
        raise IncompleteSimplesError("common annihilator of the simples is not nilpotent: simple list incomplete")
    return basis, piv


def _looks_nil(alg: StructAlgebra, basis, tries: int = 16, seed: int = 0) -> bool:
    """Random elements of the ideal spanned by ``basis`` act nilpotently.

    A missing simple leaves a non-nilpotent block in the common annihilator,
    which a random element hits with probability at least 1 - 1/p.
    """
    p = alg.p
    if basis.shape[0] == 0:
        return True
    rng = np.random.default_rng(seed)
    steps = max(1, int(np.ceil(np.log2(alg.dim + 1))))
    for _ in range(tries):
        x = rng.integers(0, p, size=basis.shape[0]) @ basis % p
        m = alg.left_matrix(x).astype(np.float64)
        # entries stay below p, so float products are exact while dim * p^2 < 2^53
        for _ in range(steps):
            m = np.mod(m @ m, p)
        if m.any():
            return False
    return True


def nilpotency_index(alg: StructAlgebra, rad_basis) -> int:
    """Smallest k with rad^k = 0."""
    p = alg.p
    if rad_basis.shape[0] == 0:
        return 1
    power = rad_basis
    k = 1
    while power.shape[0]:
        prods = [alg.mul(x, r) for x in power for r in rad_basis]
        power, _ = row_basis(np.array(prods), p, alg.dim)
        k += 1
        if k > alg.dim + 1:
            raise AssertionError("radical is not nilpotent")
    return k


def lift_idempotent(alg: StructAlgebra, x, max_iter: int = 64) -> np.ndarray:
    """Lift an element idempotent modulo a nilpotent ideal via e -> 3e^2 - 2e^3."""
    p = alg.p
    e = np.asarray(x, dtype=DTYPE) % p
    for _ in range(max_iter):
        e2 = alg.mul(e, e)
        if np.array_equal(e2, e):
            return e
        e3 = alg.mul(e2, e)
        e = (3 * e2 - 2 * e3) % p
    raise AssertionError("idempotent lifting did not converge")


def left_mult_rows(alg: StructAlgebra, rows) -> np.ndarray:
    """Array (b, r, dim): basis element b times each row vector."""
    rows = np.asarray(rows, dtype=DTYPE).reshape(-1, alg.dim)
    i, j, k, v = alg.consts
    out = np.zeros((alg.dim, alg.dim, rows.shape[0]), dtype=DTYPE)
    np.add.at(out, (i, k), v[:, None] * rows[:, j].T)
    return np.transpose(out % alg.p, (0, 2, 1))


@dataclass
class PIM:
    label: object
    idempotent: np.ndarray  # e with P = A e
    basis: np.ndarray  # rows in algebra coordinates
    module: AModule

    @property
    def dim(self):
        return self.basis.shape[0]


def _left_ideal(alg: StructAlgebra, e, label) -> PIM:
    p = alg.p
    images = alg.right_matrix(e).T  # rows: b_k e
    basis, piv = row_basis(images, p, alg.dim)
    acts = left_mult_rows(alg, basis)  # (b, r, dim): b * u_r
    coords = acts[:, :, piv]
    module = AModule(alg, np.transpose(coords, (0, 2, 1)), label=f"P{label}")
    return PIM(label, e, basis, module)


class AlgebraStructure:
    """An algebra with its simples, radical, lifted idempotents and PIMs.

    ``simples`` maps labels to absolutely simple modules; the algebra is
    assumed split over F_p (true for Schur algebras).
    """

    def __init__(self, alg: StructAlgebra, simples: dict):
        self.alg = alg
        self.p = alg.p
        self.simples = dict(simples)
        self.labels = list(self.simples)
        self.rad_basis, self.rad_pivots = radical(alg, self.simples.values())
        self.idempotents = self._lift_all()
        self.primitive = {lab: self.idempotents[(lab, 0)] for lab in self.labels}
        self.pims = {lab: _left_ideal(alg, e, lab) for lab, e in self.primitive.items()}

    def _lift_all(self) -> dict:
        """Complete family of orthogonal primitive idempotents, one per
        diagonal matrix unit of each End(L)."""
        alg, p = self.alg, self.p
        system = _annihilator_system(self.simples.values())
        targets, keys = [], []
        for lab, s in self.simples.items():
            for j in range(s.dim):
                t = []
                for lab2, s2 in self.simples.items():
                    block = np.zeros((s2.dim, s2.dim), dtype=DTYPE)
                    if lab2 == lab:
                        block[j, j] = 1
                    t.append(block.reshape(-1))
                targets.append(np.concatenate(t))
                keys.append((lab, j))
        pre = solve_array(system, np.array(targets).T, p)
        if pre is None:
            raise IncompleteSimplesError("A -> End(L) is not surjective; algebra not split")
        out = {}
        f = alg.unit.copy()
        for col, key in enumerate(keys[:-1]):
            y = alg.mul(alg.mul(f, pre[:, col]), f)
            e = lift_idempotent(alg, y)
            out[key] = e
            f = (f - e) % p
        if keys:
            out[keys[-1]] = f
            if not np.array_equal(alg.mul(f, f), f):
                raise AssertionError("complementary idempotent is not idempotent")
        return out

    def radical_elements(self) -> np.ndarray:
        return self.rad_basis

    def top_dim(self, m: AModule) -> int:
        rad_m, _ = m.radical_series_step(self.rad_basis)
        return m.dim - rad_m.shape[0]

    def hom_to_simple_dims(self, m: AModule) -> dict:
        """dim Hom(M, L) for every simple L, read off the top of M."""
        rad_m, rad_piv = m.radical_series_step(self.rad_basis)
        out = {}
        for lab in self.labels:
            e = m.act(self.primitive[lab])
            red = reduce_modulo(rad_m, rad_piv, e.T, self.p)
            out[lab] = rank_array(red, self.p)
        return out

    def check_pim_dimensions(self) -> bool:
        return sum(self.simples[lab].dim * self.pims[lab].dim for lab in self.labels) == self.alg.dim


@dataclass
class Summand:
    label: object
    idempotent: np.ndarray
    basis: np.ndarray  # rows in algebra coordinates spanning A e
    pivots: list[int]
    generator: np.ndarray  # image of e in the module being covered


@dataclass
class Resolution:
    """P_s -> ... -> P_0 -> M -> 0.

    ``summands[k]`` lists the projective summands A e of P_k;
    ``differentials[k]`` is d_k: P_k -> P_{k-1} in the concatenated
    summand bases (d_0 is the augmentation onto M).
    """

    target: AModule
    summands: list[list[Summand]]
    differentials: list[PFMatrix]
    modules: list[AModule]
    kernels: list[np.ndarray]  # im d_{k+1} = ker d_k, rows in P_k coordinates
    minimal: bool
    policy: str = "minimal"
    ext_cocycles: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.summands) - 1

    def multiplicities(self, k: int) -> Counter:
        if k >= len(self.summands):
            return Counter()
        return Counter(s.label for s in self.summands[k])

    def term_dims(self) -> list[int]:
        return [m.dim for m in self.modules]


def _cover(m: AModule, struct: AlgebraStructure, policy: str) -> list[Summand]:
    p = struct.p
    alg = struct.alg
    rad_m, rad_piv = m.radical_series_step(struct.rad_basis)
    out = []
    if policy == "free":
        red = reduce_modulo(rad_m, rad_piv, np.eye(m.dim, dtype=DTYPE), p)
        _, piv = rref_array(red.T, p)
        basis = np.eye(alg.dim, dtype=DTYPE)
        for c in piv:
            gen = np.zeros(m.dim, dtype=DTYPE)
            gen[c] = 1
            out.append(Summand("free", alg.unit, basis, list(range(alg.dim)), gen))
        return out
    for lab in struct.labels:
        e = m.act(struct.primitive[lab])
        red = reduce_modulo(rad_m, rad_piv, e.T, p)
        _, piv = rref_array(red.T, p)
        pim = struct.pims[lab]
        pim_piv = _pivots_of(pim.basis)
        gens = [e[:, c] for c in piv]
        if policy == "redundant" and rad_m.shape[0]:
            extra = m.act(struct.primitive[lab]) @ rad_m.T % p
            nz = [c for c in range(extra.shape[1]) if extra[:, c].any()]
            if nz:
                gens.append(extra[:, nz[0]])
        for g in gens:
            out.append(Summand(lab, struct.primitive[lab], pim.basis, pim_piv, g % p))
    return out


def _pivots_of(basis):
    return [int(np.flatnonzero(row)[0]) for row in basis]


def _summand_module(struct: AlgebraStructure, s: Summand, cache: dict) -> AModule:
    key = s.label
    if key not in cache:
        if s.label == "free":
            alg = struct.alg
            cache[key] = AModule(alg, np.transpose(left_mult_rows(alg, np.eye(alg.dim, dtype=DTYPE)), (0, 2, 1)), "A")
        else:
            cache[key] = struct.pims[s.label].module
    return cache[key]


def _direct_sum(alg, mods) -> AModule:
    total = sum(x.dim for x in mods)
    act = np.zeros((alg.dim, total, total), dtype=DTYPE)
    pos = 0
    for x in mods:
        act[:, pos : pos + x.dim, pos : pos + x.dim] = x.action
        pos += x.dim
    return AModule(alg, act)


def resolve(m: AModule, s_max: int, struct: AlgebraStructure, policy: str = "minimal",
            max_total_dim: int = MAX_RESOLUTION_DIM) -> Resolution:
    """Projective resolution of M up to P_{s_max}.

    ``policy="minimal"`` covers exactly the top (a minimal resolution);
    ``"redundant"`` adds one superfluous summand per simple wherever the
    radical allows, and ``"free"`` uses free modules; the latter two serve
    as independent oracles.
    """
    alg, p = struct.alg, struct.p
    cache: dict = {}
    current = m
    embed = None  # basis of `current` inside the previous term
    summands, diffs, modules, kernels = [], [], [], []
    total = 0
    for k in range(s_max + 1):
        terms = _cover(current, struct, policy) if current.dim else []
        mods = [_summand_module(struct, s, cache) for s in terms]
        pk = _direct_sum(alg, mods)
        total += pk.dim
        if total > max_total_dim:
            raise ResourceError("resolution", total, max_total_dim, "max_total_dim")
        # cover map: basis element x of A e in slot l -> x . generator_l
        cols = []
        for s in terms:
            acts = np.tensordot(s.basis, current.action, axes=1) % p  # (r, m, m)
            cols.append((acts @ s.generator % p).T)
        phi = np.hstack(cols) if cols else np.zeros((current.dim, 0), dtype=DTYPE)
        if rank_array(phi, p) != current.dim:
            raise AssertionError(f"cover at stage {k} is not surjective")
        d = phi if embed is None else (embed.T @ phi) % p
        diffs.append(PFMatrix(d, p) if d.size else PFMatrix(np.zeros(d.shape, dtype=DTYPE), p))
        summands.append(terms)
        modules.append(pk)
        ker = kernel_array(phi, p) if pk.dim else np.zeros((0, 0), dtype=DTYPE)
        kb, kpiv = row_basis(ker, p, pk.dim) if ker.shape[0] else (np.zeros((0, pk.dim), dtype=DTYPE), [])
        kernels.append(kb)
        current = pk.submodule(kb, kpiv) if kb.shape[0] else AModule(alg, np.zeros((alg.dim, 0, 0), dtype=DTYPE))
        embed = kb
    res = Resolution(m, summands, diffs, modules, kernels, minimal=False, policy=policy)
    res.minimal = policy == "minimal" and check_minimal(res, struct)
    return res


def minimal_resolution(m: AModule, s_max: int, struct: AlgebraStructure) -> Resolution:
    return resolve(m, s_max, struct, "minimal")


def check_exact(res: Resolution) -> bool:
    """d_k d_{k+1} = 0 and rank bookkeeping: im d_{k+1} = ker d_k."""
    p = res.target.p
    for k in range(len(res.differentials) - 1):
        dk = res.differentials[k].array
        dk1 = res.differentials[k + 1].array
        if dk.size and dk1.size and (dk @ dk1 % p).any():
            return False
        dim_pk = res.modules[k].dim
        if rank_array(dk1, p) != dim_pk - rank_array(dk, p):
            return False
    d0 = res.differentials[0].array
    return rank_array(d0, p) == res.target.dim


def check_minimal(res: Resolution, struct: AlgebraStructure) -> bool:
    """Every syzygy lies in rad(P_k)."""
    p = struct.p
    for pk, kb in zip(res.modules, res.kernels):
        if kb.shape[0] == 0:
            continue
        rad_p, _ = pk.radical_series_step(struct.rad_basis)
        if rank_array(np.vstack([rad_p, kb]), p) != rad_p.shape[0]:
            return False
    return True


def hom_complex_cohomology(res: Resolution, n: AModule, struct: AlgebraStructure) -> list[int]:
    """dim H^s Hom_A(P_*, N) for s = 0..length, from any projective resolution."""
    p = struct.p
    homs = []  # per k: basis of Hom(P_k, N) as columns in N^{#summands}
    for terms in res.summands:
        blocks = []
        for s in terms:
            blocks.append(n.act(s.idempotent))
        homs.append(blocks)
    # differential on Hom: phi -> phi . d_{k+1}; generator j of P_{k+1} maps to
    # sum_l y_jl in slot l, and phi(y_jl) = rho_N(y_jl) phi_l
    def hom_basis(blocks):
        total = n.dim * len(blocks)
        cols = []
        for idx, e in enumerate(blocks):
            b, _ = row_basis(e.T, p, n.dim)
            for row in b:
                v = np.zeros(total, dtype=DTYPE)
                v[idx * n.dim : (idx + 1) * n.dim] = row
                cols.append(v)
        if not cols:
            return np.zeros((total, 0), dtype=DTYPE)
        return np.array(cols, dtype=DTYPE).T

    bases = [hom_basis(b) for b in homs]
    deltas = []
    for k in range(len(res.summands) - 1):
        src, dst = res.summands[k], res.summands[k + 1]
        kb = res.kernels[k]
        delta = np.zeros((n.dim * len(dst), n.dim * len(src)), dtype=DTYPE)
        offsets = np.cumsum([0] + [s.basis.shape[0] for s in src])
        for j, sj in enumerate(dst):
            # generator image in P_k coordinates
            g = sj.generator @ kb % p if kb.shape[0] else np.zeros(offsets[-1], dtype=DTYPE)
            for l, sl in enumerate(src):
                y = g[offsets[l] : offsets[l + 1]] @ sl.basis % p  # element of A e_l
                delta[j * n.dim : (j + 1) * n.dim, l * n.dim : (l + 1) * n.dim] = n.act(y)
        deltas.append(delta)
    dims = []
    for k in range(len(res.summands)):
        b = bases[k]
        hom_dim = b.shape[1]
        rk_out = rank_array(deltas[k] @ b % p, p) if k < len(deltas) and hom_dim else 0
        rk_in = rank_array(deltas[k - 1] @ bases[k - 1] % p, p) if k > 0 and bases[k - 1].shape[1] else 0
        dims.append(hom_dim - rk_out - rk_in)
    return dims


def ext_dims_from_minimal(res: Resolution, n: AModule, struct: AlgebraStructure) -> list[int]:
    """dim Ext^s(M, N) = dim Hom(P_s, N) for a minimal resolution and simple N."""
    out = []
    for terms in res.summands:
        out.append(sum(rank_array(n.act(s.idempotent), struct.p) for s in terms))
    return out


# -- Ext tables over Schur algebras ------------------------------------------

@dataclass
class ExtTable:
    p: int
    d: int
    i: int
    lam: Partition
    rows: dict  # mu -> list of dims for s = 0..s_max
    n: int = 0
    algebra_dim: int = 0
    truncated: bool = True

    @property
    def duality_degree(self) -> int:
        return 2 * self.d * (self.p**self.i - 1)

    @property
    def s_max(self) -> int:
        return len(next(iter(self.rows.values()))) - 1 if self.rows else -1

    @property
    def source(self) -> Partition:
        return twist_label(self.lam, self.p, self.i)

    def entry(self, mu, s) -> int:
        row = self.rows[Partition(mu)]
        return row[s] if 0 <= s < len(row) else 0

    def palindrome_failures(self) -> list[tuple]:
        top = self.duality_degree
        bad = []
        for mu, row in self.rows.items():
            for s in range(top + 1):
                if self.entry(mu, s) != self.entry(mu, top - s):
                    bad.append((mu, s, self.entry(mu, s), self.entry(mu, top - s)))
        return bad

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "i": self.i,
            "lambda": str(self.lam),
            "duality_degree": self.duality_degree,
            "rows": [{"mu": str(mu), "dims": list(row)} for mu, row in self.rows.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data) -> "ExtTable":
        rows = {parse_partition(r["mu"]): list(r["dims"]) for r in data["rows"]}
        return cls(data["p"], data["d"], data["i"], parse_partition(data["lambda"]), rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["mu"] + [f"s{s}" for s in range(self.s_max + 1)])
        for mu, row in self.rows.items():
            writer.writerow([str(mu)] + list(row))
        return buf.getvalue()


_STRUCT_CACHE: dict = {}


def schur_structure(n: int, D: int, p: int, truncated: bool = True, max_tensor_dim=None) -> AlgebraStructure:
    """Simples, radical and PIMs of S(n, D) (or its partition-weight truncation)."""
    key = (n, D, p, truncated, max_tensor_dim)
    if key not in _STRUCT_CACHE:
        kwargs = {} if max_tensor_dim is None else {"max_tensor_dim": max_tensor_dim}
        alg = schur_algebra(n, D, p, weights="partitions" if truncated else None, **kwargs)
        simples = {mu: simple_module(mu, alg=alg) for mu in enumerate_partitions(D, max_rows=n)}
        _STRUCT_CACHE[key] = AlgebraStructure(alg, simples)
    return _STRUCT_CACHE[key]


def default_s_max(d: int, p: int, i: int) -> int:
    return 2 * d * (p**i - 1) + 1


def ext_dims(lam, p: int, d: int, i: int, s_max: int | None = None, n: int | None = None,
             truncated: bool = True, max_tensor_dim=None, oracle: bool = False):
    """Ext^s(L(p^i lam), L(mu)) for all mu of weight d p^i, s = 0..s_max.

    With ``oracle`` the table is also recomputed as Hom-complex cohomology
    of a deliberately non-minimal resolution and both are returned.
    """
    lam = Partition(lam)
    if lam.weight != d:
        raise ValueError(f"{lam} does not have weight {d}")
    D = d * p**i
    n = D if n is None else n
    s_max = default_s_max(d, p, i) if s_max is None else s_max
    struct = schur_structure(n, D, p, truncated, max_tensor_dim)
    source = twist_label(lam, p, i)
    res = minimal_resolution(struct.simples[source], s_max, struct)
    rows = {}
    for mu in struct.labels:
        rows[mu] = [res.multiplicities(s)[mu] for s in range(s_max + 1)]
    table = ExtTable(p, d, i, lam, rows, n=n, algebra_dim=struct.alg.dim, truncated=truncated)
    if not oracle:
        return table
    # one extra term so the last cohomology group sees its outgoing differential;
    # free resolutions grow geometrically, so the oracle uses redundant covers
    other = resolve(struct.simples[source], s_max + 1, struct, "redundant")
    orows = {mu: hom_complex_cohomology(other, struct.simples[mu], struct)[: s_max + 1] for mu in struct.labels}
    return table, ExtTable(p, d, i, lam, orows, n=n, algebra_dim=struct.alg.dim, truncated=truncated), res, other
