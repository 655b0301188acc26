"""Dimensions and graded dimensions of Schur functors, LR coefficients,
and the graded algebras A_i and A_{i,lambda} seen through characters."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod

from .partitions import (
    EMPTY,
    Partition,
    blocks,
    enumerate_partitions,
    is_basic,
    p_core,
)


class GradedDim:
    """A finitely supported map degree -> nonnegative dimension.

    Arithmetic follows Poincare series: ``+`` is direct sum, ``*`` is
    tensor product, ``shift(n)`` moves everything up by ``n``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        for deg, val in dict(coeffs or {}).items():
            if val:
                c[int(deg)] = c.get(int(deg), 0) + int(val)
        self._c = {k: v for k, v in sorted(c.items()) if v}

    @classmethod
    def from_list(cls, values, start=0, step=1):
        return cls({start + step * k: v for k, v in enumerate(values)})

    @classmethod
    def const(cls, n: int):
        return cls({0: n})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, deg):
        return self._c.get(deg, 0)

    def degrees(self):
        return list(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GradedDim.const(other)
        return isinstance(other, GradedDim) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = GradedDim.const(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return GradedDim(out)

    __radd__ = __add__

    def __sub__(self, other):
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) - v
        return GradedDim(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedDim({k: v * other for k, v in self._c.items()})
        out: dict[int, int] = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return GradedDim(out)

    __rmul__ = __mul__

    def shift(self, n: int) -> "GradedDim":
        return GradedDim({k + n: v for k, v in self._c.items()})

    def reflect(self) -> "GradedDim":
        """Degree negation (graded dual)."""
        return GradedDim({-k: v for k, v in self._c.items()})

    def total(self) -> int:
        return sum(self._c.values())

    def top(self) -> int | None:
        return max(self._c) if self._c else None

    def bottom(self) -> int | None:
        return min(self._c) if self._c else None

    def is_palindromic(self, top: int | None = None) -> bool:
        if not self._c:
            return True
        top = self.top() + self.bottom() if top is None else top
        return all(self[top - k] == v for k, v in self._c.items())

    def divmod_exact(self, other: "GradedDim") -> "GradedDim | None":
        """Exact division test: the quotient if ``other`` divides ``self``."""
        if not other._c:
            raise ZeroDivisionError("division by the zero graded dimension")
        rem = dict(self._c)
        lead_deg, lead = other.bottom(), other[other.bottom()]
        quot = {}
        while rem:
            k = min(rem)
            v = rem[k]
            if v % lead:
                return None
            q = v // lead
            deg = k - lead_deg
            quot[deg] = q
            for b, y in other._c.items():
                rem[deg + b] = rem.get(deg + b, 0) - q * y
                if rem[deg + b] == 0:
                    del rem[deg + b]
            if len(quot) > 10_000:
                return None
        return GradedDim(quot)

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self._c.values())

    def to_list(self, start=0, stop=None, step=1) -> list[int]:
        stop = (self.top() or 0) if stop is None else stop
        return [self[k] for k in range(start, stop + 1, step)]

    def to_dict(self) -> dict[str, int]:
        return {str(k): v for k, v in self._c.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        return cls({int(k): v for k, v in data.items()})

    def __repr__(self):
        if not self._c:
            return "0"
        terms = []
        for k, v in self._c.items():
            if k == 0:
                terms.append(str(v))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                terms.append(mono if v == 1 else f"{v}{mono}")
        return " + ".join(terms)


@dataclass(frozen=True)
class GradedAlphabet:
    """Degrees of a homogeneous basis of a graded vector space."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(int(x) for x in self.degrees)))

    def __len__(self):
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    @classmethod
    def trivial(cls, n: int = 1):
        return cls((0,) * n)

    def copies(self, n: int) -> "GradedAlphabet":
        """The alphabet of k^n tensor this space."""
        return GradedAlphabet(self.degrees * n)

    def dual(self, shift: int = 0) -> "GradedAlphabet":
        return GradedAlphabet(tuple(shift - e for e in self.degrees))

    def graded_dim(self) -> GradedDim:
        out: dict[int, int] = {}
        for e in self.degrees:
            out[e] = out.get(e, 0) + 1
        return GradedDim(out)


# -- Schur functor dimensions ------------------------------------------------

def hook_content_dim(lam, n: int) -> int:
    """dim S_lambda(k^n) by the hook-content formula."""
    lam = Partition(lam)
    if len(lam) > n:
        return 0
    num, den = 1, 1
    for (i, j), h in zip(lam.cells(), lam.hooks()):
        num *= n + j - i
        den *= h
    return num // den


def ssyt_count(lam, n: int) -> int:
    """Count semistandard tableaux of shape lam with entries 1..n by brute force."""
    lam = Partition(lam)
    cells = list(lam.cells())
    if len(lam) > n:
        return 0
    filling: dict[tuple[int, int], int] = {}

    def rec(k):
        if k == len(cells):
            return 1
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        total = 0
        for v in range(lo, n + 1):
            filling[(i, j)] = v
            total += rec(k + 1)
        filling.pop((i, j), None)
        return total

    return rec(0)


def dim_schur(lam, n: int) -> int:
    return hook_content_dim(lam, n)


def dim_weyl(lam, n: int) -> int:
    # Weyl and Schur functors have the same character.
    return dim_schur(lam, n)


def horizontal_strips(inner: Partition, outer: Partition):
    """All nu with inner <= nu <= outer and nu/inner a horizontal strip."""
    rows = len(outer)
    inner_rows = list(inner) + [0] * (rows - len(inner))

    def rec(r, acc):
        if r == rows:
            yield Partition(acc)
            return
        lo = inner_rows[r]
        hi = outer[r]
        if r > 0:
            hi = min(hi, inner_rows[r - 1])
        for x in range(lo, hi + 1):
            yield from rec(r + 1, acc + [x])

    yield from rec(0, [])


def graded_character(lam, letter_blocks, content=None) -> GradedDim:
    """Sum over SSYT of shape ``lam`` of q^(total degree of entries).

    The alphabet is the concatenation of ``letter_blocks`` (lists of
    degrees). If ``content`` is given, block b must receive exactly
    ``content[b]`` boxes. Computed as chains of horizontal strips.
    """
    lam = Partition(lam)
    if content is not None and len(content) != len(letter_blocks):
        raise ValueError("content must have one entry per letter block")
    states: dict[Partition, GradedDim] = {EMPTY: GradedDim.const(1)}
    for b, letters in enumerate(letter_blocks):
        block_states = {(kappa, 0): gd for kappa, gd in states.items()}
        cap = None if content is None else content[b]
        for e in letters:
            nxt: dict[tuple[Partition, int], GradedDim] = {}
            for (kappa, used), gd in block_states.items():
                for nu in horizontal_strips(kappa, lam):
                    added = nu.weight - kappa.weight
                    if cap is not None and used + added > cap:
                        continue
                    key = (nu, used + added)
                    contrib = gd.shift(e * added)
                    nxt[key] = nxt[key] + contrib if key in nxt else contrib
            block_states = nxt
        states = {}
        for (kappa, used), gd in block_states.items():
            if cap is not None and used != cap:
                continue
            states[kappa] = states[kappa] + gd if kappa in states else gd
    return states.get(lam, GradedDim())


def graded_dim_schur(lam, alphabet) -> GradedDim:
    """Graded dimension of S_lambda applied to the graded space ``alphabet``."""
    alphabet = alphabet if isinstance(alphabet, GradedAlphabet) else GradedAlphabet(alphabet)
    return graded_character(lam, [[e] for e in alphabet])


def kostka(lam, alpha) -> int:
    """Number of SSYT of shape lam and content alpha (a composition)."""
    alpha = tuple(alpha)
    if sum(alpha) != Partition(lam).weight:
        return 0
    return graded_character(lam, [[0]] * len(alpha), alpha).total()


def graded_dim_Ai(p: int, i: int) -> GradedAlphabet:
    """Monomial degrees of k[x_1..x_i]/(x_j^p) with |x_j| = 2p^(j-1)."""
    if i < 1:
        raise ValueError("i must be at least 1")
    degs = [0]
    for j in range(1, i + 1):
        step = 2 * p ** (j - 1)
        degs = [a + step * e for a in degs for e in range(p)]
    return GradedAlphabet(degs)


# -- Littlewood-Richardson ---------------------------------------------------

@lru_cache(maxsize=None)
def _lr(lam: Partition, mu: Partition, nu: Partition) -> int:
    if lam.weight != mu.weight + nu.weight or not lam.contains(mu) or not lam.contains(nu):
        return 0
    if not nu:
        return 1
    mu_rows = list(mu) + [0] * (len(lam) - len(mu))
    # reverse reading order: rows top to bottom, each row right to left
    cells = [(i, j) for i in range(len(lam)) for j in range(lam[i] - 1, mu_rows[i] - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)

    def rec(k):
        if k == len(cells):
            return 1
        i, j = cells[k]
        hi = len(nu)
        if (i, j + 1) in filling:
            hi = min(hi, filling[(i, j + 1)])
        lo = 1
        if i > 0 and (i - 1, j) in filling:
            lo = filling[(i - 1, j)] + 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(i, j)] = v
            total += rec(k + 1)
            del filling[(i, j)]
            counts[v] -= 1
        return total

    return rec(0)


def lr_coeff(lam, mu, nu) -> int:
    """Littlewood-Richardson coefficient c^lam_{mu,nu} by LR-tableau enumeration."""
    return _lr(Partition(lam), Partition(mu), Partition(nu))


@lru_cache(maxsize=None)
def _lr_product(mu: Partition, nu: Partition) -> tuple:
    n = mu.weight + nu.weight
    out = []
    for lam in enumerate_partitions(n):
        if len(lam) > len(mu) + len(nu) or not lam.contains(mu) or not lam.contains(nu):
            continue
        c = _lr(lam, mu, nu)
        if c:
            out.append((lam, c))
    return tuple(out)


def lr_product(mu, nu) -> dict[Partition, int]:
    """Expansion of s_mu * s_nu in Schur functions."""
    return dict(_lr_product(Partition(mu), Partition(nu)))


def iterated_lr_expansion(mus, bound=None) -> dict[Partition, int]:
    """Expansion of the product of s_mu over ``mus``, folded left to right.

    With ``bound`` set, terms not contained in it are dropped along the way.
    """
    current = {EMPTY: 1}
    for mu in mus:
        mu = Partition(mu)
        if not mu:
            continue
        nxt: dict[Partition, int] = {}
        for kappa, c in current.items():
            for lam, c2 in _lr_product(kappa, mu):
                if bound is not None and not bound.contains(lam):
                    continue
                nxt[lam] = nxt.get(lam, 0) + c * c2
        current = nxt
    return current


@lru_cache(maxsize=None)
def _iterated_lr(lam: Partition, mus: tuple) -> int:
    return iterated_lr_expansion(mus, bound=lam).get(lam, 0)


def iterated_lr(lam, mus) -> int:
    """Multiplicity of s_lam in the product of s_mu, mu in ``mus``."""
    key = tuple(sorted((Partition(m) for m in mus if m), reverse=True))
    return _iterated_lr(Partition(lam), key)


# -- Cauchy and block identities ---------------------------------------------

def dim_gamma_hom(n: int, m: int, d: int) -> int:
    """dim Gamma^d(Hom(k^m, k^n))."""
    return comb(n * m + d - 1, d)


def cauchy_sum(n: int, m: int, d: int) -> int:
    return sum(dim_weyl(mu, n) * dim_weyl(mu, m) for mu in enumerate_partitions(d))


def _check_core(core, d, p):
    core = Partition(core)
    c, w = p_core(core, p)
    if w != 0 or c != core:
        raise ValueError(f"{core} is not a {p}-core")
    if core.weight > d or (d - core.weight) % p:
        raise ValueError(f"core {core} is incompatible with degree {d} at p={p}")
    return core


def graded_dim_block(core, n: int, m: int, d: int, p: int, alphabet=None, second=None) -> GradedDim:
    """Graded dimension of the block bifunctor B_core(k^n ⊗ X, k^m ⊗ Y).

    Sum over mu in the block of W_mu on the first space times W_mu on the
    second; ``alphabet`` grades the first argument and ``second`` the other
    (both default to the trivial one-letter alphabet).
    """
    core = _check_core(core, d, p)
    alphabet = alphabet or GradedAlphabet.trivial()
    second = second or GradedAlphabet.trivial()
    table = blocks(d, p)
    total = GradedDim()
    for mu in table.fiber(core):
        total = total + graded_dim_schur(mu, alphabet.copies(n)) * graded_dim_schur(mu, second.copies(m))
    return total


def complete_homogeneous(alphabet, d: int) -> GradedDim:
    """Graded dimension of the d-th divided (or symmetric) power."""
    alphabet = alphabet if isinstance(alphabet, GradedAlphabet) else GradedAlphabet(alphabet)
    # coefficient of t^d in prod over letters of 1/(1 - t q^e)
    table = [GradedDim.const(1)] + [GradedDim() for _ in range(d)]
    for e in alphabet:
        for k in range(1, d + 1):
            table[k] = table[k] + table[k - 1].shift(e)
    return table[d]


def graded_dim_affine_schur(n: int, d: int, p: int, i: int) -> GradedDim:
    """Graded dimension of Gamma^d(End(k^n) ⊗ A_i)."""
    return complete_homogeneous(graded_dim_Ai(p, i).copies(n * n), d)


# -- A_{i,lambda} ------------------------------------------------------------

def _require_basic(lam, d, p):
    lam = Partition(lam)
    if lam.weight != d:
        raise ValueError(f"{lam} does not have weight {d}")
    if not is_basic(lam, p):
        raise ValueError(f"{lam} is not basic for p={p}")
    return lam


def graded_dim_corner_lr(lam, d: int, p: int, i: int) -> GradedDim:
    """Graded dimension of Hom(S_lam, S_lam(- ⊗ A_i)) from LR numbers.

    Each way of spreading d boxes over the basis of A_i as shapes
    (mu^1..mu^k) contributes (iterated LR multiplicity)^2 in degree
    sum_j deg_j |mu^j|.
    """
    lam = _require_basic(lam, d, p)
    degs = graded_dim_Ai(p, i).degrees
    k = len(degs)
    total: dict[int, int] = {}
    parts_of = {s: enumerate_partitions(s) for s in range(d + 1)}
    for sizes in _compositions(d, k):
        support = [(j, s) for j, s in enumerate(sizes) if s]
        deg = sum(degs[j] * s for j, s in support)
        for shapes in itertools.product(*(parts_of[s] for _, s in support)):
            c = iterated_lr(lam, shapes)
            if c:
                total[deg] = total.get(deg, 0) + c * c
    return GradedDim(total)


def _compositions(d, k):
    if k == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, k - 1):
            yield (first,) + rest


def isotypic_multiplicity(target, lam, n: int, alphabet) -> GradedDim:
    """Graded multiplicity of the Weyl character of ``target`` in S_lam(k^n ⊗ X).

    Peels weight-space characters in dominance-compatible order using
    Kostka numbers; independent of LR coefficients.
    """
    lam, target = Partition(lam), Partition(target)
    alphabet = alphabet if isinstance(alphabet, GradedAlphabet) else GradedAlphabet(alphabet)
    d = lam.weight
    letters = [list(alphabet.degrees)] * n
    mult: dict[Partition, GradedDim] = {}
    # reverse lex refines dominance, so every nu dominating mu comes first
    for mu in enumerate_partitions(d, max_rows=n):
        content = tuple(mu) + (0,) * (n - len(mu))
        chi = graded_character(lam, letters, content)
        for nu, m_nu in mult.items():
            k = kostka(nu, content)
            if k:
                chi = chi - m_nu * k
        mult[mu] = chi
        if mu == target:
            return chi
    return GradedDim()


def graded_dim_corner_morita(lam, d: int, p: int, i: int) -> GradedDim:
    """A_{i,lam} via the lam-isotypic part of S_lam(k^d ⊗ A_i)."""
    lam = _require_basic(lam, d, p)
    return isotypic_multiplicity(lam, lam, d, graded_dim_Ai(p, i))


def character_degree(lam) -> int:
    """chi_lam(1): number of standard tableaux, by the hook length formula."""
    lam = Partition(lam)
    return factorial(lam.weight) // prod(lam.hooks())
