"""Young diagram combinatorics: enumeration, conjugates, p-cores, blocks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache


class Partition(tuple):
    """An immutable Young diagram, stored as its weakly decreasing row lengths.

    Compares and hashes like the underlying tuple, so sorting in reverse
    order gives reverse lexicographic order.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self):
        return "[" + ",".join(str(x) for x in self) + "]"

    __str__ = __repr__

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def rows(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def cells(self):
        for i, row in enumerate(self):
            for j in range(row):
                yield i, j

    def hook(self, i: int, j: int) -> int:
        conj = conjugate(self)
        return (self[i] - j - 1) + (conj[j] - i - 1) + 1

    def hooks(self) -> list[int]:
        conj = conjugate(self)
        return [(self[i] - j) + (conj[j] - i) - 1 for i, j in self.cells()]

    def contains(self, other: "Partition") -> bool:
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self, other))

    def scale(self, k: int) -> "Partition":
        return Partition(k * x for x in self)


EMPTY = Partition()


def parse_partition(text: str) -> Partition:
    """Parse the bracket syntax ``[2,1,1]`` (``[]`` is the empty diagram)."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"partition must look like [2,1]: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return EMPTY
    try:
        parts = [int(x) for x in body.split(",")]
    except ValueError:
        raise ValueError(f"bad partition {text!r}") from None
    if any(x <= 0 for x in parts):
        raise ValueError(f"parts must be positive: {text!r}")
    return Partition(parts)


@lru_cache(maxsize=None)
def _partitions(d: int, max_part: int) -> tuple[Partition, ...]:
    if d == 0:
        return (EMPTY,)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in _partitions(d - first, first):
            out.append(Partition((first,) + rest))
    return tuple(out)


def enumerate_partitions(d: int, max_rows: int | None = None) -> list[Partition]:
    """All partitions of ``d`` in reverse lexicographic order."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    parts = _partitions(d, d)
    if max_rows is not None:
        parts = tuple(lam for lam in parts if len(lam) <= max_rows)
    return list(parts)


def partition_count(d: int) -> int:
    """Number of partitions of d by Euler's pentagonal recurrence."""
    counts = [1] + [0] * d
    for n in range(1, d + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * counts[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * counts[n - g2]
            k += 1
        counts[n] = total
    return counts[d]


def conjugate(lam) -> Partition:
    lam = tuple(lam)
    if not lam:
        return EMPTY
    return Partition(sum(1 for x in lam if x > j) for j in range(lam[0]))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


# -- p-cores ----------------------------------------------------------------

def beta_set(lam: Partition, r: int | None = None) -> list[int]:
    r = len(lam) if r is None else r
    parts = list(lam) + [0] * (r - len(lam))
    return [parts[j] + (r - 1 - j) for j in range(r)]


def from_beta_set(beta) -> Partition:
    beta = sorted(beta, reverse=True)
    r = len(beta)
    return Partition(beta[j] - (r - 1 - j) for j in range(r))


def p_core(lam, p: int) -> tuple[Partition, int]:
    """The p-core of ``lam`` and the number of rim p-hooks removed.

    Uses the abacus: beads on each runner of a p-runner abacus are pushed
    as far up as they go.
    """
    _check_prime(p)
    lam = Partition(lam)
    beta = beta_set(lam)
    runners: dict[int, list[int]] = {}
    for b in beta:
        runners.setdefault(b % p, []).append(b)
    packed = []
    weight = 0
    for res, beads in runners.items():
        for k, b in enumerate(sorted(beads)):
            target = res + k * p
            weight += (b - target) // p
            packed.append(target)
    return from_beta_set(packed), weight


def rim_hooks(lam, p: int) -> list[tuple[Partition, int]]:
    """Every (diagram, leg length) obtained from ``lam`` by removing one rim hook of length p.

    Works directly on the diagram: a cell with hook length p determines the
    rim hook running from the end of its row to the bottom of its column.
    """
    lam = Partition(lam)
    conj = conjugate(lam)
    out = []
    for i, j in lam.cells():
        arm = lam[i] - j - 1
        leg = conj[j] - i - 1
        if arm + leg + 1 != p:
            continue
        rows = list(lam)
        for r in range(i, i + leg):
            rows[r] = lam[r + 1] - 1
        rows[i + leg] = j
        out.append((Partition(rows), leg))
    return out


def remove_rim_hooks(lam, p: int) -> list[Partition]:
    return [mu for mu, _ in rim_hooks(lam, p)]


def p_core_naive(lam, p: int) -> set[tuple[Partition, int]]:
    """All (core, hooks removed) reachable by rim-hook removal in any order.

    Exhaustive; a singleton result witnesses order independence.
    """
    lam = Partition(lam)
    results = set()

    @lru_cache(maxsize=None)
    def walk(mu):
        nxt = remove_rim_hooks(mu, p)
        if not nxt:
            return frozenset({(mu, 0)})
        acc = set()
        for nu in nxt:
            for core, w in walk(nu):
                acc.add((core, w + 1))
        return frozenset(acc)

    results.update(walk(lam))
    return results


def is_p_core(lam, p: int) -> bool:
    return all(h % p for h in Partition(lam).hooks())


@dataclass(frozen=True)
class BlockTable:
    """Partitions of ``d`` grouped by their p-core."""

    p: int
    d: int
    entries: dict = field(default_factory=dict)

    @property
    def cores(self) -> list[Partition]:
        return list(self.entries)

    def fiber(self, core) -> tuple[Partition, ...]:
        return self.entries[Partition(core)]

    def core_of(self, lam) -> Partition:
        lam = Partition(lam)
        for core, fib in self.entries.items():
            if lam in fib:
                return core
        raise KeyError(lam)

    def is_basic_block(self, core) -> bool:
        return len(self.fiber(core)) == 1 and self.fiber(core)[0] == Partition(core)

    def basic_cores(self) -> list[Partition]:
        return [c for c in self.entries if self.is_basic_block(c)]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "blocks": [
                {
                    "core": str(core),
                    "weight": (self.d - core.weight) // self.p,
                    "basic": self.is_basic_block(core),
                    "members": [str(lam) for lam in fib],
                }
                for core, fib in self.entries.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def blocks(d: int, p: int) -> BlockTable:
    _check_prime(p)
    entries: dict[Partition, list[Partition]] = {}
    for lam in enumerate_partitions(d):
        core, _ = p_core(lam, p)
        entries.setdefault(core, []).append(lam)
    return BlockTable(p, d, {c: tuple(f) for c, f in entries.items()})


def is_basic(lam, p: int) -> bool:
    """True iff ``lam`` is alone in its block of partitions of its weight."""
    lam = Partition(lam)
    table = blocks(lam.weight, p)
    return lam in table.entries and table.is_basic_block(lam)


def basic_diagrams(d: int, p: int) -> list[Partition]:
    return blocks(d, p).basic_cores()
