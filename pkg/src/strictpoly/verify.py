"""Experiments that check the duality and Calabi-Yau statements numerically,
each returning a JSON-serialisable Report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import factorial

from .homalg import ext_dims
from .partitions import Partition, _check_prime, basic_diagrams, blocks, enumerate_partitions, is_p_core
from .symchar import (
    cauchy_sum,
    dim_gamma_hom,
    graded_dim_Ai,
    graded_dim_block,
    graded_dim_corner_lr,
    graded_dim_corner_morita,
)
from .wreath import CORNER_ALGEBRA_CAP, corner_algebra, corner_graded_dim

ORACLE_DIM_CAP = 200


@dataclass
class Assertion:
    name: str
    passed: bool
    lhs: object = None
    rhs: object = None

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class Report:
    experiment: str
    params: dict
    assertions: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)
    outcome: str = ""
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def check(self, name, lhs, rhs) -> bool:
        ok = lhs == rhs
        self.assertions.append(Assertion(name, ok, lhs, rhs))
        return ok

    def failures(self) -> list:
        return [a for a in self.assertions if not a.passed]

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "experiment": self.experiment,
            "params": self.params,
            "pass": self.passed,
            "outcome": self.outcome or ("pass" if self.passed else "fail"),
            "assertions": [a.to_dict() for a in self.assertions],
            "witness": self.witness,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self, timing: bool = True, indent=None) -> str:
        return json.dumps(self.to_dict(timing), indent=indent)

    @classmethod
    def from_dict(cls, data) -> "Report":
        asserts = [Assertion(a["name"], a["pass"], a["lhs"], a["rhs"]) for a in data["assertions"]]
        return cls(data["experiment"], data["params"], asserts, data.get("witness", {}),
                   data.get("outcome", ""), data.get("elapsed_ms", 0.0))

    @classmethod
    def from_json(cls, text) -> "Report":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        head = f"{self.experiment} {self.params}: {'PASS' if self.passed else 'FAIL'}"
        if self.outcome and self.outcome not in ("pass", "fail"):
            head += f" ({self.outcome})"
        lines = [head]
        for a in self.assertions:
            mark = "ok  " if a.passed else "FAIL"
            lines.append(f"  {mark} {a.name}" + ("" if a.passed else f": {a.lhs} != {a.rhs}"))
        return "\n".join(lines)


class _Timer:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = (time.perf_counter() - self.start) * 1000
        return False


def _gd(g) -> dict:
    return {str(k): v for k, v in g.coeffs.items()}


def duality_experiment(p: int, d: int, i: int, lam=None, n=None, max_tensor_dim=None, oracle: bool = True) -> Report:
    """Ext tables of L(p^i lam) against every simple, checked for the
    palindrome s <-> 2d(p^i - 1) - s and the vanishing band above it."""
    _check_prime(p)
    rep = Report("duality", {"p": p, "d": d, "i": i, "lambda": None if lam is None else str(Partition(lam))})
    D = 2 * d * (p**i - 1)
    rep.witness["D"] = D
    with _Timer(rep):
        if lam is None:
            lams = basic_diagrams(d, p)
        else:
            lam = Partition(lam)
            if lam.weight != d:
                raise ValueError(f"{lam} does not have weight {d}")
            if lam not in basic_diagrams(d, p):
                raise ValueError(f"{lam} is not basic for p={p}")
            lams = [lam]
        if not lams:
            rep.outcome = "no basic diagrams"
            return rep
        tables = []
        for lam in lams:
            res = ext_dims(lam, p, d, i, s_max=D + 1, n=n, max_tensor_dim=max_tensor_dim,
                           oracle=oracle)
            table = res[0] if oracle else res
            tables.append(table.to_dict())
            src = table.source
            for mu, row in table.rows.items():
                head = row[: D + 1]
                rep.check(f"palindrome {lam} mu={mu}", head, head[::-1])
                rep.check(f"vanishing above D {lam} mu={mu}", row[D + 1 :], [0] * (len(row) - D - 1))
                rep.check(f"Hom between simples {lam} mu={mu}", row[0], int(mu == src))
            if oracle and table.algebra_dim <= ORACLE_DIM_CAP:
                other = res[1]
                rep.check(f"minimal resolution = Hom-complex cohomology {lam}",
                          {str(m): r for m, r in table.rows.items()},
                          {str(m): r for m, r in other.rows.items()})
                rep.check(f"resolution exact and minimal {lam}", res[2].minimal, True)
        rep.witness["tables"] = tables
    return rep


def cy_experiment(p: int, d: int, i: int, lam) -> Report:
    """Three constructions of the graded dimension of A_{i,lam}, plus palindromy."""
    _check_prime(p)
    lam = Partition(lam)
    rep = Report("calabi-yau", {"p": p, "d": d, "i": i, "lambda": str(lam)})
    D = 2 * d * (p**i - 1)
    with _Timer(rep):
        if lam.weight != d:
            raise ValueError(f"{lam} does not have weight {d}")
        corner = corner_graded_dim(lam, p, i)
        lr = graded_dim_corner_lr(lam, d, p, i)
        morita = graded_dim_corner_morita(lam, d, p, i)
        rep.check("corner = LR formula", _gd(corner), _gd(lr))
        rep.check("corner = Morita identity", _gd(corner), _gd(morita))
        rep.check("palindromic", _gd(corner), _gd(corner.reflect().shift(D)))
        rep.check("top degree", corner.top(), D)
        if factorial(d) * p ** (i * d) <= CORNER_ALGEBRA_CAP:
            alg = corner_algebra(lam, p, i)
            rep.check("explicit corner algebra = orbit count", _gd(alg.graded_dim()), _gd(corner))
        rep.witness.update({"D": D, "corner": corner.to_list(), "total": corner.total()})
    return rep


def frobenius_ext_experiment(p: int, i: int, max_tensor_dim=None) -> Report:
    """Ext^*(L(p^i), L(p^i)) against the graded dimension of A_i."""
    _check_prime(p)
    rep = Report("frobenius-ext", {"p": p, "i": i})
    top = 2 * (p**i - 1)
    with _Timer(rep):
        table = ext_dims((1,), p, 1, i, s_max=top, max_tensor_dim=max_tensor_dim)
        row = table.rows[table.source]
        expected = graded_dim_Ai(p, i).graded_dim().to_list(0, top)
        rep.check("Ext row = A_i", row, expected)
        rep.witness.update({"row": row, "algebra_dim": table.algebra_dim})
    return rep


cor56_experiment = frobenius_ext_experiment


def cauchy_experiment(n: int, m: int, d: int, p: int) -> Report:
    """Cauchy filtration dimension count, globally and block by block."""
    _check_prime(p)
    rep = Report("cauchy", {"n": n, "m": m, "d": d, "p": p})
    with _Timer(rep):
        total = dim_gamma_hom(n, m, d)
        rep.check("sum over diagrams", cauchy_sum(n, m, d), total)
        table = blocks(d, p)
        by_block = {str(c): graded_dim_block(c, n, m, d, p).total() for c in table.cores}
        rep.check("sum over blocks", sum(by_block.values()), total)
        members = [str(lam) for fib in table.entries.values() for lam in fib]
        rep.check("blocks partition the diagrams", sorted(members), sorted(str(lam) for lam in enumerate_partitions(d)))
        rep.witness.update({"dim": total, "blocks": by_block})
    return rep


def basic_census(p: int, d_max: int) -> Report:
    """Which degrees have basic blocks, against a hook-length oracle."""
    _check_prime(p)
    rep = Report("basic-census", {"p": p, "d_max": d_max})
    census = {}
    with _Timer(rep):
        for d in range(1, d_max + 1):
            table = blocks(d, p)
            found = sorted(str(c) for c in table.basic_cores())
            # a diagram is basic iff no hook length is divisible by p
            oracle = sorted(str(lam) for lam in enumerate_partitions(d) if is_p_core(lam, p))
            rep.check(f"census d={d}", found, oracle)
            if d < p:
                rep.check(f"all blocks basic d={d}", len(found), len(table.cores))
            census[str(d)] = {"blocks": len(table.cores), "basic": found}
        rep.witness["census"] = census
    return rep
