"""Count planning: how many mutually unbiased bases each route guarantees.

For a dimension d the planner compares, over the divisor tree of d:

  * prime power d = p^e: p^e + 1 bases (cited count, not built here);
  * square d = s^2: w + 2 bases from w MOLS of order s, where w comes from
    the best available lower bound (constructive, imported, or cited);
  * an imported, already verified set for d itself;
  * the single standard basis (always available);
  * tensor splits d = a * b, keeping min of the factor counts.

Two optima are tracked: best_count uses every bound including
cited-existence ones, best_constructible_count only routes this package
can actually build or has imported as explicit verified objects.  The
baseline prime_power_reduction_count is min(p_i^(e_i)) + 1 over the prime
factorization, the guarantee obtained by tensoring the prime-power parts.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from . import serial
from .cyclotomic import divisors
from .galois import prime_power
from .latin import (
    MolsSet,
    WILSON_MIN_ORDER,
    constructive_mols_count,
    factorize,
    mols_from_dict,
)
from .mub import MubSet, verified_from_dict

MAX_PLAN_DIM = 10 ** 9


@dataclass(frozen=True)
class PlanNode:
    d: int
    kind: str  # "prime-power" | "square" | "imported-mubs" | "trivial" | "tensor"
    count: int
    constructible: bool
    provenance: str
    children: tuple["PlanNode", ...] = ()

    def describe(self) -> str:
        if self.kind == "tensor":
            inner = " x ".join(c.describe() for c in self.children)
            return f"({inner})"
        if self.kind == "prime-power":
            return f"{self.d}[prime power: {self.count}]"
        if self.kind == "square":
            s = math.isqrt(self.d)
            return f"{self.d}={s}^2[{self.provenance} MOLS w={self.count - 2}: {self.count}]"
        if self.kind == "imported-mubs":
            return f"{self.d}[imported: {self.count}]"
        return f"{self.d}[trivial: 1]"

    def to_dict(self) -> dict:
        out = {
            "d": self.d,
            "kind": self.kind,
            "count": self.count,
            "constructible": self.constructible,
            "provenance": self.provenance,
        }
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out


@dataclass(frozen=True)
class Plan:
    d: int
    best_count: int
    best_constructible_count: int
    prime_power_reduction_count: int
    best: PlanNode
    best_constructible: PlanNode

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "best_count": self.best_count,
            "best_constructible_count": self.best_constructible_count,
            "prime_power_reduction_count": self.prime_power_reduction_count,
            "best": self.best.to_dict(),
            "best_constructible": self.best_constructible.to_dict(),
        }


@dataclass
class ImportsTable:
    """Externally supplied objects and bounds, keyed by order / dimension.

    mols maps s to a verified MOLS set of order s, mubs maps d to a verified
    set of bases of C^d, and mols_cited maps s to a cited lower bound on the
    number of MOLS of order s (existence only, nothing to construct from).
    """

    mols: dict[int, MolsSet] = field(default_factory=dict)
    mubs: dict[int, MubSet] = field(default_factory=dict)
    mols_cited: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_dir(cls, path: str | os.PathLike) -> "ImportsTable":
        """Scan a directory of JSON files, dispatching on their keys:
        "squares" -> MOLS, "bases" -> bases, "mols_cited_bounds" -> bounds.
        Every object import is fully verified; a widest-set / largest-bound
        rule resolves duplicate orders.
        """
        table = cls()
        try:
            names = sorted(n for n in os.listdir(path) if n.endswith(".json"))
        except OSError as exc:
            raise serial.ParseError(f"cannot read import directory {path}: {exc}") from None
        for name in names:
            full = os.path.join(path, name)
            data = serial.read_json(full)
            if not isinstance(data, dict):
                raise serial.ParseError(f"{name}: import file must hold a JSON object")
            try:
                if "squares" in data:
                    m = mols_from_dict(data)
                    old = table.mols.get(m.order)
                    if old is None or m.width > old.width:
                        table.mols[m.order] = m
                elif "bases" in data:
                    x = verified_from_dict(data)
                    old = table.mubs.get(x.dim)
                    if old is None or x.k > old.k:
                        table.mubs[x.dim] = x
                elif "mols_cited_bounds" in data:
                    bounds = data["mols_cited_bounds"]
                    serial.expect(
                        isinstance(bounds, dict) and all(
                            serial.is_int(v) and v >= 0 and k.isdigit()
                            for k, v in bounds.items()
                        ),
                        f'{name}: "mols_cited_bounds" must map order strings to counts',
                    )
                    for key, value in bounds.items():
                        s = int(key)
                        table.mols_cited[s] = max(table.mols_cited.get(s, 0), value)
                else:
                    raise serial.ParseError(
                        f"{name}: unrecognized import file (no squares/bases/mols_cited_bounds key)"
                    )
            except ValueError as exc:
                if isinstance(exc, serial.ParseError):
                    raise
                raise serial.ParseError(f"{name}: {exc}") from None
        return table


def prime_power_reduction_count(d: int) -> int:
    """min(p^e) + 1 over the prime-power parts of d: the tensor guarantee
    from complete sets in each prime-power dimension."""
    return min(p ** e for p, e in factorize(d)) + 1


def _mols_candidates(s: int, imports: ImportsTable) -> list[tuple[int, bool, str]]:
    """(width, constructive, provenance) options for MOLS of order s."""
    out = [(constructive_mols_count(s), True, "constructive")]
    if s in imports.mols:
        out.append((imports.mols[s].width, True, "imported"))
    cited = imports.mols_cited.get(s, 0)
    if s >= WILSON_MIN_ORDER:
        cited = max(cited, 6)
    if cited > 0:
        out.append((cited, False, "cited-existence"))
    return out


def plan(d: int, imports: ImportsTable | None = None) -> Plan:
    """Best achievable counts for dimension d, with explanation trees."""
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")
    if d > MAX_PLAN_DIM:
        raise ValueError(f"TooLarge: dimension {d} exceeds {MAX_PLAN_DIM}")
    imports = imports or ImportsTable()
    memo: dict[int, tuple[PlanNode, PlanNode]] = {}

    def solve(n: int) -> tuple[PlanNode, PlanNode]:
        got = memo.get(n)
        if got is not None:
            return got
        candidates: list[PlanNode] = [
            PlanNode(n, "trivial", 1, True, "standard basis")
        ]
        pp = prime_power(n)
        if pp is not None:
            candidates.append(PlanNode(n, "prime-power", n + 1, False, "cited-existence"))
        s = math.isqrt(n)
        if s * s == n and s >= 2:
            for width, constructive, provenance in _mols_candidates(s, imports):
                if width > 0:
                    candidates.append(PlanNode(n, "square", width + 2, constructive, provenance))
        if n in imports.mubs:
            candidates.append(PlanNode(n, "imported-mubs", imports.mubs[n].k, True, "imported"))
        for a in divisors(n):
            if a < 2 or a * a > n:
                continue
            b = n // a
            if b < 2 or b == n:
                continue
            left_best, left_con = solve(a)
            right_best, right_con = solve(b)
            candidates.append(PlanNode(
                n, "tensor", min(left_best.count, right_best.count),
                left_best.constructible and right_best.constructible,
                "tensor", (left_best, right_best),
            ))
            candidates.append(PlanNode(
                n, "tensor", min(left_con.count, right_con.count), True,
                "tensor", (left_con, right_con),
            ))
        best = candidates[0]
        best_con = candidates[0]
        for cand in candidates[1:]:
            if cand.count > best.count:
                best = cand
            if cand.constructible and cand.count > best_con.count:
                best_con = cand
        memo[n] = (best, best_con)
        return memo[n]

    best, best_con = solve(d)
    # The defensive floor of 3 never binds: every n >= 2 has a prime-power
    # divisor, so tensor routes alone already guarantee at least 3.
    return Plan(
        d=d,
        best_count=max(best.count, 3),
        best_constructible_count=best_con.count,
        prime_power_reduction_count=prime_power_reduction_count(d),
        best=best,
        best_constructible=best_con,
    )
