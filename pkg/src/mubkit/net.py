"""Nets: k blocks of s disjoint 0/1 vectors over s^2 points.

A (k,s)-net is k blocks, each holding s incidence vectors of length d = s^2
and weight s, such that supports within a block are pairwise disjoint and
supports from different blocks share exactly one point.  Bits are packed
into a Python int per vector, so dot products are exact popcounts.

The classical correspondence: w MOLS of order s give a net with k = w + 2
blocks (rows of the grid, columns of the grid, then one block per square,
whose vectors are the level sets of each symbol), and any net with k >= 2
blocks can be read back by using blocks 0 and 1 as coordinates.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

from . import serial
from .latin import LatinSquare, MolsSet


@dataclass(frozen=True)
class IncidenceVector:
    """0/1 vector of a fixed length with bits packed into one int."""

    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits out of range for length {self.length}")

    @staticmethod
    def from_support(length: int, positions: Iterable[int]) -> "IncidenceVector":
        bits = 0
        for p in positions:
            if not 0 <= p < length:
                raise ValueError(f"position {p} out of range for length {length}")
            bits |= 1 << p
        return IncidenceVector(length, bits)

    @staticmethod
    def from_bits01(text: str) -> "IncidenceVector":
        if set(text) - {"0", "1"}:
            raise ValueError("incidence string must contain only 0 and 1")
        bits = 0
        for p, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << p
        return IncidenceVector(len(text), bits)

    def to_bits01(self) -> str:
        return "".join("1" if self.bits >> p & 1 else "0" for p in range(self.length))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.length) if self.bits >> p & 1)

    def dot(self, other: "IncidenceVector") -> int:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return (self.bits & other.bits).bit_count()


@dataclass(frozen=True)
class Net:
    s: int
    blocks: tuple[tuple[IncidenceVector, ...], ...]

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        d = self.s * self.s
        if len(self.blocks) > self.s + 1:
            raise ValueError(f"{len(self.blocks)} blocks exceeds the bound s + 1 = {self.s + 1}")
        for b, block in enumerate(self.blocks):
            if len(block) != self.s:
                raise ValueError(f"block {b} has {len(block)} vectors, want {self.s}")
            for vec in block:
                if vec.length != d:
                    raise ValueError(f"block {b} holds a vector of length {vec.length}, want {d}")

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def d(self) -> int:
        return self.s * self.s


@dataclass(frozen=True)
class NetViolation:
    kind: str  # "weight" | "within-block" | "cross-block"
    block: int
    index: int
    block2: int | None = None
    index2: int | None = None
    detail: str = ""

    def sort_key(self):
        return (self.block, self.index,
                -1 if self.block2 is None else self.block2,
                -1 if self.index2 is None else self.index2, self.kind)


@dataclass(frozen=True)
class NetReport:
    s: int
    k: int
    violations: tuple[NetViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_net(net: Net) -> NetReport:
    """Check every weight, every within-block pair, every cross-block pair."""
    out: list[NetViolation] = []
    for b, block in enumerate(net.blocks):
        for i, vec in enumerate(block):
            if vec.weight != net.s:
                out.append(NetViolation("weight", b, i, detail=f"weight {vec.weight}, want {net.s}"))
    for b in range(net.k):
        for c in range(b, net.k):
            for i, u in enumerate(net.blocks[b]):
                for j, v in enumerate(net.blocks[c]):
                    if b == c and j <= i:
                        continue
                    got = u.dot(v)
                    want = 0 if b == c else 1
                    if got != want:
                        kind = "within-block" if b == c else "cross-block"
                        out.append(NetViolation(kind, b, i, c, j, f"dot {got}, want {want}"))
    out.sort(key=NetViolation.sort_key)
    return NetReport(net.s, net.k, tuple(out))


def net_from_mols(m: MolsSet) -> Net:
    """Net with w + 2 blocks: rows, columns, then one block per square.

    Cell (i, j) of the grid is point i*s + j.  Within each block vectors are
    listed in ascending row / column / symbol order.
    """
    s = m.order
    d = s * s
    blocks: list[tuple[IncidenceVector, ...]] = []
    blocks.append(tuple(
        IncidenceVector.from_support(d, (i * s + j for j in range(s))) for i in range(s)
    ))
    blocks.append(tuple(
        IncidenceVector.from_support(d, (i * s + j for i in range(s))) for j in range(s)
    ))
    for sq in m.squares:
        blocks.append(tuple(
            IncidenceVector.from_support(
                d, (i * s + j for i in range(s) for j in range(s) if sq.grid[i][j] == v)
            )
            for v in range(s)
        ))
    net = Net(s, tuple(blocks))
    assert verify_net(net).ok, "construction from verified MOLS cannot fail"
    return net


def mols_from_net(net: Net) -> MolsSet:
    """Read k - 2 MOLS back out of a verified net.

    Blocks 0 and 1 coordinatize: row i, column j meet in the single common
    point of their supports.  Each remaining block becomes a square whose
    symbol at (i, j) is the index of the vector covering that point.
    """
    if net.k < 2:
        raise ValueError(f"TooFewBlocks: need at least 2 blocks, got {net.k}")
    if not verify_net(net).ok:
        raise ValueError("Inconsistent: net fails verification")
    s = net.s
    point = [[0] * s for _ in range(s)]
    for i, u in enumerate(net.blocks[0]):
        for j, v in enumerate(net.blocks[1]):
            common = u.bits & v.bits
            assert common.bit_count() == 1
            point[i][j] = common.bit_length() - 1
    squares = []
    for block in net.blocks[2:]:
        symbol_at = {}
        for v, vec in enumerate(block):
            for p in vec.support:
                symbol_at[p] = v
        grid = tuple(tuple(symbol_at[point[i][j]] for j in range(s)) for i in range(s))
        squares.append(LatinSquare(grid))
    return MolsSet(s, tuple(squares))


# -- serialization: {"s": int, "k": int, "blocks": [["0/1 string"]]}

def net_to_dict(net: Net) -> dict:
    return {
        "s": net.s,
        "k": net.k,
        "blocks": [[vec.to_bits01() for vec in block] for block in net.blocks],
    }


def net_from_dict(data: object) -> Net:
    serial.expect(isinstance(data, dict), "net document must be a JSON object")
    serial.expect(set(data) == {"s", "k", "blocks"},
                  'net document needs exactly the keys "s", "k" and "blocks"')
    s, k, raw = data["s"], data["k"], data["blocks"]
    serial.expect(serial.is_int(s) and s >= 1, '"s" must be a positive integer')
    serial.expect(serial.is_int(k) and k >= 0, '"k" must be a non-negative integer')
    serial.expect(isinstance(raw, list) and len(raw) == k, '"blocks" must list exactly k blocks')
    d = s * s
    blocks = []
    for b, block in enumerate(raw):
        serial.expect(
            isinstance(block, list) and all(isinstance(x, str) for x in block),
            f"block {b} must be a list of strings",
        )
        vecs = []
        for i, text in enumerate(block):
            serial.expect(len(text) == d and not set(text) - {"0", "1"},
                          f"block {b} vector {i} must be a 0/1 string of length {d}")
            vecs.append(IncidenceVector.from_bits01(text))
        blocks.append(tuple(vecs))
    try:
        return Net(s, tuple(blocks))
    except ValueError as exc:
        raise serial.ParseError(str(exc)) from None


def load_net(path: str | os.PathLike) -> Net:
    """Load a net file; shape is validated here, content via verify_net."""
    return net_from_dict(serial.read_json(path))


def save_net(net: Net, path: str | os.PathLike) -> None:
    serial.write_json(path, net_to_dict(net))
