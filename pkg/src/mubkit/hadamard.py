"""Generalized Hadamard matrices with root-of-unity entries stored as exponents.

An s x s matrix H with unit-modulus entries is generalized Hadamard when
H H* = s I, i.e. distinct rows are orthogonal.  Every entry here is a root
of unity, so H is stored as an integer exponent table against a fixed root
order m: entry (r, c) is exp(2 pi i * exponents[r][c] / m).

Row orthogonality is decided exactly: the inner product of rows r and r'
is sum_c root(m, e[r][c] - e[r'][c]), a group-ring element whose vanishing
is tested modulo the m-th cyclotomic polynomial.  A float path computes the
same Gram matrix numerically for cross-checks.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from . import serial
from .cyclotomic import TOL, counts_to_cyclotomic

MAX_TABLE_SIZE = 1 << 12


@dataclass(frozen=True)
class GenHadamard:
    root_order: int
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        m = self.root_order
        if m < 1:
            raise ValueError(f"root order must be >= 1, got {m}")
        n = len(self.exponents)
        if n < 1:
            raise ValueError("matrix must have at least one row")
        for r, row in enumerate(self.exponents):
            if len(row) != n:
                raise ValueError(f"row {r} has {len(row)} entries, want {n}")
            for e in row:
                if not 0 <= e < m:
                    raise ValueError(f"exponent {e} out of range for root order {m}")

    @property
    def size(self) -> int:
        return len(self.exponents)

    def entry(self, r: int, c: int) -> complex:
        return complex(math.cos(2 * math.pi * self.exponents[r][c] / self.root_order),
                       math.sin(2 * math.pi * self.exponents[r][c] / self.root_order))

    def rows_approx(self) -> list[list[complex]]:
        return [[self.entry(r, c) for c in range(self.size)] for r in range(self.size)]


def dft(s: int) -> GenHadamard:
    """Character table of the cyclic group of order s: entry (k, l) = w^(k*l)."""
    if s < 1:
        raise ValueError(f"size must be >= 1, got {s}")
    return GenHadamard(s, tuple(tuple(k * l % s for l in range(s)) for k in range(s)))


def tensor_hadamard(a: GenHadamard, b: GenHadamard) -> GenHadamard:
    """Kronecker product in row-major index order, exponents lifted to lcm."""
    m = math.lcm(a.root_order, b.root_order)
    fa, fb = m // a.root_order, m // b.root_order
    n = a.size * b.size
    rows = []
    for ra in range(a.size):
        for rb in range(b.size):
            rows.append(tuple(
                (a.exponents[ra][ca] * fa + b.exponents[rb][cb] * fb) % m
                for ca in range(a.size)
                for cb in range(b.size)
            ))
    out = GenHadamard(m, tuple(rows))
    assert out.size == n
    return out


def char_table(orders: Sequence[int]) -> GenHadamard:
    """Character table of Z_n1 x ... x Z_nk as a tensor of DFT matrices."""
    orders = tuple(orders)
    if not orders:
        raise ValueError("EmptyInput: need at least one cyclic factor")
    size = 1
    for n in orders:
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"factor orders must be positive integers, got {n!r}")
        size *= n
    if size > MAX_TABLE_SIZE:
        raise ValueError(f"TooLarge: group order {size} exceeds {MAX_TABLE_SIZE}")
    return reduce(tensor_hadamard, (dft(n) for n in orders))


@dataclass(frozen=True)
class HadamardReport:
    size: int
    violations: tuple[tuple[int, int], ...]  # row pairs whose inner product is not 0

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_hadamard(h: GenHadamard) -> HadamardReport:
    """Exact check that all distinct row pairs are orthogonal."""
    m = h.root_order
    bad = []
    for r in range(h.size):
        for r2 in range(r + 1, h.size):
            counts = Counter(
                (h.exponents[r][c] - h.exponents[r2][c]) % m for c in range(h.size)
            )
            if not counts_to_cyclotomic(m, counts).is_zero():
                bad.append((r, r2))
    return HadamardReport(h.size, tuple(bad))


def float_deviation(h: GenHadamard) -> float:
    """max |(H H* - s I)[r][r2]| over all entries, computed numerically."""
    rows = h.rows_approx()
    s = h.size
    worst = 0.0
    for r in range(s):
        for r2 in range(s):
            g = sum(rows[r][c] * rows[r2][c].conjugate() for c in range(s))
            want = s if r == r2 else 0
            worst = max(worst, abs(g - want))
    return worst


def float_ok(h: GenHadamard, tol: float = TOL) -> bool:
    return float_deviation(h) < tol * max(1, h.size)


# -- serialization: {"size": int, "root_order": int, "exponents": [[int]]}

def hadamard_to_dict(h: GenHadamard) -> dict:
    return {
        "size": h.size,
        "root_order": h.root_order,
        "exponents": [list(row) for row in h.exponents],
    }


def hadamard_from_dict(data: object) -> GenHadamard:
    serial.expect(isinstance(data, dict), "hadamard document must be a JSON object")
    serial.expect(set(data) == {"size", "root_order", "exponents"},
                  'hadamard document needs exactly the keys "size", "root_order" and "exponents"')
    size, m, raw = data["size"], data["root_order"], data["exponents"]
    serial.expect(serial.is_int(size) and size >= 1, '"size" must be a positive integer')
    serial.expect(serial.is_int(m) and m >= 1, '"root_order" must be a positive integer')
    serial.expect(isinstance(raw, list) and len(raw) == size, '"exponents" must list exactly "size" rows')
    rows = []
    for r, row in enumerate(raw):
        serial.expect(
            isinstance(row, list) and len(row) == size
            and all(serial.is_int(e) and 0 <= e < m for e in row),
            f"row {r} must hold {size} integers in [0, {m})",
        )
        rows.append(tuple(row))
    return GenHadamard(m, tuple(rows))


def load_hadamard(path) -> GenHadamard:
    return hadamard_from_dict(serial.read_json(path))


def save_hadamard(h: GenHadamard, path) -> None:
    serial.write_json(path, hadamard_to_dict(h))
