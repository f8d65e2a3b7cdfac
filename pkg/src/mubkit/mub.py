"""Mutually unbiased bases built from nets and generalized Hadamard matrices.

A vector here is sparse: s amplitudes placed on the support of a net
incidence vector, each amplitude a root of unity taken from one row of a
generalized Hadamard matrix, with overall scale 1/sqrt(norm_sq).  Block b
of a (k,s)-net yields one basis of C^(s^2) holding s*s vectors (incidence
vector index outer, Hadamard row index inner), and the k blocks give k
mutually unbiased bases.

Two pairs of vectors from different bases share exactly one support point,
so their unscaled inner product S is a single root of unity and
|S|^2 / (nu * nv) = 1/s^2 on the nose; pairs from the same basis either
have disjoint supports (S = 0) or differ only in the Hadamard row, where
row orthogonality makes S vanish.  Verification re-derives all of this
from scratch for any set, exactly (group-ring arithmetic modulo a
cyclotomic polynomial) or in floating point (tolerance 1e-9), without
assuming how the set was produced.

Amplitudes are stored either as integer exponents against a root order
(exact route) or as complex numbers (float-only route, e.g. imported data).
"""

from __future__ import annotations

import cmath
import math
import multiprocessing
import os
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from . import serial
from .cyclotomic import TOL, Cyclotomic, counts_to_cyclotomic
from .hadamard import GenHadamard, verify_hadamard
from .net import IncidenceVector, Net, verify_net


class VerificationFailedError(ValueError):
    """Raised when imported data fails verification; carries the report."""

    def __init__(self, report: "MubReport"):
        self.report = report
        super().__init__(
            f"verification failed in {report.mode} mode: {len(report.violations)} violations"
        )


@dataclass(frozen=True)
class MubVector:
    """Sparse vector: amplitudes on a support, scaled by 1/sqrt(norm_sq).

    Exactly one of amps (pairs (position, exponent) against root_order) and
    amps_float (pairs (position, complex amplitude)) is set.
    """

    dim: int
    root_order: int
    norm_sq: int
    amps: tuple[tuple[int, int], ...] | None = None
    amps_float: tuple[tuple[int, complex], ...] | None = None

    def __post_init__(self) -> None:
        if self.dim < 1 or self.root_order < 1 or self.norm_sq < 1:
            raise ValueError("dim, root_order and norm_sq must be positive")
        if (self.amps is None) == (self.amps_float is None):
            raise ValueError("exactly one of amps and amps_float must be given")
        entries = self.amps if self.amps is not None else self.amps_float
        last = -1
        for pos, value in entries:
            if not 0 <= pos < self.dim:
                raise ValueError(f"position {pos} out of range for dim {self.dim}")
            if pos <= last:
                raise ValueError("positions must be strictly increasing")
            last = pos
            if self.amps is not None and not 0 <= value < self.root_order:
                raise ValueError(f"exponent {value} out of range for root order {self.root_order}")

    @property
    def is_exact(self) -> bool:
        return self.amps is not None

    def amp_map(self) -> dict[int, int]:
        assert self.amps is not None
        return dict(self.amps)

    def float_map(self) -> dict[int, complex]:
        if self.amps is not None:
            m = self.root_order
            return {pos: cmath.exp(2j * cmath.pi * e / m) for pos, e in self.amps}
        return dict(self.amps_float)


@dataclass(frozen=True)
class MubBasis:
    vectors: tuple[MubVector, ...]


@dataclass(frozen=True)
class MubSet:
    dim: int
    bases: tuple[MubBasis, ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.bases) > self.dim + 1:
            raise ValueError(
                f"{len(self.bases)} bases in dimension {self.dim} exceeds the bound d + 1"
            )
        for b, basis in enumerate(self.bases):
            if len(basis.vectors) != self.dim:
                raise ValueError(f"basis {b} has {len(basis.vectors)} vectors, want {self.dim}")
            for vec in basis.vectors:
                if vec.dim != self.dim:
                    raise ValueError(f"basis {b} holds a vector of dim {vec.dim}, want {self.dim}")

    @property
    def k(self) -> int:
        return len(self.bases)

    @property
    def is_exact(self) -> bool:
        return all(v.is_exact for basis in self.bases for v in basis.vectors)

    @property
    def root_order(self) -> int:
        out = 1
        for basis in self.bases:
            for v in basis.vectors:
                if v.is_exact:
                    out = math.lcm(out, v.root_order)
        return out


def embed(row: Sequence[int], root_order: int, support_vec: IncidenceVector) -> MubVector:
    """Place the exponents of one Hadamard row on the support of a 0/1 vector.

    Entry l of the row lands at the l-th smallest support position.
    """
    w = support_vec.weight
    if len(row) != w:
        raise ValueError(f"WeightMismatch: row length {len(row)} vs support weight {w}")
    amps = tuple((pos, row[l] % root_order) for l, pos in enumerate(support_vec.support))
    return MubVector(dim=support_vec.length, root_order=root_order, norm_sq=w, amps=amps)


def build_mubs(net: Net, had: GenHadamard) -> MubSet:
    """k mutually unbiased bases of C^(s^2) from a (k,s)-net and an s x s
    generalized Hadamard matrix.

    Both inputs are verified first.  Basis b holds, for incidence vector i
    of block b and Hadamard row l, the embedding of row l on vector i
    (i outer, l inner), scaled by 1/sqrt(s).
    """
    if had.size != net.s:
        raise ValueError(f"SizeMismatch: hadamard size {had.size} vs net order {net.s}")
    if not verify_net(net).ok:
        raise ValueError("UnverifiedInput: net fails verification")
    if not verify_hadamard(had).ok:
        raise ValueError("UnverifiedInput: hadamard matrix fails verification")
    s = net.s
    bases = tuple(
        MubBasis(tuple(
            embed(had.exponents[l], had.root_order, block[i])
            for i in range(s)
            for l in range(s)
        ))
        for block in net.blocks
    )
    return MubSet(dim=s * s, bases=bases, provenance="net+hadamard")


def standard_basis(d: int) -> MubSet:
    """The single computational basis of C^d."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    vecs = tuple(MubVector(dim=d, root_order=1, norm_sq=1, amps=((p, 0),)) for p in range(d))
    return MubSet(dim=d, bases=(MubBasis(vecs),), provenance="trivial")


def inner_product(u: MubVector, v: MubVector) -> Cyclotomic:
    """Unscaled exact inner product S(u, v) = sum over common support of
    u_p * conj(v_p); the physical inner product is S / sqrt(nu * nv)."""
    if u.dim != v.dim:
        raise ValueError(f"DimMismatch: {u.dim} vs {v.dim}")
    if not (u.is_exact and v.is_exact):
        raise ValueError("ExactUnavailable: exact inner product needs exponent amplitudes")
    m = math.lcm(u.root_order, v.root_order)
    fu, fv = m // u.root_order, m // v.root_order
    vmap = u.amp_map() if u is v else v.amp_map()
    counts: Counter[int] = Counter()
    for pos, eu in u.amps:
        ev = vmap.get(pos)
        if ev is not None:
            counts[(eu * fu - ev * fv) % m] += 1
    return counts_to_cyclotomic(m, counts)


def inner_product_float(u: MubVector, v: MubVector) -> complex:
    """Unscaled numeric inner product over the common support."""
    if u.dim != v.dim:
        raise ValueError(f"DimMismatch: {u.dim} vs {v.dim}")
    vmap = v.float_map()
    total = 0j
    for pos, amp in u.float_map().items():
        other = vmap.get(pos)
        if other is not None:
            total += amp * other.conjugate()
    return total


@dataclass(frozen=True)
class MubViolation:
    kind: str  # "norm" | "orthogonality" | "unbiasedness"
    basis: int
    index: int
    basis2: int
    index2: int
    detail: str = ""

    def pair(self) -> tuple[int, int, int, int]:
        return (self.basis, self.index, self.basis2, self.index2)

    def sort_key(self):
        return (self.basis, self.index, self.basis2, self.index2, self.kind)


@dataclass(frozen=True)
class MubReport:
    mode: str
    dim: int
    k: int
    violations: tuple[MubViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def failing_pairs(self) -> frozenset[tuple[int, int, int, int]]:
        return frozenset(v.pair() for v in self.violations)


def _exact_tables(x: MubSet):
    """Per basis: amplitude dicts with exponents lifted to the set root order,
    plus an inverted index position -> [(vector index, exponent)]."""
    m = x.root_order
    tables = []
    for basis in x.bases:
        maps = []
        inv: list[list[tuple[int, int]]] = [[] for _ in range(x.dim)]
        for j, vec in enumerate(basis.vectors):
            f = m // vec.root_order
            amp = {pos: e * f % m for pos, e in vec.amps}
            maps.append(amp)
            for pos, e in amp.items():
                inv[pos].append((j, e))
        tables.append((maps, inv))
    return m, tables


def _float_tables(x: MubSet):
    tables = []
    for basis in x.bases:
        maps = [vec.float_map() for vec in basis.vectors]
        inv: list[list[tuple[int, complex]]] = [[] for _ in range(x.dim)]
        for j, amp in enumerate(maps):
            for pos, a in amp.items():
                inv[pos].append((j, a))
        tables.append((maps, inv))
    return tables


def _check_norms_exact(x: MubSet, b: int) -> list[MubViolation]:
    out = []
    for i, vec in enumerate(x.bases[b].vectors):
        if len(vec.amps) != vec.norm_sq:
            out.append(MubViolation("norm", b, i, b, i,
                                    f"|u|^2 = {len(vec.amps)}/{vec.norm_sq}"))
    return out


def _check_norms_float(x: MubSet, b: int, maps) -> list[MubViolation]:
    out = []
    for i, vec in enumerate(x.bases[b].vectors):
        amp = maps[i]
        off_unit = max((abs(abs(a) - 1.0) for a in amp.values()), default=0.0)
        norm = sum(abs(a) ** 2 for a in amp.values()) / vec.norm_sq
        if off_unit >= TOL or abs(norm - 1.0) >= TOL:
            out.append(MubViolation("norm", b, i, b, i,
                                    f"|u|^2 = {norm:.12f}, max unit deviation {off_unit:.3e}"))
    return out


def _pair_violations_exact(x: MubSet, m: int, tables, b: int, c: int) -> list[MubViolation]:
    out = []
    d = x.dim
    maps_b, _ = tables[b]
    maps_c, inv_c = tables[c]
    vecs_b = x.bases[b].vectors
    vecs_c = x.bases[c].vectors
    if b == c:
        out.extend(_check_norms_exact(x, b))
        # S vanishes outright for disjoint supports, so only overlapping
        # pairs (found through the inverted index) need the exact test.
        for i, amp_u in enumerate(maps_b):
            partners: dict[int, Counter] = {}
            for pos, eu in amp_u.items():
                for j, ev in inv_c[pos]:
                    if j > i:
                        partners.setdefault(j, Counter())[(eu - ev) % m] += 1
            for j in sorted(partners):
                if not counts_to_cyclotomic(m, partners[j]).is_zero():
                    out.append(MubViolation("orthogonality", b, i, c, j, "S(u, v) != 0"))
        return out
    for i, amp_u in enumerate(maps_b):
        nu = vecs_b[i].norm_sq
        partners = {}
        for pos, eu in amp_u.items():
            for j, ev in inv_c[pos]:
                partners.setdefault(j, []).append((eu - ev) % m)
        for j in range(d):
            nv = vecs_c[j].norm_sq
            if nu * nv % d:
                raise ValueError(
                    f"NonIntegerTarget: nu*nv = {nu * nv} not divisible by d = {d} "
                    f"for bases {b},{c} vectors {i},{j}"
                )
            target = nu * nv // d
            diffs = partners.get(j)
            if diffs is None:
                out.append(MubViolation("unbiasedness", b, i, c, j,
                                        f"|S|^2 = 0, want {target}"))
                continue
            if len(diffs) == 1 and target == 1:
                continue  # a single root of unity has |S|^2 = 1 exactly
            s_val = counts_to_cyclotomic(m, Counter(diffs))
            if not (s_val * s_val.conj() - Cyclotomic.from_int(target)).is_zero():
                out.append(MubViolation("unbiasedness", b, i, c, j,
                                        f"|S|^2 != {target}"))
    return out


def _pair_violations_float(x: MubSet, tables, b: int, c: int) -> list[MubViolation]:
    out = []
    d = x.dim
    maps_b, _ = tables[b]
    maps_c, inv_c = tables[c]
    vecs_b = x.bases[b].vectors
    vecs_c = x.bases[c].vectors
    if b == c:
        out.extend(_check_norms_float(x, b, maps_b))
        for i, amp_u in enumerate(maps_b):
            nu = vecs_b[i].norm_sq
            partners: dict[int, complex] = {}
            for pos, au in amp_u.items():
                for j, av in inv_c[pos]:
                    if j > i:
                        partners[j] = partners.get(j, 0j) + au * av.conjugate()
            for j in sorted(partners):
                dev = abs(partners[j]) ** 2 / (nu * vecs_c[j].norm_sq)
                if dev >= TOL:
                    out.append(MubViolation("orthogonality", b, i, c, j,
                                            f"|<u,v>|^2 = {dev:.3e}"))
        return out
    for i, amp_u in enumerate(maps_b):
        nu = vecs_b[i].norm_sq
        partners = {}
        for pos, au in amp_u.items():
            for j, av in inv_c[pos]:
                partners[j] = partners.get(j, 0j) + au * av.conjugate()
        for j in range(d):
            nv = vecs_c[j].norm_sq
            s_val = partners.get(j, 0j)
            dev = abs(abs(s_val) ** 2 / (nu * nv) - 1.0 / d)
            if dev >= TOL:
                out.append(MubViolation("unbiasedness", b, i, c, j,
                                        f"| |<u,v>|^2 - 1/d | = {dev:.3e}"))
    return out


_WORKER_STATE: dict = {}


def _init_worker(x: MubSet, mode: str) -> None:
    _WORKER_STATE["x"] = x
    _WORKER_STATE["mode"] = mode
    if mode == "exact":
        _WORKER_STATE["prep"] = _exact_tables(x)
    else:
        _WORKER_STATE["prep"] = _float_tables(x)


def _run_pair(task: tuple[int, int]) -> list[MubViolation]:
    b, c = task
    x = _WORKER_STATE["x"]
    if _WORKER_STATE["mode"] == "exact":
        m, tables = _WORKER_STATE["prep"]
        return _pair_violations_exact(x, m, tables, b, c)
    return _pair_violations_float(x, _WORKER_STATE["prep"], b, c)


def verify_mubs(x: MubSet, mode: str = "exact", jobs: int = 1) -> MubReport:
    """Check norms, within-basis orthogonality and cross-basis unbiasedness
    for every pair of vectors, from scratch.

    mode "exact" decides each condition in the cyclotomic group ring and
    needs exponent amplitudes everywhere; mode "float" compares numerically
    against tolerance 1e-9.  jobs > 1 spreads basis pairs across processes;
    the report is identical for any job count.
    """
    if mode not in ("exact", "float"):
        raise ValueError(f'mode must be "exact" or "float", got {mode!r}')
    if mode == "exact" and not x.is_exact:
        raise ValueError("ExactUnavailable: set has float-only amplitudes")
    tasks = [(b, c) for b in range(x.k) for c in range(b, x.k)]
    if jobs > 1 and len(tasks) > 1:
        ctx = multiprocessing.get_context("fork" if os.name == "posix" else None)
        with ctx.Pool(min(jobs, len(tasks)), _init_worker, (x, mode)) as pool:
            chunks = pool.map(_run_pair, tasks)
    else:
        _init_worker(x, mode)
        chunks = [_run_pair(t) for t in tasks]
    violations = sorted((v for chunk in chunks for v in chunk), key=MubViolation.sort_key)
    return MubReport(mode=mode, dim=x.dim, k=x.k, violations=tuple(violations))


def tensor_mubs(a: MubSet, b: MubSet) -> MubSet:
    """Combine sets for dimensions dA and dB into min(kA, kB) bases of
    C^(dA*dB): vector (u, v) has amplitude u_p * v_q at position p*dB + q.

    Both inputs are expected to be verified.  A factor of dimension 1 acts
    as the identity: the other set comes back unchanged.
    """
    if not a.bases or not b.bases:
        raise ValueError("EmptyInput: both sets need at least one basis")
    if a.dim == 1:
        return replace(b, provenance="tensor")
    if b.dim == 1:
        return replace(a, provenance="tensor")
    k = min(a.k, b.k)
    d = a.dim * b.dim
    exact = a.is_exact and b.is_exact
    m = math.lcm(a.root_order, b.root_order) if exact else 1
    bases = []
    for t in range(k):
        vecs = []
        for u in a.bases[t].vectors:
            for v in b.bases[t].vectors:
                norm = u.norm_sq * v.norm_sq
                if exact:
                    fu, fv = m // u.root_order, m // v.root_order
                    amps = tuple(
                        (pu * b.dim + pv, (eu * fu + ev * fv) % m)
                        for pu, eu in u.amps
                        for pv, ev in v.amps
                    )
                    vecs.append(MubVector(dim=d, root_order=m, norm_sq=norm, amps=amps))
                else:
                    amps_f = tuple(
                        (pu * b.dim + pv, au * av)
                        for pu, au in sorted(u.float_map().items())
                        for pv, av in sorted(v.float_map().items())
                    )
                    vecs.append(MubVector(dim=d, root_order=1, norm_sq=norm, amps_float=amps_f))
        bases.append(MubBasis(tuple(vecs)))
    return MubSet(dim=d, bases=tuple(bases), provenance="tensor")


# -- serialization -----------------------------------------------------------
#
# {"dim": d, "root_order": m, "bases": [[vector, ...], ...]} where vector is
# {"norm_sq": n, "amps": [[pos, exp], ...]} for exact amplitudes or
# {"norm_sq": n, "amps_float": [[pos, re, im], ...]} otherwise.

def mubs_to_dict(x: MubSet) -> dict:
    m = x.root_order
    bases = []
    for basis in x.bases:
        out_vecs = []
        for vec in basis.vectors:
            if vec.is_exact:
                f = m // vec.root_order
                out_vecs.append({
                    "norm_sq": vec.norm_sq,
                    "amps": [[pos, e * f % m] for pos, e in vec.amps],
                })
            else:
                out_vecs.append({
                    "norm_sq": vec.norm_sq,
                    "amps_float": [[pos, a.real, a.imag] for pos, a in vec.amps_float],
                })
        bases.append(out_vecs)
    return {"dim": x.dim, "root_order": m, "bases": bases}


def mubs_from_dict(data: object, provenance: str = "imported") -> MubSet:
    serial.expect(isinstance(data, dict), "mub document must be a JSON object")
    serial.expect(set(data) == {"dim", "root_order", "bases"},
                  'mub document needs exactly the keys "dim", "root_order" and "bases"')
    d, m, raw = data["dim"], data["root_order"], data["bases"]
    serial.expect(serial.is_int(d) and d >= 1, '"dim" must be a positive integer')
    serial.expect(serial.is_int(m) and m >= 1, '"root_order" must be a positive integer')
    serial.expect(isinstance(raw, list), '"bases" must be a list')
    bases = []
    for bi, basis in enumerate(raw):
        serial.expect(isinstance(basis, list), f"basis {bi} must be a list")
        vecs = []
        for vi, obj in enumerate(basis):
            where = f"basis {bi} vector {vi}"
            serial.expect(isinstance(obj, dict), f"{where} must be an object")
            serial.expect(
                set(obj) in ({"norm_sq", "amps"}, {"norm_sq", "amps_float"}),
                f'{where} needs "norm_sq" and exactly one of "amps", "amps_float"',
            )
            n = obj["norm_sq"]
            serial.expect(serial.is_int(n) and n >= 1, f'{where}: "norm_sq" must be a positive integer')
            try:
                if "amps" in obj:
                    serial.expect(
                        isinstance(obj["amps"], list) and all(
                            isinstance(t, list) and len(t) == 2
                            and serial.is_int(t[0]) and serial.is_int(t[1])
                            for t in obj["amps"]
                        ),
                        f'{where}: "amps" must be a list of [position, exponent] pairs',
                    )
                    vec = MubVector(dim=d, root_order=m, norm_sq=n,
                                    amps=tuple((p, e) for p, e in obj["amps"]))
                else:
                    serial.expect(
                        isinstance(obj["amps_float"], list) and all(
                            isinstance(t, list) and len(t) == 3
                            and serial.is_int(t[0])
                            and all(isinstance(z, (int, float)) and not isinstance(z, bool)
                                    for z in t[1:])
                            for t in obj["amps_float"]
                        ),
                        f'{where}: "amps_float" must be a list of [position, re, im] triples',
                    )
                    vec = MubVector(dim=d, root_order=1, norm_sq=n,
                                    amps_float=tuple((p, complex(re, im))
                                                     for p, re, im in obj["amps_float"]))
            except ValueError as exc:
                raise serial.ParseError(f"{where}: {exc}") from None
            vecs.append(vec)
        bases.append(MubBasis(tuple(vecs)))
    try:
        return MubSet(dim=d, bases=tuple(bases), provenance=provenance)
    except ValueError as exc:
        raise serial.ParseError(str(exc)) from None


def verified_from_dict(data: object, jobs: int = 1) -> MubSet:
    """Parse and verify a mub document; float-only data gets the weaker
    provenance tag since no exact check is possible for it."""
    x = mubs_from_dict(data)
    if x.is_exact:
        report = verify_mubs(x, mode="exact", jobs=jobs)
    else:
        report = verify_mubs(x, mode="float", jobs=jobs)
        x = replace(x, provenance="float-verified only")
    if not report.ok:
        raise VerificationFailedError(report)
    return x


def import_mubs(path, jobs: int = 1) -> MubSet:
    """Load and verify a mub file; raises VerificationFailedError on bad data."""
    return verified_from_dict(serial.read_json(path), jobs=jobs)


def export_mubs(x: MubSet, path) -> None:
    serial.write_json(path, mubs_to_dict(x))
