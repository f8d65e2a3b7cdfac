"""Command-line front-end.

Subcommands cover the whole pipeline: generate and combine MOLS, convert
between MOLS and nets, build / verify / tensor sets of mutually unbiased
bases, and compare counting strategies for a dimension.

Exit codes: 0 all requested checks passed, 1 a verification failed,
2 usage or parse error.  Output is deterministic; --json swaps the human
summary on stdout for the module JSON schema of the result.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Sequence

from . import hadamard, latin, mub, net, planner, serial

_VIOLATION_LIMIT = 50


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _load_imports(args) -> planner.ImportsTable:
    path = getattr(args, "imports", None) or os.environ.get("MUBKIT_IMPORTS")
    if not path:
        return planner.ImportsTable()
    return planner.ImportsTable.from_dir(path)


# -- rendering ---------------------------------------------------------------

def _entry_token(exp: int | None, m: int) -> str:
    if exp is None:
        return "0"
    if exp == 0:
        return "1"
    if 2 * exp == m:
        return "-1"
    if exp == 1:
        return "w"
    return f"w^{exp}"


def render_mubs(x: mub.MubSet) -> str:
    """Human listing of an exact set, one line per vector."""
    m = x.root_order
    head = f"d = {x.dim}, k = {x.k} bases, root order {m}"
    if m > 2:
        head += f" (w = exp(2*pi*i/{m}))"
    lines = [head]
    tokens: list[list[str]] = []
    for basis in x.bases:
        for vec in basis.vectors:
            amp = vec.amp_map()
            f = m // vec.root_order
            tokens.append([
                _entry_token(amp[p] * f % m if p in amp else None, m)
                for p in range(x.dim)
            ])
    width = max(len(t) for row in tokens for t in row)
    row_iter = iter(tokens)
    for b, basis in enumerate(x.bases, start=1):
        lines.append(f"basis {b}:")
        for vec in basis.vectors:
            body = " ".join(t.rjust(width) for t in next(row_iter))
            scale = f"1/sqrt({vec.norm_sq}) * " if vec.norm_sq != 1 else ""
            lines.append(f"  {scale}[{body}]")
    return "\n".join(lines)


def _print_mols(m: latin.MolsSet, note: str) -> None:
    print(f"order {m.order}, {m.width} squares ({note})")
    for idx, sq in enumerate(m.squares, start=1):
        print(f"square {idx}:")
        for row in sq.grid:
            print("  " + " ".join(str(v) for v in row))


def _emit_mols(m: latin.MolsSet, args, note: str) -> None:
    if args.output:
        latin.export_mols(m, args.output)
    if args.json:
        print(serial.dumps(latin.mols_to_dict(m)), end="")
    else:
        _print_mols(m, note)


def _emit_net(n: net.Net, args) -> None:
    if args.output:
        net.save_net(n, args.output)
    if args.json:
        print(serial.dumps(net.net_to_dict(n)), end="")
    else:
        print(f"net: s = {n.s}, k = {n.k}, d = {n.d}")


# -- verification plumbing ---------------------------------------------------

def _modes(args, x: mub.MubSet, file=sys.stdout) -> list[str] | int:
    """Resolve the requested verification modes against the data."""
    both = getattr(args, "both", False)
    use_float = getattr(args, "float", False)
    if both and use_float:
        return _fail("--float and --both are mutually exclusive")
    if both:
        if not x.is_exact:
            return _fail("--both needs exponent amplitudes; this set is float-only")
        return ["exact", "float"]
    if use_float:
        return ["float"]
    if not x.is_exact:
        print("note: float amplitudes only; using the float oracle", file=file)
        return ["float"]
    return ["exact"]


def _print_report(report: mub.MubReport, file=sys.stdout) -> None:
    if report.ok:
        print(f"verification ({report.mode}): ok", file=file)
        return
    print(f"verification ({report.mode}): FAILED, {len(report.violations)} violations",
          file=file)
    for v in report.violations[:_VIOLATION_LIMIT]:
        print(f"  {v.kind}: basis {v.basis} vector {v.index}"
              f" vs basis {v.basis2} vector {v.index2}: {v.detail}", file=file)
    if len(report.violations) > _VIOLATION_LIMIT:
        print(f"  ... and {len(report.violations) - _VIOLATION_LIMIT} more", file=file)


def _verify_and_report(x: mub.MubSet, args) -> int:
    # --json keeps stdout parseable: the report moves to stderr
    dest = sys.stderr if getattr(args, "json", False) else sys.stdout
    modes = _modes(args, x, file=dest)
    if isinstance(modes, int):
        return modes
    jobs = getattr(args, "jobs", 1)
    reports = [mub.verify_mubs(x, mode=mode, jobs=jobs) for mode in modes]
    for report in reports:
        _print_report(report, file=dest)
    if len(reports) == 2:
        same = (reports[0].ok == reports[1].ok
                and reports[0].failing_pairs() == reports[1].failing_pairs())
        print(f"oracle agreement: {'ok' if same else 'DISAGREE'}", file=dest)
        if not same:
            return 1
    return 0 if all(r.ok for r in reports) else 1


# -- mols --------------------------------------------------------------------

def cmd_mols_gen(args) -> int:
    s = args.order
    if s < 2:
        return _fail(f"order must be >= 2, got {s}")
    if args.cyclic:
        m = latin.MolsSet(s, (latin.cyclic_square(s),))
        _emit_mols(m, args, "cyclic")
        return 0
    from .galois import prime_power

    if prime_power(s) is None:
        return _fail(f"order {s} is not a prime power; use --cyclic or product")
    m = latin.complete_mols_prime_power(s)
    _emit_mols(m, args, "complete set")
    return 0


def cmd_mols_verify(args) -> int:
    try:
        m = latin.import_mols(args.file)
    except (latin.NotLatinError, latin.NotOrthogonalError) as exc:
        print(f"verification failed: {exc}")
        return 1
    print(f"ok: {m.width} mutually orthogonal Latin squares of order {m.order}")
    return 0


def cmd_mols_product(args) -> int:
    a = latin.import_mols(args.file_a)
    b = latin.import_mols(args.file_b)
    m = latin.macneish_product(a, b)
    _emit_mols(m, args, "product")
    return 0


# -- net ---------------------------------------------------------------------

def cmd_net_from_mols(args) -> int:
    m = latin.import_mols(args.file)
    _emit_net(net.net_from_mols(m), args)
    return 0


def cmd_net_to_mols(args) -> int:
    n = net.load_net(args.file)
    try:
        m = net.mols_from_net(n)
    except ValueError as exc:
        if str(exc).startswith("Inconsistent"):
            print(f"verification failed: {exc}")
            return 1
        raise
    _emit_mols(m, args, "from net")
    return 0


def cmd_net_verify(args) -> int:
    n = net.load_net(args.file)
    report = net.verify_net(n)
    if report.ok:
        print(f"ok: ({report.k},{report.s})-net, 0 violations")
        return 0
    print(f"verification failed: {len(report.violations)} violations")
    for v in report.violations[:_VIOLATION_LIMIT]:
        where = f"block {v.block} vector {v.index}"
        if v.block2 is not None:
            where += f" vs block {v.block2} vector {v.index2}"
        print(f"  {v.kind}: {where}: {v.detail}")
    if len(report.violations) > _VIOLATION_LIMIT:
        print(f"  ... and {len(report.violations) - _VIOLATION_LIMIT} more")
    return 1


# -- mub ---------------------------------------------------------------------

def _emit_mubs(x: mub.MubSet, args, render: bool) -> None:
    if args.output:
        mub.export_mubs(x, args.output)
    if args.json:
        print(serial.dumps(mub.mubs_to_dict(x)), end="")
    elif render and x.is_exact:
        print(render_mubs(x))
    else:
        print(f"d = {x.dim}, k = {x.k} bases ({x.provenance})")


def cmd_mub_build(args) -> int:
    s = args.square
    if s < 2:
        return _fail(f"--square must be >= 2, got {s}")
    table = _load_imports(args)
    mols = latin.best_mols(s, imported=table.mols.get(s))
    n = net.net_from_mols(mols)
    x = mub.build_mubs(n, hadamard.dft(s))
    _emit_mubs(x, args, render=True)
    return _verify_and_report(x, args)


def cmd_mub_verify(args) -> int:
    x = mub.mubs_from_dict(serial.read_json(args.file))
    print(f"d = {x.dim}, k = {x.k} bases")
    return _verify_and_report(x, args)


def cmd_mub_tensor(args) -> int:
    try:
        a = mub.import_mubs(args.file_a, jobs=getattr(args, "jobs", 1))
        b = mub.import_mubs(args.file_b, jobs=getattr(args, "jobs", 1))
    except mub.VerificationFailedError as exc:
        print(f"verification failed on input: {exc}")
        return 1
    x = mub.tensor_mubs(a, b)
    _emit_mubs(x, args, render=False)
    return _verify_and_report(x, args)


# -- plan --------------------------------------------------------------------

def _bottleneck(node: planner.PlanNode) -> planner.PlanNode:
    while node.kind == "tensor":
        node = min(node.children, key=lambda c: c.count)
    return node


def _count_tag(node: planner.PlanNode) -> str:
    leaf = _bottleneck(node)
    if leaf.kind == "prime-power":
        return "cited"
    if leaf.kind == "square":
        if leaf.provenance != "cited-existence":
            return "constructible"
        if math.isqrt(leaf.d) >= latin.WILSON_MIN_ORDER:
            return "cited-existence via Wilson"
        return "cited-existence"
    if leaf.kind == "imported-mubs":
        return "constructible"
    return "trivial"


def cmd_plan(args) -> int:
    table = _load_imports(args)
    result = planner.plan(args.dim, table)
    if args.json:
        print(serial.dumps(result.to_dict()), end="")
        return 0
    factors = " x ".join(
        f"{p}^{e}" if e > 1 else str(p) for p, e in latin.factorize(result.d)
    )
    print(f"d = {result.d} = {factors}" if "x" in factors or "^" in factors
          else f"d = {result.d}")
    print(f"best: {result.best_count} ({_count_tag(result.best)})")
    print(f"constructible: {result.best_constructible_count}")
    print(f"reduce-to-prime-powers: {result.prime_power_reduction_count}")
    print(f"best route: {result.best.describe()}")
    print(f"constructible route: {result.best_constructible.describe()}")
    return 0


# -- parser ------------------------------------------------------------------

def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", metavar="FILE", help="write the result as JSON to FILE")
    p.add_argument("--json", action="store_true", help="print JSON instead of a human summary")


def _add_verify_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--float", action="store_true",
                   help="use the floating-point oracle instead of exact arithmetic")
    p.add_argument("--both", action="store_true",
                   help="run both oracles and fail on any disagreement")
    p.add_argument("--jobs", type=int, default=1, metavar="N",
                   help="verify basis pairs with N worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mubkit",
        description="Construct and verify mutually unbiased bases in square dimensions.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    mols_p = top.add_parser("mols", help="generate, verify and combine Latin squares")
    mols_sub = mols_p.add_subparsers(dest="subcommand", required=True)
    p = mols_sub.add_parser("gen", help="generate a MOLS set")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--cyclic", action="store_true", help="one cyclic square instead of a complete set")
    _add_output_flags(p)
    p.set_defaults(func=cmd_mols_gen)
    p = mols_sub.add_parser("verify", help="re-verify a MOLS file")
    p.add_argument("file")
    p.set_defaults(func=cmd_mols_verify)
    p = mols_sub.add_parser("product", help="MacNeish product of two MOLS files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    _add_output_flags(p)
    p.set_defaults(func=cmd_mols_product)

    net_p = top.add_parser("net", help="convert between MOLS and nets, verify nets")
    net_sub = net_p.add_subparsers(dest="subcommand", required=True)
    p = net_sub.add_parser("from-mols", help="build the net of a MOLS file")
    p.add_argument("file")
    _add_output_flags(p)
    p.set_defaults(func=cmd_net_from_mols)
    p = net_sub.add_parser("to-mols", help="read the MOLS back out of a net file")
    p.add_argument("file")
    _add_output_flags(p)
    p.set_defaults(func=cmd_net_to_mols)
    p = net_sub.add_parser("verify", help="verify a net file")
    p.add_argument("file")
    p.set_defaults(func=cmd_net_verify)

    mub_p = top.add_parser("mub", help="build, verify and tensor mutually unbiased bases")
    mub_sub = mub_p.add_subparsers(dest="subcommand", required=True)
    p = mub_sub.add_parser("build", help="k bases of C^(s^2) from MOLS and the size-s DFT")
    p.add_argument("--square", type=int, required=True, metavar="S",
                   help="side s of the dimension d = s^2")
    p.add_argument("--imports", metavar="DIR", help="directory of imported tables")
    _add_output_flags(p)
    _add_verify_flags(p)
    p.set_defaults(func=cmd_mub_build)
    p = mub_sub.add_parser("verify", help="verify a mub file")
    p.add_argument("file")
    _add_verify_flags(p)
    p.set_defaults(func=cmd_mub_verify)
    p = mub_sub.add_parser("tensor", help="tensor two verified mub files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    _add_output_flags(p)
    _add_verify_flags(p)
    p.set_defaults(func=cmd_mub_tensor)

    p = top.add_parser("plan", help="compare guaranteed counts for a dimension")
    p.add_argument("dim", type=int)
    p.add_argument("--imports", metavar="DIR", help="directory of imported tables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_plan)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except serial.ParseError as exc:
        return _fail(str(exc))
    except mub.VerificationFailedError as exc:
        print(f"verification failed: {exc}")
        return 1
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
