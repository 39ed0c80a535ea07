"""Command-line interface.

Subcommands: group, klpoly, ej, wgraph, cells, specht, murphy, transition,
verify, rankdiag.  Exit codes: 0 success, 1 verification failure, 2 usage
error (including size-cap violations, which name the cap).  Output is
deterministic: identical invocations produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .cellular import CellularDatum, cellular_rank_report
from .coxeter import CoxeterGroup, CoxeterSpec, build_group, DEFAULT_CAP
from .errors import InfiniteOrTooLarge, InvalidMatrix, TooLarge
from .hecke import kl_basis
from .laurent import LaurentInt
from .parabolic import build_parabolic, system_to_json
from .specht import SpechtModuleJ, relative_kl
from .suites import run_verify
from .typea import (TypeAContext, murphy_basis, murphy_rank,
                    specht_action_typea, transition_matrices)
from .wgraph import (build_wgraph, full_group_cells, wgraph_to_dot,
                     wgraph_to_json)

DEFAULT_SEED = 12345
CACHE_ENV = "KLCELLS_CACHE_DIR"


def _add_group_args(sub: argparse.ArgumentParser) -> None:
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--type", help='named Coxeter type, e.g. "A3", "B3", "I2(7)"')
    src.add_argument("--matrix-file", help="path of a Coxeter matrix file")
    sub.add_argument("--cap", type=int, default=DEFAULT_CAP,
                     help="enumeration cap on the group order")
    sub.add_argument("--cache-dir", default=None,
                     help=f"KL table cache directory (default: ${CACHE_ENV})")


def _parse_j(value: str, group: CoxeterGroup, parser: argparse.ArgumentParser) -> tuple[int, ...]:
    items = [x for x in value.split(",") if x.strip()]
    try:
        J = tuple(sorted({int(x) - 1 for x in items}))
    except ValueError:
        parser.error(f"--j expects comma-separated generator indices, got {value!r}")
    for s in J:
        if s not in group.generators:
            parser.error(f"--j index {s + 1} is out of range for rank {group.rank}")
    return J


def _parse_lam(value: str, parser: argparse.ArgumentParser) -> tuple[int, ...]:
    try:
        shape = tuple(int(x) for x in value.split(",") if x.strip())
    except ValueError:
        parser.error(f"--lam expects comma-separated parts, got {value!r}")
    if not shape or any(p < 1 for p in shape) or list(shape) != sorted(shape, reverse=True):
        parser.error(f"--lam must be a partition (weakly decreasing positive parts), got {value!r}")
    return shape


def _load_group(args, parser: argparse.ArgumentParser) -> CoxeterGroup:
    if args.type is not None:
        spec = CoxeterSpec.named(args.type)
    else:
        spec = CoxeterSpec.from_text(Path(args.matrix_file).read_text(encoding="utf-8"))
    return build_group(spec, cap=args.cap)


def _cache_dir(args) -> str | None:
    return args.cache_dir or os.environ.get(CACHE_ENV) or None


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _poly(p: LaurentInt) -> list[list[int]]:
    return [list(t) for t in p.to_pairs()]


def _word(group: CoxeterGroup, w: int) -> list[int]:
    return [s + 1 for s in group.words[w]]


def _matrix_rows(cols, size: int) -> list[list[list[list[int]]]]:
    return [[_poly(cols[j].get(i, LaurentInt(0))) for j in range(size)]
            for i in range(size)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klcells",
        description="Exact Kazhdan-Lusztig bases, W-graphs, cells and generic "
                    "Specht modules for finite Coxeter groups.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("group", help="enumerate a group; print order and length counts")
    _add_group_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = subs.add_parser("klpoly", help="dump the Kazhdan-Lusztig p-polynomial table")
    _add_group_args(p)
    p.add_argument("--format", choices=("json",), default="json")

    p = subs.add_parser("ej", help="dump the parabolic coset system for J")
    _add_group_args(p)
    p.add_argument("--j", default="", help="comma-separated 1-based generator indices")
    p.add_argument("--format", choices=("json",), default="json")

    p = subs.add_parser("wgraph", help="W-graph of the generic Specht module S^J")
    _add_group_args(p)
    p.add_argument("--j", default="", help="comma-separated 1-based generator indices")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--no-validate", action="store_true",
                   help="skip layer-ideal validation of dropped terms")

    p = subs.add_parser("cells", help="left-cell partition of the whole group")
    _add_group_args(p)
    p.add_argument("--format", choices=("json",), default="json")

    p = subs.add_parser("specht", help="type A: T_i action matrices on S^lambda")
    p.add_argument("--lam", required=True, help="partition, e.g. 2,1")
    p.add_argument("--format", choices=("json",), default="json")

    p = subs.add_parser("murphy", help="type A: Murphy family and rank report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rank-cap", type=int, default=4,
                   help="largest n for which the exact rank is computed")
    p.add_argument("--format", choices=("json",), default="json")

    p = subs.add_parser("transition", help="type A: Murphy <-> W-graph transition matrices")
    p.add_argument("--lam", required=True, help="partition, e.g. 2,1")
    p.add_argument("--format", choices=("json",), default="json")

    p = subs.add_parser("verify", help="run invariant suites; nonzero exit on failure")
    _add_group_args(p)
    p.add_argument("--level", choices=("off", "fast", "full"), default="fast")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="seed for the randomized property checks")

    p = subs.add_parser("rankdiag", help="exact-rank diagnostic of the cellular family")
    _add_group_args(p)
    p.add_argument("--rank-cap", type=int, default=200,
                   help="largest group order for exact whole-algebra elimination")
    p.add_argument("--format", choices=("json",), default="json")
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        return _dispatch(args, parser)
    except (InfiniteOrTooLarge, TooLarge, InvalidMatrix, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


def _dispatch(args, parser) -> int:
    cmd = args.command

    if cmd == "group":
        group = _load_group(args, parser)
        if args.format == "json":
            _emit_json({"type": group.describe(), "order": group.order,
                        "poincare": list(group.poincare())})
        else:
            print(f"order {group.order}")
            print("poincare " + " ".join(str(c) for c in group.poincare()))
        return 0

    if cmd == "klpoly":
        group = _load_group(args, parser)
        table = kl_basis(group, cache_dir=_cache_dir(args))
        entries = []
        for w in range(group.order):
            for y, p in sorted(table.column(w).items()):
                if y != w:
                    entries.append({"w": _word(group, w), "y": _word(group, y),
                                    "poly": _poly(p)})
        _emit_json({"type": group.describe(), "order": group.order, "p": entries})
        return 0

    if cmd == "ej":
        group = _load_group(args, parser)
        J = _parse_j(args.j, group, parser)
        _emit_json(system_to_json(build_parabolic(group, J)))
        return 0

    if cmd == "wgraph":
        group = _load_group(args, parser)
        J = _parse_j(args.j, group, parser)
        datum = CellularDatum(group)
        module = SpechtModuleJ(datum.system(J), datum=datum,
                               validate_drops=not args.no_validate)
        graph = build_wgraph(module, relative_kl(module))
        if args.format == "dot":
            sys.stdout.write(wgraph_to_dot(graph))
        else:
            _emit_json(wgraph_to_json(graph))
        return 0

    if cmd == "cells":
        group = _load_group(args, parser)
        table = kl_basis(group, cache_dir=_cache_dir(args))
        cells = full_group_cells(group, table)
        _emit_json({"type": group.describe(),
                    "cells": [[_word(group, w) for w in cell] for cell in cells]})
        return 0

    if cmd == "specht":
        shape = _parse_lam(args.lam, parser)
        ctx = TypeAContext(sum(shape))
        tabs = ctx.tableaux(shape)
        action = {}
        for s in ctx.group.generators:
            cols = specht_action_typea(ctx, shape, s)
            action[str(s + 1)] = _matrix_rows(cols, len(tabs))
        _emit_json({"lambda": list(shape),
                    "tableaux": [[list(row) for row in t] for t in tabs],
                    "action": action})
        return 0

    if cmd == "murphy":
        ctx = TypeAContext(args.n)
        basis = murphy_basis(ctx)
        payload = {"n": args.n, "count": len(basis), "expected": _factorial(args.n)}
        if args.n <= args.rank_cap:
            payload["rank"] = murphy_rank(ctx)
        else:
            payload["rank"] = None
            payload["note"] = f"rank elimination skipped above n = {args.rank_cap}"
        _emit_json(payload)
        return 0

    if cmd == "transition":
        shape = _parse_lam(args.lam, parser)
        ctx = TypeAContext(sum(shape))
        trans = transition_matrices(ctx, shape)
        size = len(trans.tableaux)
        _emit_json({"lambda": list(shape),
                    "tableaux": [[list(row) for row in t] for t in trans.tableaux],
                    "P": _matrix_rows(trans.P, size),
                    "Pinv": _matrix_rows(trans.P_inv, size)})
        return 0

    if cmd == "verify":
        group = _load_group(args, parser)
        ok, lines = run_verify(group, level=args.level, seed=args.seed,
                               cache_dir=_cache_dir(args))
        for line in lines:
            print(line)
        print(f"verify {group.describe()}: {'OK' if ok else 'FAILED'}")
        return 0 if ok else 1

    if cmd == "rankdiag":
        group = _load_group(args, parser)
        report = cellular_rank_report(CellularDatum(group), cap=args.rank_cap)
        _emit_json(report)
        return 0

    parser.error(f"unknown command {cmd!r}")
    return 2


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
