"""Command line entry point.

Exit codes: 0 all checks passed, 1 invalid input or cap exceeded,
2 a checked property failed, 3 file I/O or malformed JSON.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import extension as ext
from . import quasigroup as qg
from . import suites
from .catalog import catalog_group, is_catalog_name
from .perm import DEFAULT_CLOSURE_CAP, CapExceeded
from .report import FileFormatError, Report, load_json, read_group, read_quasigroup, write_group
from .transversal import (DEFAULT_ENUM_CAP, GroupError, Subgroup, Transversal, all_subgroups,
                          parse_subgroup_spec)

EXIT_OK, EXIT_INPUT, EXIT_PROPERTY, EXIT_IO = 0, 1, 2, 3


def _common(p: argparse.ArgumentParser, samples: int):
    p.add_argument("--seed", type=int, default=suites.DEFAULT_SEED,
                   help=f"random seed (default {suites.DEFAULT_SEED})")
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--cap-closure", type=int, default=DEFAULT_CLOSURE_CAP,
                   help="maximum size of a generated permutation group")
    p.add_argument("--cap-enum", type=int, default=DEFAULT_ENUM_CAP,
                   help="enumerate transversals exhaustively up to this many, sample above")
    p.add_argument("--tol", type=float, default=None, help="override every residual tolerance")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transversal-kit",
                                     description="Right transversals, group torsion and their extension groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transversals", help="enumerate transversals of subgroups of a group")
    p.add_argument("group", help="catalog name (e.g. S3, Z2xS3) or group JSON file")
    p.add_argument("--subgroup", default=None,
                   help='subgroup generated by labels, e.g. "{e,(12)}", or a {"members": [...]} file; '
                        "default: every subgroup")
    p.add_argument("--reps", default=None, help='a {"reps": [...]} file: analyse only this transversal')
    p.add_argument("--generating-only", action="store_true")
    _common(p, 200)

    p = sub.add_parser("extension", help="build the torsion and universal extensions of a quasigroup")
    p.add_argument("quasigroup", help="quasigroup JSON file")
    p.add_argument("--write-torsion", default=None, help="write the torsion extension as a group file")
    p.add_argument("--write-universal", default=None, help="write the universal extension as a group file")
    _common(p, 10_000)

    p = sub.add_parser("sphere", help="sphere transversal suite")
    p.add_argument("--dim", type=int, default=5, help="ambient dimension n (sphere S^{n-1})")
    _common(p, 10_000)

    p = sub.add_parser("cayley", help="division-algebra sphere suite")
    p.add_argument("--dim", type=int, default=8, choices=(1, 2, 4, 8))
    _common(p, 10_000)

    p = sub.add_parser("sweep", help="catalog-wide transversal and torsion sweep")
    p.add_argument("--max-exhaustive", type=int, default=12)
    p.add_argument("--max-order", type=int, default=24)
    _common(p, 200)

    p = sub.add_parser("extension-suite", help="extensions of seeded random quasigroups")
    p.add_argument("--count", type=int, default=100)
    _common(p, 10_000)
    return parser


def _resolve_group(spec: str):
    if is_catalog_name(spec):
        if os.path.exists(spec):
            print(f"warning: {spec!r} is both a catalog name and a file; using the catalog group",
                  file=sys.stderr)
        return spec, catalog_group(spec)
    if not os.path.exists(spec):
        raise FileFormatError(f"{spec}: not a catalog name and no such file")
    return os.path.basename(spec), read_group(spec)


def _subgroups(G, spec):
    if spec is None:
        return all_subgroups(G)
    if os.path.exists(spec):
        data = load_json(spec)
        try:
            return [Subgroup(G, tuple(data["members"]))]
        except (KeyError, TypeError):
            raise GroupError(f"{spec}: expected {{\"members\": [...]}}")
    return [parse_subgroup_spec(G, spec)]


def cmd_transversals(args) -> Report:
    name, G = _resolve_group(args.group)
    subgroups = _subgroups(G, args.subgroup)
    if args.reps is not None:
        if len(subgroups) != 1:
            raise GroupError("--reps needs --subgroup")
        data = load_json(args.reps)
        try:
            t = Transversal(G, subgroups[0], data["reps"])
        except (KeyError, TypeError):
            raise GroupError(f"{args.reps}: expected {{\"reps\": [...]}}")
        rep = suites.transversals_report(name, G, [], args.cap_enum, args.samples, args.seed,
                                         cap_closure=args.cap_closure)
        suites.single_transversal(rep, t, args.cap_closure)
        return rep
    return suites.transversals_report(name, G, subgroups, args.cap_enum, args.samples, args.seed,
                                      generating_only=args.generating_only, cap_closure=args.cap_closure)


def cmd_extension(args) -> Report:
    q = read_quasigroup(args.quasigroup)
    if math.factorial(q.n) > ext.DEFAULT_TABLE_CAP:
        raise CapExceeded(f"cap exceeded: universal extension of a {q.n}-element quasigroup has "
                          f"{math.factorial(q.n)} elements (cap {ext.DEFAULT_TABLE_CAP})")
    rep = Report("extension", quasigroup=os.path.basename(args.quasigroup), n=q.n, seed=args.seed)
    ext.torsion_group(q, cap=args.cap_closure)
    T, U = suites.check_extension(q, rep, samples=args.samples, seed=args.seed)
    rep.add("orders", torsion=T.hpart.order, torsion_extension=T.order, universal_extension=U.order,
            is_group=qg.is_group(q))
    if args.write_torsion:
        write_group(args.write_torsion, T.to_group())
    if args.write_universal:
        write_group(args.write_universal, U.to_group())
    return rep


def cmd_sphere(args) -> Report:
    if args.dim < 1:
        raise ValueError("--dim must be >= 1")
    return suites.sphere_suite(args.dim, args.samples, args.seed, args.tol)


def cmd_cayley(args) -> Report:
    return suites.cayley_suite(args.dim, args.samples, args.seed, args.tol)


def cmd_sweep(args) -> Report:
    return suites.finite_sweep_report(args.max_exhaustive, args.max_order, args.samples, args.seed)


def cmd_extension_suite(args) -> Report:
    return suites.extension_suite(args.count, args.seed, args.samples)


COMMANDS = {
    "transversals": cmd_transversals,
    "extension": cmd_extension,
    "sphere": cmd_sphere,
    "cayley": cmd_cayley,
    "sweep": cmd_sweep,
    "extension-suite": cmd_extension_suite,
}


def render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.to_jsonl()
    if rep.command == "sphere":
        seq = next((r.get("sequence") for r in rep.lines if r["check"] == "discontinuity_witness"), None)
        if seq:
            return rep.to_csv(seq)
    return rep.to_csv()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = COMMANDS[args.command](args)
        text = render(rep, args.format)
        if args.out:
            try:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise FileFormatError(f"{args.out}: {exc.strerror or exc}") from exc
        else:
            sys.stdout.write(text)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CapExceeded, GroupError, qg.QuasigroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK if rep.ok else EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())
