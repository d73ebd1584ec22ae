"""Command line interface.

Exit codes: 0 all conclusions hold or inputs were out of scope, 1 a certified
conclusion failed, 2 invalid input, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import (CATALOG_NAMES, CatalogEntry, catalog as full_catalog,
                      fixture, gen_boolean, gen_chain, gen_mo, gen_product,
                      gen_random)
from .certificate import FAILS
from .decompose import decompose_join_central, decompose_join_covers
from .homog import check_uniqueness, homogeneous_decomposition
from .poset import PosetError
from .relations import finite_elements, rel_cover_eq, rel_cover_leq, rel_leq
from .textfmt import ParseError, parse_entry, serialize_entry, to_dot
from .verify import run_verification, summary_lines
from .zstruct import ZContext, central_cover

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_PARSE = 3


def _load(path: str) -> CatalogEntry:
    with open(path, encoding="utf-8") as handle:
        return parse_entry(handle.read())


def _relation_by_name(entry, ctx, name):
    builtin = {
        "leq": lambda: rel_leq(entry.poset),
        "cover_leq": lambda: rel_cover_leq(entry.poset, ctx.z),
        "cover_eq": lambda: rel_cover_eq(entry.poset, ctx.z),
    }
    if name in entry.relations:
        return entry.relations[name]
    if name in builtin:
        return builtin[name]()
    raise PosetError(f"unknown relation {name!r}")


def cmd_check(args) -> int:
    entry = _load(args.file)
    P = entry.poset
    print(f"poset {entry.name}: {P.n} elements, bottom={P.label(P.bottom)}"
          + (f", top={P.label(P.top)}" if P.top is not None else ", no top"))
    if entry.perp is not None:
        print("orthocomplementation: valid")
    for name in sorted(entry.sets):
        print(f"set {name}: {' '.join(P.labels_of(entry.sets[name]))}")
    for name in sorted(entry.relations):
        print(f"rel {name}: {entry.relations[name].pair_count} pairs")
    return EXIT_OK


def cmd_cover(args) -> int:
    entry = _load(args.file)
    ctx = ZContext(entry.poset, entry.set_mask(args.z))
    p = entry.poset.index(args.p)
    print(entry.poset.label(central_cover(ctx, p)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    entry = _load(args.file)
    P = entry.poset
    ctx = ZContext(P, entry.set_mask(args.z))
    i_mask = entry.set_mask(args.i)
    if args.mode == "icz":
        cert = decompose_join_central(ctx, i_mask)
    elif args.mode == "czi":
        cert = decompose_join_covers(ctx, i_mask)
    else:
        if entry.ortho is None:
            raise PosetError("homogeneous decomposition needs an orthocomplementation")
        decomposition, cert = homogeneous_decomposition(entry.ortho, ctx, i_mask)
        if cert.ok:
            unique = check_uniqueness(entry.ortho, ctx, i_mask, decomposition)
            cert.details["uniqueness"] = unique.to_json()
    print(json.dumps(cert.to_json(), indent=2, sort_keys=True))
    return EXIT_FAILED if cert.status == FAILS else EXIT_OK


def cmd_finite(args) -> int:
    entry = _load(args.file)
    P = entry.poset
    ctx = ZContext(P, entry.set_mask(args.z))
    rel = _relation_by_name(entry, ctx, args.rel)
    report = finite_elements(P, rel)
    payload = {
        "finite": P.labels_of(report.finite),
        "counterexamples": {P.label(p): P.label(q)
                            for p, q in sorted(report.counterexamples.items())},
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    entries = []
    scope = "catalog"
    if args.file:
        entries = [_load(path) for path in args.file]
        scope = "file"
    elif not args.catalog and not args.random:
        args.catalog = True
    if args.catalog:
        entries = entries + full_catalog()
    report = run_verification(scope, entries, random_count=args.random,
                              max_n=args.max_n, seed=args.seed,
                              workers=args.workers)
    for line in summary_lines(report):
        print(line)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(report.to_json())
    return report.exit_code


def cmd_gen(args) -> int:
    spec = args.family
    entry = _gen_from_spec(spec, args.args)
    print(serialize_entry(entry), end="")
    return EXIT_OK


def _gen_from_spec(family: str, extra: list[str]) -> CatalogEntry:
    upper = family.upper()
    if upper in CATALOG_NAMES:
        return fixture(upper)
    if family == "boolean":
        return gen_boolean(int(extra[0]))
    if family == "chain":
        return gen_chain(int(extra[0]))
    if family == "mo":
        return gen_mo(int(extra[0]))
    if family == "random":
        n, density = int(extra[0]), float(extra[1])
        seed = int(extra[2]) if len(extra) > 2 else 0
        return gen_random(n, density, seed)
    if family == "product":
        parts = []
        for token in extra[:2]:
            sub_family, _, sub_args = token.partition(":")
            parts.append(_gen_from_spec(sub_family, sub_args.split(":") if sub_args else []))
        return gen_product(parts[0], parts[1])
    raise PosetError(f"unknown generator family {family!r}")


def cmd_dot(args) -> int:
    entry = _load(args.file)
    highlight = entry.set_mask(args.z) if args.z else 0
    print(to_dot(entry, highlight), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="podec",
                                     description="finite poset decomposition toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a poset file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cover", help="least Z-member above an element")
    p.add_argument("file")
    p.add_argument("--z", required=True)
    p.add_argument("--p", required=True)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("decompose", help="run a decomposition certifier")
    p.add_argument("file")
    p.add_argument("--mode", choices=("icz", "czi", "homog"), required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--i", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("finite", help="finite elements of a relation")
    p.add_argument("file")
    p.add_argument("--z", required=True)
    p.add_argument("--rel", default="cover_leq")
    p.set_defaults(func=cmd_finite)

    p = sub.add_parser("verify", help="run the verification driver")
    p.add_argument("file", nargs="*")
    p.add_argument("--catalog", action="store_true")
    p.add_argument("--random", type=int, default=0, metavar="COUNT")
    p.add_argument("--max-n", type=int, default=8, dest="max_n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit a generated poset as text")
    p.add_argument("family")
    p.add_argument("args", nargs="*")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dot", help="emit the Hasse diagram as DOT")
    p.add_argument("file")
    p.add_argument("--z")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (PosetError, OSError, ValueError, IndexError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID


def console_entry() -> None:
    sys.exit(main())
