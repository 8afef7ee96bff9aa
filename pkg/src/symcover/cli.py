"""Command-line interface: ``symcover construct | classify | verify``.

Exit codes: 0 success, 1 a check failed, 2 usage error or violated
precondition, 3 a resource cap was exceeded.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .errors import CapExceeded, PreconditionError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

log = logging.getLogger("symcover")


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(f"environment variable {name} must be an integer") from None
    if value < 1:
        raise PreconditionError(f"environment variable {name} must be positive")
    return value


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _emit(data, path):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path in (None, "-"):
        sys.stdout.flush()
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


# ---------------------------------------------------------------- construct


def _recipe_from_args(args):
    from .constructions import (
        CoversnRecipe,
        K2mRecipe,
        KabRecipe,
        coversn_preset,
        load_recipe,
    )

    if args.recipe:
        recipe = load_recipe(args.recipe)
        expected = {"coversn": CoversnRecipe, "k2m": K2mRecipe, "kab": KabRecipe}[args.family]
        if not isinstance(recipe, expected):
            raise PreconditionError(f"recipe file does not describe a {args.family} construction")
        return recipe
    if args.family == "k2m":
        if args.m is None:
            raise PreconditionError("--m is required")
        return K2mRecipe(args.m)
    if args.family == "kab":
        if args.a is None or args.b is None:
            raise PreconditionError("--a and --b are required")
        return KabRecipe(args.a, args.b)
    if args.n is None:
        raise PreconditionError("--n is required")
    from .constructions import COVERSN_PRESETS

    if args.L in COVERSN_PRESETS:
        return coversn_preset(args.L, args.n, args.g0)
    gens = [s.strip() for s in args.L.split(";") if s.strip()]
    return CoversnRecipe.from_strings(args.n, gens, args.g0)


def cmd_construct(args):
    from .constructions import build_from_recipe
    from .graph import export, valency
    from .group import classify_giant
    from .quotient import classify_extender

    recipe = _recipe_from_args(args)
    spec = build_from_recipe(recipe, vertex_cap=args.vertex_cap)
    verdict = classify_extender(spec)
    G = spec.G
    print(f"{verdict.kind} n={G.degree} vertices={spec.index()} "
          f"valency={verdict.valency_gamma} quotient_valency={verdict.valency_sigma} "
          f"|G|={G.order()} group={classify_giant(G)} "
          f"connected={str(verdict.connected).lower()}")
    print("verdict:", verdict.to_line())
    if args.output or args.format:
        graph = spec.graph()
        if valency(graph) != verdict.valency_gamma:
            raise RuntimeError("materialized valency disagrees with the index formula")
        _emit(export(graph, args.format or "graph6"), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- classify


def cmd_classify(args):
    from .classify import ambient_group, enumerate_covers, enumerate_pseudocovers

    if args.n > 5 and not args.explore:
        raise PreconditionError("completeness is only asserted for n <= 5; pass --explore")
    G = ambient_group(args.group, args.n)
    fn = enumerate_covers if args.what == "covers" else enumerate_pseudocovers
    name = args.group if args.group.upper() not in ("S", "A") else f"{args.group.upper()}{args.n}"
    report = fn(args.n, G, name, jobs=args.jobs, cap=args.element_cap)
    _emit(report.text(), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- verify


def _verify_k2m(args):
    from .constructions import K2mRecipe, verify_k2m
    reports = [verify_k2m(K2mRecipe(m)) for m in range(2, args.m_max + 1)]
    return [line for r in reports for line in r.lines()]


def _verify_kab(args):
    from .constructions import KabRecipe, verify_kab
    lines = []
    for a in range(2, args.a_max + 1):
        for b in range(a, args.b_max + 1):
            lines.extend(verify_kab(KabRecipe(a, b)).lines())
    return lines


def _table_k5_lines(jobs):
    from .classify import ambient_group, enumerate_covers, enumerate_pseudocovers

    lines = []
    s5 = enumerate_covers(5, ambient_group("S", 5), "S5", jobs=jobs)
    got = sorted((e.vertex_count, e.aut_order, e.normal_cover) for e in s5.entries)
    want = sorted([(30, 720, "true"), (30, 240, "false"), (30, 240, "false"),
                   (15, 120, "false"), (10, 240, "true")])
    ok = got == want
    lines.append(f"{'PASS' if ok else 'FAIL'} table-k5: S5 covers "
                 f"(vertices, aut order, normal) = {got}")
    a5 = enumerate_covers(5, ambient_group("A", 5), "A5", jobs=jobs)
    fifteen = [e.digest for e in s5.entries if e.vertex_count == 15]
    ok = len(a5.entries) == 1 and [e.digest for e in a5.entries] == fifteen
    lines.append(f"{'PASS' if ok else 'FAIL'} table-k5: A5 has one cover class, "
                 f"isomorphic to the 15-vertex S5 class")
    counts = {}
    for nm in ("S", "A", "F5"):
        counts[nm] = enumerate_pseudocovers(5, ambient_group(nm, 5), nm).classes
    ok = counts == {"S": 1, "A": 0, "F5": 0}
    lines.append(f"{'PASS' if ok else 'FAIL'} table-k5: pseudocover classes {counts}")
    return lines


def _verify_table(args):
    return _table_k5_lines(args.jobs)


def _verify_complete(args):
    from .classify import check_pseudocover_existence

    lines = []
    for n in args.n:
        res = check_pseudocover_existence(n, exhaustive_max=args.exhaustive_max)
        prime = all((n - 1) % p for p in range(2, n - 1)) and n - 1 > 1
        if prime:
            ok = res.status in ("none_proven", "inconclusive")
        else:
            ok = res.status == "exists_with_witness"
        lines.append(f"{'PASS' if ok else 'FAIL'} complete: {res.line()}")
    return lines


def _verify_series(args):
    from .classify import arc_regular_cover_series

    rows = arc_regular_cover_series(args.n_max)
    return [f"{'PASS' if r.ok else 'FAIL'} series: {r.line()}" for r in rows]


def cmd_verify(args):
    handler = {
        "k2m": _verify_k2m,
        "kab": _verify_kab,
        "table-k5": _verify_table,
        "complete": _verify_complete,
        "series": _verify_series,
    }[args.what]
    lines = handler(args)
    failed = [line for line in lines if line.startswith("FAIL")]
    for line in lines:
        if args.verbose or line.startswith("FAIL"):
            print(line)
    print(f"{args.what}: {len(lines) - len(failed)}/{len(lines)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser():
    from .graph.formats import FORMATS

    vertex_cap = _env_int("SYMCOVER_VERTEX_CAP", 100_000)
    element_cap = _env_int("SYMCOVER_ELEMENT_CAP", 10_000)
    jobs = _env_int("SYMCOVER_JOBS", 1)

    p = argparse.ArgumentParser(
        prog="symcover",
        description="Arc-transitive covers and pseudocovers of complete graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build one coset graph and report its verdict")
    c.add_argument("family", choices=["coversn", "k2m", "kab"])
    c.add_argument("--n", type=_positive)
    c.add_argument("--L", default="cyclic",
                   help="preset (cyclic, z2z2, z4, d8, a4) or ';'-separated cycles")
    c.add_argument("--g0", default=None, help="cycle notation, fixing points 1 and 2")
    c.add_argument("--m", type=_positive)
    c.add_argument("--a", type=_positive)
    c.add_argument("--b", type=_positive)
    c.add_argument("--recipe", help="key = value recipe file")
    c.add_argument("--format", choices=sorted(FORMATS))
    c.add_argument("--output", "-o", help="graph output path ('-' for stdout)")
    c.add_argument("--vertex-cap", type=_positive, default=vertex_cap)
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("classify", help="enumerate covers or pseudocovers of K_n")
    k.add_argument("what", choices=["covers", "pseudocovers"])
    k.add_argument("--n", type=_positive, required=True)
    k.add_argument("--group", default="S", help="S, A, F5, PGL25 or PSL25 (S5, A4, ... accepted)")
    k.add_argument("--jobs", type=_positive, default=jobs)
    k.add_argument("--element-cap", type=_positive, default=element_cap)
    k.add_argument("--explore", action="store_true", help="allow n > 5")
    k.add_argument("--output", "-o")
    k.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("what", choices=["k2m", "kab", "table-k5", "complete", "series"])
    v.add_argument("--m-max", type=_positive, default=8)
    v.add_argument("--a-max", type=_positive, default=5)
    v.add_argument("--b-max", type=_positive, default=5)
    v.add_argument("--n", type=_positive, nargs="+", default=[4, 5, 6, 7, 9, 10, 13])
    v.add_argument("--n-max", type=_positive, default=6)
    v.add_argument("--exhaustive-max", type=_positive, default=6)
    v.add_argument("--jobs", type=_positive, default=jobs)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    try:
        parser = build_parser()
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.command == "verify":
        args.verbose = True
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
