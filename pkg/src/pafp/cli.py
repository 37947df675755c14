"""Command-line surface: solve, classify, reduce, gen, verify, bench.

Exit codes: 0 = found / safe, 1 = not found / unsafe, 2 = error, so shell
pipelines can branch on solvability.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .bench import plot_report, run_bench
from .classify import StructureClass, classify_instance, split_shared_vertices
from .core import Instance, Path, SolveResult, SolveStats, validate, verify_safe
from .dp_solvers import (
    INFINITE_VIOLATIONS,
    brute_force_solve,
    reconstruct_safe_path,
    solve_auto,
    solve_by_rules,
    solve_disjoint,
    solve_halving,
    solve_min_violations,
    solve_well_parenthesized,
)
from .errors import PafpError
from .reductions import gen_random, reduce_halving_to_nested, sat3_to_ordered, sat3_to_overlapping
from .textio import parse_dimacs, parse_instance, serialize_instance

EXIT_FOUND = 0
EXIT_NOT_FOUND = 1
EXIT_ERROR = 2

_CLASS_NAMES = {cls.value: cls for cls in StructureClass}


def _read_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        instance = parse_instance(fh.read())
    problems = validate(instance)
    if problems:
        raise PafpError("invalid instance: " + "; ".join(problems))
    return instance


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    for key, value in report.items():
        if key == "path" and isinstance(value, list):
            value = " ".join(str(v) for v in value)
        print(f"{key}: {value}")


# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    instance = _read_instance(args.file)
    t0 = time.perf_counter()
    if args.min_violations:
        split = split_shared_vertices(instance)
        count, path = solve_min_violations(split.instance)
        if path is not None and split.changed:
            path = split.map_path_back(path)
        elapsed = time.perf_counter() - t0
        report = {
            "found": count == 0,
            "min_violations": None if count == INFINITE_VIOLATIONS else int(count),
            "path": None if path is None else list(path.vertices),
            "solver": "min-violations",
            "route": "min-violations",
            "elapsed_seconds": round(elapsed, 6),
            "n": instance.n,
            "edges": len(instance.edges),
            "pairs": len(instance.pairs),
        }
        _emit(report, args.json)
        return EXIT_FOUND if count == 0 else EXIT_NOT_FOUND

    solver = args.solver
    if solver == "auto":
        result = solve_auto(instance, use_matrix=False)
    elif solver == "oracle":
        result = brute_force_solve(instance, max_pairs=args.oracle_pairs)
    else:
        split = split_shared_vertices(instance)
        if solver == "cubic":
            result = solve_well_parenthesized(split.instance)
        elif solver == "matrix":
            from .matrix_solver import matrix_build

            t1 = time.perf_counter()
            tables = matrix_build(split.instance)
            s, t = split.instance.source, split.instance.target
            found = bool(tables.P[s, t])
            witness = reconstruct_safe_path(split.instance, tables, s, t) if found else None
            cells = tables.n * (tables.n + 1) // 2 + int(tables.J_defined.sum())
            result = SolveResult(
                found, witness, SolveStats("matrix", time.perf_counter() - t1, cells)
            )
        elif solver == "rules":
            result = solve_by_rules(split.instance)
        elif solver == "disjoint":
            result = solve_disjoint(split.instance)
        elif solver == "halving":
            result = solve_halving(split.instance)
        else:  # pragma: no cover - argparse restricts choices
            raise PafpError(f"unknown solver '{solver}'")
        if result.path is not None and split.changed:
            result = type(result)(result.found, split.map_path_back(result.path), result.stats)
    elapsed = time.perf_counter() - t0
    report = {
        "found": result.found,
        "path": None if result.path is None else list(result.path.vertices),
        "solver": result.stats.solver,
        "route": result.stats.route or result.stats.solver,
        "elapsed_seconds": round(elapsed, 6),
        "cells": result.stats.cells,
        "n": instance.n,
        "edges": len(instance.edges),
        "pairs": len(instance.pairs),
    }
    _emit(report, args.json)
    return EXIT_FOUND if result.found else EXIT_NOT_FOUND


def cmd_classify(args) -> int:
    instance = _read_instance(args.file)
    note = "as-given"
    if args.split:
        split = split_shared_vertices(instance)
        instance = split.instance
        note = "after endpoint splitting" if split.changed else "as-given"
    cls = classify_instance(instance)
    report = {
        "class": cls.structure.value,
        "has_disjoint": cls.has_disjoint,
        "has_nested": cls.has_nested,
        "has_halving": cls.has_halving,
        "pairs": len(instance.pairs),
        "instance": note,
    }
    _emit(report, args.json)
    return EXIT_FOUND


def cmd_reduce(args) -> int:
    if args.to in ("overlapping", "ordered"):
        with open(args.input, "r", encoding="utf-8") as fh:
            formula = parse_dimacs(fh.read())
        build = sat3_to_overlapping if args.to == "overlapping" else sat3_to_ordered
        instance, annotation = build(formula)
        _write_output(serialize_instance(instance), args.output)
        if args.annotate:
            with open(args.annotate, "w", encoding="utf-8") as fh:
                json.dump({str(v): tag for v, tag in sorted(annotation.tags.items())}, fh, indent=2)
    elif args.to == "nested":
        instance = _read_instance(args.input)
        if args.pair is None:
            raise PafpError("--to nested requires --pair RANK")
        reduced = reduce_halving_to_nested(instance, args.pair)
        _write_output(serialize_instance(reduced), args.output)
    else:  # pragma: no cover
        raise PafpError(f"unknown reduction '{args.to}'")
    return EXIT_FOUND


def cmd_gen(args) -> int:
    structure = _CLASS_NAMES[args.structure]
    instance = gen_random(
        structure,
        args.n,
        args.pairs,
        density=args.density,
        seed=args.seed,
        ensure_path=not args.no_backbone,
    )
    _write_output(serialize_instance(instance), args.output)
    return EXIT_FOUND


def cmd_verify(args) -> int:
    instance = _read_instance(args.file)
    path = Path(tuple(args.vertices))
    safe = verify_safe(instance, path)
    violated = None
    if not safe:
        on = set(path.vertices)
        for a, b in instance.pairs:
            if a in on and b in on:
                violated = [a, b]
                break
    report = {
        "safe": safe,
        "path": list(path.vertices),
        "violated_pair": violated,
    }
    _emit(report, args.json)
    return EXIT_FOUND if safe else EXIT_NOT_FOUND


def cmd_bench(args) -> int:
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    report = run_bench(solvers, sizes, repeats=args.repeats, seed=args.seed)
    if args.json:
        print(report.to_json())
    else:
        print(report.table())
        print(f"machine: {report.machine}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
    if args.plot:
        plot_report(report, args.plot)
    return EXIT_FOUND


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pafp",
        description="Find s-t paths avoiding forbidden vertex pairs in topologically sorted DAGs.",
    )
    parser.add_argument("--version", action="version", version=f"pafp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument(
        "--solver",
        choices=["auto", "cubic", "matrix", "rules", "disjoint", "halving", "oracle"],
        default="auto",
    )
    p.add_argument("--min-violations", action="store_true", help="minimise contained pairs instead")
    p.add_argument("--oracle-pairs", type=int, default=20, help="pair budget for --solver oracle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="report the structure class of an instance")
    p.add_argument("file")
    p.add_argument("--split", action="store_true", help="split shared endpoints first")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="apply a reduction / gadget construction")
    p.add_argument("input", help="DIMACS CNF for sat gadgets, instance file for nested")
    p.add_argument("--to", choices=["overlapping", "ordered", "nested"], required=True)
    p.add_argument("--pair", type=int, help="1-based pair rank for --to nested")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--annotate", help="write gadget vertex tags to this JSON file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate a seeded random instance of a class")
    p.add_argument("--class", dest="structure", choices=sorted(_CLASS_NAMES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--density", type=float, default=0.15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-backbone", action="store_true")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check that a path is valid and safe")
    p.add_argument("file")
    p.add_argument("vertices", type=int, nargs="+")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time solvers over generated instances")
    p.add_argument("--solvers", default="cubic,matrix")
    p.add_argument("--sizes", default="256,512,1024")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv")
    p.add_argument("--plot")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PafpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:  # console-script shim
    sys.exit(main())
