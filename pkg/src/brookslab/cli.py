"""Command-line entry point: ``brookslab <verb> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 precondition rejected (witness printed), 4 search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .brooks import BrooksInstance, brooks_color, rotation_obstruction_demo, two_color
from .coloring import check_coloring, coloring_from_json, coloring_to_json, constant_lists, lists_from_json
from .errors import BudgetExceededError, GraphFormatError, InvariantViolation, PreconditionError
from .factor import GROUPS, CayleySpec, factor_coloring_experiment
from .gallai import classify_component
from .graph import WindowedGraph, _plain, as_window, blocks, connected_components, induced_window, read_edge_list
from .oneended import audit_one_ended, is_ample, one_ended_forest, subample_detail

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4
DEFAULT_SEED = 0


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_color(args) -> int:
    g = read_edge_list(args.graph)
    result = brooks_color(BrooksInstance(g, args.d))
    wg = as_window(g)
    verdict = check_coloring(wg.graph, result.coloring, constant_lists(range(wg.n), range(1, args.d + 1)),
                             vertices=wg.interior)
    body = coloring_to_json(wg.n, result.coloring)
    body["trace"] = result.trace
    _emit(body, args.out)
    return EXIT_OK if verdict.ok else EXIT_VERIFY


def cmd_two_color(args) -> int:
    g = read_edge_list(args.graph)
    c, cycle = two_color(g)
    if c is None:
        _emit({"two_colorable": False, "odd_cycle": cycle}, args.out)
    else:
        body = coloring_to_json(_plain(g).n, c)
        body["two_colorable"] = True
        _emit(body, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    g = read_edge_list(args.graph)
    wg = as_window(g)
    n, c = coloring_from_json(_load_json(args.coloring))
    if n != wg.n:
        raise PreconditionError(f"coloring has {n} vertices, graph has {wg.n}")
    lists = None
    if args.lists:
        lists = lists_from_json(_load_json(args.lists))
    elif args.d:
        lists = constant_lists(range(wg.n), range(1, args.d + 1))
    verdict = check_coloring(wg.graph, c, lists, vertices=wg.interior)
    _emit(verdict.as_dict(), args.out)
    return EXIT_OK if verdict.ok else EXIT_VERIFY


def cmd_gallai(args) -> int:
    g = _plain(read_edge_list(args.graph))
    rows = []
    for comp in connected_components(g):
        verdict = classify_component(g, comp)
        rows.append({"component": comp, **verdict.to_json()})
    _emit({"components": rows}, args.out)
    return EXIT_OK


def cmd_blocks(args) -> int:
    g = _plain(read_edge_list(args.graph))
    bd = blocks(g)
    _emit({
        "blocks": [list(b) for b in bd.blocks],
        "cut_vertices": sorted(bd.cut_vertices),
        "block_graph": [list(e) for e in bd.block_graph.edges()],
    }, args.out)
    return EXIT_OK


def cmd_one_ended(args) -> int:
    wg = as_window(read_edge_list(args.graph))
    f = one_ended_forest(wg, max_depth=args.max_depth)
    problems = audit_one_ended(wg, f)
    body = f.to_json()
    body["audit"] = problems
    _emit(body, args.out)
    return EXIT_OK if not problems else EXIT_VERIFY


def cmd_subample(args) -> int:
    wg = as_window(read_edge_list(args.graph))
    detail = subample_detail(wg, args.d)
    sub, _ = induced_window(wg, detail.kept)
    verdict = is_ample(sub)
    removed_interior = sum(1 for v in detail.removed if not wg.is_boundary[v])
    bound = args.d ** -3
    fraction = removed_interior / detail.interior_count if detail.interior_count else 0.0
    _emit({
        "set": sorted(detail.kept),
        "ample": verdict.ok,
        "removed": len(detail.removed),
        "interior": detail.interior_count,
        "removed_fraction": fraction,
        "bound": bound,
        "bound_met": fraction >= bound,
    }, args.out)
    return EXIT_OK if verdict.ok and fraction >= bound else EXIT_VERIFY


def _spec_from_args(args) -> CayleySpec:
    if args.group == "z2free":
        if args.radius is None:
            raise PreconditionError("--radius is required for tree groups")
        return CayleySpec("z2free", args.d, radius=args.radius)
    if args.d % 2:
        raise PreconditionError(f"group {args.group} has an even number of generators; got --d {args.d}")
    if args.group == "free":
        if args.radius is None:
            raise PreconditionError("--radius is required for tree groups")
        return CayleySpec("free", args.d // 2, radius=args.radius)
    if args.side is None:
        raise PreconditionError("--side is required for grid windows")
    return CayleySpec("grid", args.d // 2, side=args.side, torus=args.torus)


def cmd_wmsf_sim(args) -> int:
    spec = _spec_from_args(args)
    print(f"seed: {args.seed}", file=sys.stderr)
    report = factor_coloring_experiment(spec, args.d, args.trials, args.seed, workers=args.workers)
    text = report.to_csv() if args.format == "csv" else report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_demo_rotation(args) -> int:
    print(f"seed: {args.seed}", file=sys.stderr)
    _emit(rotation_obstruction_demo(args.n, args.k, args.trials, args.seed), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brookslab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_text, graph=True):
        sp = sub.add_parser(name, help=help_text)
        if graph:
            sp.add_argument("graph", help="edge-list file")
        sp.add_argument("--out", help="write the artifact here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = verb("color", cmd_color, "Brooks d-coloring")
    sp.add_argument("--d", type=int, required=True)
    verb("two-color", cmd_two_color, "2-coloring or an odd cycle")
    sp = verb("check", cmd_check, "verify a coloring")
    sp.add_argument("coloring", help="coloring JSON")
    sp.add_argument("--lists", help="list assignment JSON")
    sp.add_argument("--d", type=int, help="check against the palette 1..d")
    verb("gallai", cmd_gallai, "Gallai-tree verdict per component")
    verb("blocks", cmd_blocks, "block decomposition")
    sp = verb("one-ended", cmd_one_ended, "one-ended function on an acyclic window, with audit")
    sp.add_argument("--max-depth", type=int, default=64)
    sp = verb("subample", cmd_subample, "one subample step on an ample tree window")
    sp.add_argument("--d", type=int, required=True)
    sp = verb("wmsf-sim", cmd_wmsf_sim, "factor-of-IID coloring experiment", graph=False)
    sp.add_argument("--group", choices=GROUPS, required=True)
    sp.add_argument("--d", type=int, required=True, help="number of generators (colors)")
    sp.add_argument("--radius", type=int)
    sp.add_argument("--side", type=int)
    sp.add_argument("--torus", action="store_true")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp = verb("demo-rotation", cmd_demo_rotation, "two-coloring a cyclic rotation", graph=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (GraphFormatError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {json.dumps(exc.witness, default=list)}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceededError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
