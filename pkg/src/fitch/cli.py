"""Command-line interface.

Exit codes: 0 success, 1 negative result (not Fitch / infeasible edit),
2 usage or parse errors.  Diagnostics go to stderr; results to stdout.
"""

from __future__ import annotations

import argparse
import os
import sys

from .dicotree import tree_from_cotree
from .digraph import find_invalid_triangle
from .editing import EditBudget, solve_modification
from .formats import (
    FormatError,
    graph_to_dot,
    parse_graph,
    parse_newick,
    serialize_graph,
    serialize_newick,
    tree_to_dot,
)
from .generator import ScenarioConfig, bench, random_fitch, random_tree
from .oracle import (
    MAX_LEAVES,
    brute_force_is_valid,
    derive_triangle_catalog,
)
from .phylo_tree import extract_relation, reduce_least_resolved
from .triples import informative_triples, tree_from_triples


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fitch",
        description="Recognition, reconstruction and editing of Fitch graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test whether a graph is a Fitch graph")
    p.add_argument("graph")

    p = sub.add_parser("tree", help="least-resolved explaining tree of a graph")
    p.add_argument("graph")
    p.add_argument("--algo", choices=("triples", "cotree"), default="cotree")

    p = sub.add_parser("relation", help="relation extracted from a labeled tree")
    p.add_argument("newick")

    p = sub.add_parser("reduce", help="least-resolved reduction of a tree")
    p.add_argument("newick")

    p = sub.add_parser("triples", help="informative triples of a graph")
    p.add_argument("graph")

    p = sub.add_parser("edit", help="edit a graph into a Fitch graph")
    p.add_argument("graph")
    p.add_argument("--del-vertices", type=int, default=0)
    p.add_argument("--del-arcs", type=int, default=0)
    p.add_argument("--add-arcs", type=int, default=0)

    p = sub.add_parser("oracle", help="run the exhaustive oracle census")
    p.add_argument("--max-leaves", type=int, default=4)

    p = sub.add_parser("gen", help="generate a random scenario")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--hgt-prob", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("binary-yule", "random-multifurcating"),
                   default="binary-yule")
    p.add_argument("--emit", choices=("tree", "graph"), default="tree")

    p = sub.add_parser("bench", help="benchmark both reconstruction pipelines")
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--hgt-prob", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("binary-yule", "random-multifurcating"),
                   default="binary-yule")

    p = sub.add_parser("dot", help="DOT rendering of a graph or tree file")
    p.add_argument("path")

    return parser


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _seed(args) -> int:
    env = os.environ.get("FITCH_SEED")
    return int(env) if env is not None else args.seed


def _cmd_check(args) -> int:
    g = parse_graph(_read(args.graph))
    cat = derive_triangle_catalog()
    witness = find_invalid_triangle(g, cat)
    if witness is None:
        print("FITCH")
        return 0
    print("NOT-FITCH", *witness)
    return 1


def _cmd_tree(args) -> int:
    from .triples import NotFitchError

    g = parse_graph(_read(args.graph))
    cat = derive_triangle_catalog()
    try:
        if args.algo == "triples":
            t = tree_from_triples(g, cat)
        else:
            t = tree_from_cotree(g)
    except NotFitchError as e:
        print(f"not a Fitch graph; witness: {e.witness}", file=sys.stderr)
        return 1
    print(serialize_newick(t))
    return 0


def _cmd_relation(args) -> int:
    t = parse_newick(_read(args.newick))
    sys.stdout.write(serialize_graph(extract_relation(t)))
    return 0


def _cmd_reduce(args) -> int:
    t = parse_newick(_read(args.newick))
    print(serialize_newick(reduce_least_resolved(t)))
    return 0


def _cmd_triples(args) -> int:
    g = parse_graph(_read(args.graph))
    cat = derive_triangle_catalog()
    for line in sorted(str(t) for t in informative_triples(g, cat)):
        print(line)
    return 0


def _cmd_edit(args) -> int:
    g = parse_graph(_read(args.graph))
    cat = derive_triangle_catalog()
    budget = EditBudget(args.del_vertices, args.del_arcs, args.add_arcs)
    sol = solve_modification(g, budget, cat)
    if sol is None:
        print("INFEASIBLE")
        return 1
    for v in sorted(sol.deleted_vertices):
        print("DV", v)
    for u, v in sorted(sol.deleted_arcs):
        print("DA", u, v)
    for u, v in sorted(sol.inserted_arcs):
        print("AA", u, v)
    return 0


def _cmd_oracle(args) -> int:
    import itertools

    from .digraph import Digraph, is_fitch

    if not 2 <= args.max_leaves <= MAX_LEAVES:
        print(f"--max-leaves must be in [2, {MAX_LEAVES}]", file=sys.stderr)
        return 2
    ok = True
    cat = derive_triangle_catalog()
    classes = {c.label: c for c in cat.by_pattern}
    n_valid = len({l for l, c in classes.items() if c.valid})
    n_invalid = len({l for l, c in classes.items() if not c.valid})
    census_ok = n_valid == 8 and n_invalid == 8
    ok &= census_ok
    print(f"triangle census: {n_valid}/8 valid, {n_invalid}/8 invalid classes:",
          "PASS" if census_ok else "FAIL")
    for n in range(2, args.max_leaves + 1):
        names = tuple(chr(ord("a") + i) for i in range(n))
        pairs = [(u, v) for u in names for v in names if u != v]
        mismatches = 0
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            arcs = [p for p, b in zip(pairs, bits) if b]
            g = Digraph(names, arcs)
            if is_fitch(g, cat) != brute_force_is_valid(g):
                mismatches += 1
        print(f"recognition vs oracle on {n} vertices "
              f"({2 ** len(pairs)} digraphs): "
              + ("PASS" if mismatches == 0 else f"FAIL ({mismatches})"))
        ok &= mismatches == 0
    return 0 if ok else 1


def _cmd_gen(args) -> int:
    cfg = ScenarioConfig(args.leaves, args.hgt_prob, _seed(args), args.mode)
    if args.emit == "tree":
        print(serialize_newick(random_tree(cfg)))
    else:
        sys.stdout.write(serialize_graph(random_fitch(cfg)))
    return 0


def _cmd_bench(args) -> int:
    template = ScenarioConfig(2, args.hgt_prob, _seed(args), args.mode)
    rows = bench(args.sizes, template)
    print("n,algo,ms,tree_vertices")
    for n, algo, ms, verts in rows:
        print(f"{n},{algo},{ms:.3f},{verts}")
    return 0


def _cmd_dot(args) -> int:
    text = _read(args.path)
    stripped = text.lstrip()
    if stripped.startswith("("):
        sys.stdout.write(tree_to_dot(parse_newick(text)))
    else:
        sys.stdout.write(graph_to_dot(parse_graph(text)))
    return 0


_COMMANDS = {
    "check": _cmd_check,
    "tree": _cmd_tree,
    "relation": _cmd_relation,
    "reduce": _cmd_reduce,
    "triples": _cmd_triples,
    "edit": _cmd_edit,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
    "dot": _cmd_dot,
}


def run_command(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except FormatError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
