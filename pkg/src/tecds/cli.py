"""Command-line interface.

Exit codes: 0 feasible / success, 2 infeasible, 1 error.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path
from statistics import fmean, median

from . import oracle, reductions
from .cdg import build_cdg, to_dot
from .errors import CapExceededError, InfeasibleError, ParseError, TecdsError
from .graph import Graph, dominates, edge, is_2ec_subgraph, parse_graph, random_connected_graph
from .pipeline import format_report, solve_2ecds, trial_trees
from .subtree import DSInstance
from .trees import measure_stretch

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _edges_text(es) -> str:
    return " ".join(f"{u}-{v}" for u, v in sorted(es))


def _kv(pairs, emit: str) -> str:
    sep = "=" if emit == "kv" else ": "
    return "".join(f"{k}{sep}{v}\n" for k, v in pairs)


def parse_solution(text: str) -> tuple[set[int], set[tuple[int, int]]]:
    """Read ``S`` and ``J`` lines (``S: 0 1 2`` / ``J=0-1 1-2``); other keys are ignored."""
    found: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        for sep in ("=", ":"):
            key, hit, value = line.partition(sep)
            if hit and key.strip() in ("S", "J"):
                found[key.strip()] = value
                break
    if "S" not in found or "J" not in found:
        raise ParseError("solution must contain an S line and a J line")
    try:
        s = {int(x) for x in found["S"].split()}
        j = set()
        for tok in found["J"].split():
            u, v = tok.split("-")
            j.add((int(u), int(v)))
    except ValueError:
        raise ParseError("S must list integers and J must list u-v pairs") from None
    return s, j


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.input))
    try:
        cert = solve_2ecds(g, args.trials, args.seed)
    except InfeasibleError as exc:
        sys.stdout.write(_kv([("status", "infeasible"), ("reason", str(exc))], args.emit))
        return EXIT_INFEASIBLE
    sys.stdout.write(format_report(cert, args.emit))
    if args.dot:
        Path(args.dot).write_text(to_dot(build_cdg(DSInstance(g, cert.tree))))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.input))
    s, j = parse_solution(_read(args.solution))
    for u, v in j:
        if u == v or not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            print(f"error: {u}-{v} is not an edge of the graph", file=sys.stderr)
            return EXIT_ERROR
        if u not in s or v not in s:
            print(f"error: edge {u}-{v} leaves S", file=sys.stderr)
            return EXIT_ERROR
    if any(not 0 <= v < g.n for v in s):
        print("error: S names a node outside the graph", file=sys.stderr)
        return EXIT_ERROR
    j = {edge(u, v) for u, v in j}
    checks = [
        ("two_edge_connected", bool(s) and is_2ec_subgraph(s, j)),
        ("dominating", dominates(g, s, g.nodes())),
    ]
    ok = all(v for _, v in checks)
    pairs = [("status", "feasible" if ok else "infeasible")]
    pairs += [(k, "yes" if v else "no") for k, v in checks]
    sys.stdout.write(_kv(pairs, args.emit))
    return EXIT_OK if ok else EXIT_INFEASIBLE


def cmd_oracle(args) -> int:
    g = parse_graph(_read(args.input))
    best = oracle.opt_2ecds(g, cap=args.cap)
    single = oracle.opt_2ecds(g, cap=args.cap, allow_single=True)
    sub = oracle.opt_2ecd_subgraph(g, cap=args.cap)
    pairs = [("status", "feasible" if best else "infeasible")]
    if best:
        s, j = best
        pairs += [("opt_S", len(s)), ("S", " ".join(map(str, sorted(s)))), ("J", _edges_text(j))]
    if sub:
        pairs += [("opt_J", len(sub[1])), ("subgraph_S", " ".join(map(str, sorted(sub[0]))))]
    pairs.append(("opt_S_single_node_convention", len(single[0]) if single else "infeasible"))
    sys.stdout.write(_kv(pairs, args.emit))
    return EXIT_OK if best else EXIT_INFEASIBLE


def cmd_reduce(args) -> int:
    text = _read(args.input)
    if args.kind == "cds-to-gst":
        g, q, r = reductions.parse_subset_cds(text)
        inst, _ = reductions.subset_cds_to_gst(g, q, r)
        out = reductions.format_gst(inst)
    elif args.kind == "gst-to-cds":
        g, q, r = reductions.gst_to_subset_cds(reductions.parse_gst(text))
        out = reductions.format_subset_cds(g, q, r)
    elif args.kind == "round":
        if args.m_guess is None:
            raise ValueError("round needs --m-guess")
        inst = reductions.parse_gst(text)
        out = reductions.format_gst(reductions.round_and_subdivide(inst, Fraction(args.epsilon), args.m_guess))
    else:
        g, q, r = reductions.parse_subset_cds(text)
        out = reductions.format_partial_cds(reductions.subset_cds_to_partial_cds(g, q, r))
    sys.stdout.write(out)
    return EXIT_OK


def _bucket(ratio: float) -> str:
    for hi in (1.0, 1.25, 1.5, 2.0, 3.0):
        if ratio <= hi + 1e-12:
            return f"<={hi:.2f}"
    return ">3.00"


def cmd_stats(args) -> int:
    rng = random.Random(args.seed)
    feasible = solved = 0
    ratios = []
    lst_sigma, bfs_sigma = [], []
    for _ in range(args.count):
        g = random_connected_graph(args.n, args.p, rng)
        inst_seed = rng.getrandbits(32)
        for label, tree in trial_trees(g, args.trials, inst_seed):
            (bfs_sigma if label == "bfs" else lst_sigma).append(measure_stretch(g, tree).sigma_max)
        opt = oracle.opt_2ecd_subgraph(g, cap=args.cap)
        try:
            cert = solve_2ecds(g, args.trials, inst_seed)
        except InfeasibleError:
            cert = None
        if opt is not None:
            feasible += 1
        if cert is not None:
            solved += 1
        if opt is not None and cert is not None:
            ratios.append(len(cert.J) / len(opt[1]))
    hist = Counter(_bucket(x) for x in ratios)
    pairs = [
        ("instances", args.count),
        ("n", args.n),
        ("p", args.p),
        ("oracle_feasible", feasible),
        ("solver_feasible", solved),
        ("feasibility_rate", f"{feasible / args.count:.4f}" if args.count else "nan"),
    ]
    if ratios:
        pairs += [
            ("ratio_mean", f"{fmean(ratios):.4f}"),
            ("ratio_median", f"{median(ratios):.4f}"),
            ("ratio_max", f"{max(ratios):.4f}"),
        ]
        pairs += [(f"ratio_hist[{b}]", hist[b]) for b in sorted(hist)]
    if lst_sigma:
        pairs += [("sigma_max_lst_mean", f"{fmean(lst_sigma):.4f}"), ("sigma_max_bfs_mean", f"{fmean(bfs_sigma):.4f}")]
    sys.stdout.write(_kv(pairs, args.emit))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tecds", description="2-edge-connected dominating set solver")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_required=True):
        p.add_argument("--input", required=input_required, help="instance file ('-' for stdin)")
        p.add_argument("--emit", choices=("text", "kv"), default="text")

    p = sub.add_parser("solve", help="approximate a 2-edge-connected dominating subgraph")
    common(p)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dot", help="write the connectivity-domination graph of the chosen tree here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    common(p)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact optimum by enumeration (small instances)")
    common(p)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_NODE_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", help="transform between problem variants")
    p.add_argument("kind", choices=("cds-to-gst", "gst-to-cds", "round", "partial"))
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", default="1", help="rounding precision (rational, e.g. 1/2)")
    p.add_argument("--m-guess", type=int, help="guessed maximum edge cost of an optimum")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("stats", help="batch random instances against the oracle")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_NODE_CAP)
    p.add_argument("--emit", choices=("text", "kv"), default="text")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which is our "infeasible" code
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (TecdsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
