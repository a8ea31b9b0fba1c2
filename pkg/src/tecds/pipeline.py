"""End-to-end solvers for Dominating Subtree and the 2-edge-connected dominating subgraph."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Iterable

from .cdg import build_cdg
from .errors import CertificateError, InfeasibleError
from .graph import Edge, Graph, dominates, edge, is_2ec_subgraph
from .steiner import CDSTree, greedy_steiner_cds, patch_into_q, terminal_degree_excess
from .subtree import DSInstance, covered_forest, is_feasible_ds
from .trees import SpanningTree, bfs_tree, low_stretch_tree, measure_stretch

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DSRun:
    """One Dominating Subtree solve with its intermediate greedy tree."""

    links: frozenset[Edge]
    cds_tree: CDSTree
    degree_excess: int
    q_in_tree: int


@dataclass(frozen=True)
class SolutionCertificate:
    S: frozenset[int]
    J: frozenset[Edge]
    F: frozenset[Edge]
    tree: SpanningTree
    sigma_max: int
    bound_chain: dict[str, int] = field(default_factory=dict)
    trial: str = ""

    def check(self, g: Graph) -> None:
        """Re-verify feasibility and the recorded inequalities from scratch."""
        if not self.J <= g.edge_set:
            raise CertificateError("J is not a subset of the graph's edges")
        touched = {v for e in self.J for v in e}
        if touched != set(self.S):
            raise CertificateError("S is not the node set of J")
        if not is_2ec_subgraph(self.S, self.J):
            raise CertificateError("(S, J) is not 2-edge-connected")
        if not dominates(g, self.S, g.nodes()):
            raise CertificateError("S does not dominate the graph")
        b = self.bound_chain
        checks = {
            "|E(T_F)| <= sigma_max * |F|": b["covered"] <= self.sigma_max * b["links"],
            "|J_pre| <= |F| + |E(T_F)|": b["j_pre"] <= b["links"] + b["covered"],
            "|F| <= 3 * |S_greedy|": b["links"] <= 3 * b["greedy"],
            "|S| <= |J| <= 2(|S| - 1)": len(self.S) <= len(self.J) <= 2 * (len(self.S) - 1),
        }
        failed = [k for k, ok in checks.items() if not ok]
        if failed:
            raise CertificateError("bound chain violated: " + "; ".join(failed))


def solve_ds_detailed(inst: DSInstance) -> DSRun:
    if not inst.links:
        raise InfeasibleError("no links: the spanning tree has no non-tree edge to cover with")
    cdg = build_cdg(inst)
    tree = greedy_steiner_cds(cdg.graph, cdg.r_ids)
    links = patch_into_q(cdg, tree)
    if not is_feasible_ds(inst, links):
        raise CertificateError("patched link set is not a feasible dominating subtree")
    excess, q_count = terminal_degree_excess(tree, cdg.r_ids)
    return DSRun(links, tree, excess, q_count)


def solve_dominating_subtree(inst: DSInstance) -> frozenset[Edge]:
    """Link set ``F`` whose covered tree edges form a dominating tree."""
    return solve_ds_detailed(inst).links


def minimalize_2ecc(nodes: Iterable[int], j_edges: Iterable[Edge]) -> frozenset[Edge]:
    """Drop edges in canonical order while ``(S, J)`` stays 2-edge-connected, until a fixpoint."""
    nodes = frozenset(nodes)
    kept = sorted(edge(*e) for e in j_edges)
    if not is_2ec_subgraph(nodes, kept):
        raise CertificateError("input subgraph is not 2-edge-connected")
    changed = True
    while changed:
        changed = False
        for e in list(kept):
            rest = [x for x in kept if x != e]
            if is_2ec_subgraph(nodes, rest):
                kept = rest
                changed = True
    return frozenset(kept)


def lift(inst: DSInstance, run: DSRun, stretch: int, label: str) -> SolutionCertificate:
    forest = covered_forest(inst, run.links)
    j_pre = forest.covered_tree_edges | run.links
    nodes = frozenset(v for e in j_pre for v in e)
    j_min = minimalize_2ecc(nodes, j_pre)
    chain = {
        "covered": len(forest.covered_tree_edges),
        "links": len(run.links),
        "greedy": len(run.cds_tree.nodes),
        "degree_excess": run.degree_excess,
        "q_in_greedy": run.q_in_tree,
        "j_pre": len(j_pre),
        "j": len(j_min),
        "s": len(nodes),
    }
    return SolutionCertificate(nodes, j_min, run.links, inst.tree, stretch, chain, label)


def _rank(cert: SolutionCertificate):
    return (len(cert.J), len(cert.S), sorted(cert.J))


def trial_trees(g: Graph, trials: int, seed: int) -> list[tuple[str, SpanningTree]]:
    """``trials`` star-decomposition trees from seeds derived from ``seed``, plus the BFS tree."""
    rng = random.Random(seed)
    out = []
    for i in range(trials):
        sub = rng.getrandbits(32)
        out.append((f"lst#{i}:{sub}", low_stretch_tree(g, sub)))
    out.append(("bfs", bfs_tree(g, 0)))
    return out


def solve_2ecds(g: Graph, trials: int = 8, seed: int = 0) -> SolutionCertificate:
    """Best 2-edge-connected dominating subgraph over several sampled spanning trees."""
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    if trials < 0:
        raise ValueError("trials must be non-negative")
    best = None
    for label, tree in trial_trees(g, trials, seed):
        inst = DSInstance(g, tree)
        try:
            run = solve_ds_detailed(inst)
        except InfeasibleError as exc:
            log.debug("trial %s infeasible: %s", label, exc)
            continue
        cert = lift(inst, run, measure_stretch(g, tree).sigma_max, label)
        cert.check(g)
        if best is None or _rank(cert) < _rank(best):
            best = cert
    if best is None:
        raise InfeasibleError("no 2-edge-connected dominating subgraph found on any tree")
    return best


def format_report(cert: SolutionCertificate, emit: str = "text") -> str:
    """Structured report; ``emit='kv'`` gives ``key=value`` lines."""
    def edges(es):
        return " ".join(f"{u}-{v}" for u, v in sorted(es))

    fields = [
        ("status", "feasible"),
        ("size_S", str(len(cert.S))),
        ("size_J", str(len(cert.J))),
        ("size_F", str(len(cert.F))),
        ("S", " ".join(map(str, sorted(cert.S)))),
        ("J", edges(cert.J)),
        ("F", edges(cert.F)),
        ("tree", edges(cert.tree.tree_edges)),
        ("trial", cert.trial),
        ("sigma_max", str(cert.sigma_max)),
    ]
    fields += [(f"bound.{k}", str(v)) for k, v in cert.bound_chain.items()]
    sep = "=" if emit == "kv" else ": "
    return "\n".join(f"{k}{sep}{v}" for k, v in fields) + "\n"
