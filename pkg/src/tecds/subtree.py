"""Dominating Subtree instances: link coverage, feasibility and coverage reachability.

An instance is a graph together with one of its spanning trees. A *link* is a
non-tree edge; it covers the tree edges on the tree path between its ends.
A link set ``F`` is feasible when the covered tree edges form a single tree
whose nodes dominate the graph, in which case ``T_F + F`` is a
2-edge-connected dominating subgraph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import CertificateError
from .graph import Edge, Graph, dominates, edge, is_2ec_subgraph
from .trees import SpanningTree, tree_path


@dataclass(frozen=True)
class DSInstance:
    graph: Graph
    tree: SpanningTree

    def __post_init__(self):
        if self.tree.host != self.graph:
            raise ValueError("tree must span the instance graph")

    @classmethod
    def from_tree_edges(cls, graph: Graph, tree_edges: Iterable[Edge], root: int = 0) -> "DSInstance":
        return cls(graph, SpanningTree.from_edges(graph, tree_edges, root))

    @property
    def links(self) -> tuple[Edge, ...]:
        return self.tree.links

    @cached_property
    def link_index(self) -> dict[Edge, int]:
        return {f: i for i, f in enumerate(self.links)}

    @cached_property
    def paths(self) -> dict[Edge, tuple[Edge, ...]]:
        """Tree path ``T_f`` of every link."""
        return {f: tuple(tree_path(self.tree, *f)) for f in self.links}

    @cached_property
    def path_nodes(self) -> dict[Edge, frozenset[int]]:
        """Node set ``V(T_f)`` of every link."""
        return {f: frozenset(self.tree.path_nodes(*f)) for f in self.links}

    def check_links(self, links: Iterable[Edge]) -> frozenset[Edge]:
        out = frozenset(edge(*f) for f in links)
        bad = out - self.link_index.keys()
        if bad:
            u, v = min(bad)
            raise ValueError(f"{u}-{v} is not a link (tree edge or non-edge)")
        return out


@dataclass(frozen=True)
class CoveredForest:
    covered_tree_edges: frozenset[Edge]
    components: tuple[tuple[int, ...], ...]

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(v for comp in self.components for v in comp)

    @property
    def is_tree(self) -> bool:
        return len(self.components) == 1


def covered_forest(inst: DSInstance, links: Iterable[Edge]) -> CoveredForest:
    """The forest ``T_F`` of tree edges covered by ``links``, split into components."""
    links = inst.check_links(links)
    covered = frozenset(e for f in links for e in inst.paths[f])
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in covered:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    comps = tuple(sorted(tuple(sorted(c)) for c in groups.values()))
    return CoveredForest(covered, comps)


def is_feasible_ds(inst: DSInstance, links: Iterable[Edge]) -> bool:
    """``T_F`` is a single (nonempty) tree whose nodes dominate every node."""
    forest = covered_forest(inst, links)
    return forest.is_tree and dominates(inst.graph, forest.nodes, inst.graph.nodes())


def coverage_classes(inst: DSInstance, links: Iterable[Edge]) -> list[frozenset[int]]:
    """Node classes of the link/node incidence graph ``H``.

    ``H`` is bipartite on ``F + V`` with ``f`` joined to every node of ``T_f``;
    two nodes are in the same class iff ``H`` has a path between them.
    Nodes on no covering path form singleton classes.
    """
    links = sorted(inst.check_links(links))
    incident: dict[int, list[Edge]] = {}
    for f in links:
        for v in inst.path_nodes[f]:
            incident.setdefault(v, []).append(f)
    seen_nodes: set[int] = set()
    seen_links: set[Edge] = set()
    classes = []
    for s in inst.graph.nodes():
        if s in seen_nodes:
            continue
        seen_nodes.add(s)
        cls = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for f in incident.get(v, ()):
                if f in seen_links:
                    continue
                seen_links.add(f)
                for w in inst.path_nodes[f]:
                    if w not in seen_nodes:
                        seen_nodes.add(w)
                        cls.add(w)
                        queue.append(w)
        classes.append(frozenset(cls))
    return classes


def coverage_reachable(inst: DSInstance, links: Iterable[Edge], s: int, t: int) -> bool:
    """Is ``t`` reachable from ``s`` in the incidence graph ``H`` of ``links``?

    Equivalent to ``T + F`` having two edge-disjoint ``s``-``t`` paths.
    """
    if s == t:
        raise ValueError("s and t must differ")
    for cls in coverage_classes(inst, links):
        if s in cls:
            return t in cls
    raise ValueError(f"{s} is not a node of the instance")


def from_2ecc_subgraph(inst: DSInstance, j_edges: Iterable[Edge]) -> frozenset[Edge]:
    """Links ``J - E_T`` of a 2-edge-connected dominating subgraph ``(V(J), J)``.

    The result is always a feasible link set for ``inst``.
    """
    j_edges = frozenset(edge(*e) for e in j_edges)
    g = inst.graph
    if not j_edges <= g.edge_set:
        raise CertificateError("J contains a pair that is not an edge of the graph")
    nodes = {v for e in j_edges for v in e}
    if not nodes or not is_2ec_subgraph(nodes, j_edges):
        raise CertificateError("J is not a 2-edge-connected subgraph")
    if not dominates(g, nodes, g.nodes()):
        raise CertificateError("nodes of J do not dominate the graph")
    return frozenset(e for e in j_edges if e not in inst.tree.tree_edges)
