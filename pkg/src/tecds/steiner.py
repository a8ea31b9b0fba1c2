"""Greedy Steiner connected dominating set and the move of its nodes into Q."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .cdg import CDGraph, short_connector
from .errors import CertificateError, InfeasibleError
from .graph import Edge, Graph, connected_components, edge


@dataclass(frozen=True)
class CDSTree:
    nodes: frozenset[int]
    tree_edges: frozenset[Edge]

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.tree_edges)


def _greedy_in(graph: Graph, comp: set[int], targets: frozenset[int]) -> list[int]:
    closed = {v: (set(graph.adj[v]) | {v}) & targets for v in comp}
    white = set(targets)
    start = min(comp, key=lambda v: (-len(closed[v]), v))
    chosen = [start]
    in_s = {start}
    white -= closed[start]
    while white:
        frontier = sorted({u for s in chosen for u in graph.adj[s]} - in_s)
        best_key, best = None, None
        for u in frontier:
            gain_u = closed[u] & white
            # per-node yield; singles win ties against pairs
            key = (Fraction(len(gain_u)), 1, (-u,))
            if best_key is None or key > best_key:
                best_key, best = key, (u,)
            for w in graph.adj[u]:
                if w in in_s:
                    continue
                gain = len((closed[u] | closed[w]) & white)
                key = (Fraction(gain, 2), 0, (-u, -w))
                if key > best_key:
                    best_key, best = key, (u, w)
        if best is None or best_key[0] == 0:
            best = _path_to_white(graph, in_s, white, closed)
        for x in best:
            chosen.append(x)
            in_s.add(x)
            white -= closed[x]
    return chosen


def _path_to_white(graph, in_s, white, closed) -> tuple[int, ...]:
    # no single or pair adds anything: walk to the nearest node that still does
    prev = {s: None for s in in_s}
    queue = deque(sorted(in_s))
    while queue:
        x = queue.popleft()
        if x not in in_s and closed[x] & white:
            path = []
            while x not in in_s:
                path.append(x)
                x = prev[x]
            return tuple(reversed(path))
        for y in graph.adj[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    raise InfeasibleError("some terminals cannot be dominated by a connected set")


def _spanning_tree(graph: Graph, nodes: set[int]) -> set[Edge]:
    root = min(nodes)
    seen = {root}
    queue = deque([root])
    out = set()
    while queue:
        x = queue.popleft()
        for y in graph.adj[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                out.add(edge(x, y))
                queue.append(y)
    return out


def _dominated(graph: Graph, nodes: Iterable[int]) -> set[int]:
    out = set()
    for v in nodes:
        out.add(v)
        out.update(graph.adj[v])
    return out


def _prune_terminal_leaves(graph: Graph, nodes: set[int], tree: set[Edge], targets: frozenset[int]):
    changed = True
    while changed and len(nodes) > 1:
        changed = False
        deg: dict[int, int] = {v: 0 for v in nodes}
        for u, v in tree:
            deg[u] += 1
            deg[v] += 1
        for leaf in sorted(v for v in nodes if deg[v] == 1 and v in targets):
            rest = nodes - {leaf}
            if targets <= _dominated(graph, rest):
                nodes.discard(leaf)
                tree -= {e for e in tree if leaf in e}
                changed = True
                break


def check_cds_tree(graph: Graph, tree: CDSTree, targets: Iterable[int]) -> None:
    """Raise :class:`CertificateError` unless ``tree`` is a tree in ``graph`` dominating ``targets``."""
    nodes = tree.nodes
    if not nodes:
        raise CertificateError("empty CDS tree")
    if len(tree.tree_edges) != len(nodes) - 1:
        raise CertificateError("CDS tree has the wrong number of edges")
    for u, v in tree.tree_edges:
        if u not in nodes or v not in nodes or not graph.has_edge(u, v):
            raise CertificateError(f"CDS tree edge {u}-{v} is invalid")
    sub = Graph(graph.n, tree.tree_edges)
    reach = next(c for c in connected_components(sub) if min(nodes) in c)
    if set(reach) != set(nodes):
        raise CertificateError("CDS tree is disconnected")
    if not set(targets) <= _dominated(graph, nodes):
        raise CertificateError("CDS tree does not dominate the terminals")


def greedy_steiner_cds(graph: Graph, targets: Iterable[int]) -> CDSTree:
    """Connected node set dominating ``targets``, grown greedily.

    Starting from the node that dominates the most terminals, repeatedly add
    the frontier node, or frontier node plus one neighbour, with the best
    number of newly dominated terminals per added node. Terminal leaves are
    pruned from the resulting tree while domination is kept. Ties go to the
    lowest node index.
    """
    targets = frozenset(targets)
    if graph.n == 0:
        raise InfeasibleError("empty graph")
    if not targets:
        return CDSTree(frozenset({0}), frozenset())
    best = None
    for comp in connected_components(graph):
        comp = set(comp)
        if not targets <= _dominated(graph, comp):
            continue
        nodes = set(_greedy_in(graph, comp, targets))
        if best is None or len(nodes) < len(best):
            best = nodes
    if best is None:
        raise InfeasibleError("no connected component dominates all terminals")
    tree = _spanning_tree(graph, best)
    _prune_terminal_leaves(graph, best, tree, targets)
    result = CDSTree(frozenset(best), frozenset(tree))
    check_cds_tree(graph, result, targets)
    r_independent = not any(u in targets and v in targets for u, v in graph.edges)
    if r_independent and len(best) > 1 and any(result.degree(v) == 1 for v in best & targets):
        raise CertificateError("pruned tree still has a terminal leaf")
    return result


def terminal_degree_excess(tree: CDSTree, targets: Iterable[int]) -> tuple[int, int]:
    """``(sum over terminals r in the tree of deg(r) - 1, number of non-terminal tree nodes)``."""
    targets = set(targets)
    excess = sum(tree.degree(r) - 1 for r in tree.nodes & targets)
    return excess, len(tree.nodes - targets)


def patch_into_q(cdg: CDGraph, tree: CDSTree) -> frozenset[Edge]:
    """Replace the graph nodes used by ``tree`` with short link connectors.

    ``tree`` lives on ``cdg.graph``. Each graph node ``r`` of the tree with
    tree neighbours ``u_0 < u_1 < ...`` contributes connectors ``u_0``-``u_i``.
    The result is a set of links that induces a connected subgraph of the CDG
    and dominates every graph node, with at most ``3 |tree|`` links.
    """
    base = len(cdg.q_nodes)
    r_in_tree = sorted(v for v in tree.nodes if v >= base)
    out = {cdg.label(i) for i in tree.nodes if i < base}
    if not r_in_tree:
        return frozenset(out)
    if not out:
        raise InfeasibleError("the tree uses no link at all")
    excess, q_count = terminal_degree_excess(tree, cdg.r_ids)
    if excess > q_count - 1:
        raise CertificateError(f"degree excess {excess} exceeds |Q_T| - 1 = {q_count - 1}")
    for r in r_in_tree:
        nbrs = sorted(u for e in tree.tree_edges if r in e for u in e if u != r)
        center = cdg.label(nbrs[0])
        for u in nbrs[1:]:
            out.update(short_connector(cdg, cdg.label(r), center, cdg.label(u)))
    if len(out) > 3 * len(tree.nodes):
        raise CertificateError(f"patched set has {len(out)} > 3 * {len(tree.nodes)} links")
    return frozenset(out)
