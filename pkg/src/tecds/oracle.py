"""Exact brute-force solvers for small instances.

These are ground truth for tests and for the ``oracle`` / ``stats`` CLI
commands. Every solver refuses instances above a size cap instead of
running for hours. Infeasible instances yield ``None``.
"""
from __future__ import annotations

import heapq
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceededError
from .graph import Edge, Graph, dominates, edge, is_2ec_subgraph
from .subtree import DSInstance, is_feasible_ds

DEFAULT_NODE_CAP = 14
DEFAULT_LINK_CAP = 20


def _connected(adj: Sequence[Sequence[int]], nodes: Sequence[int]) -> bool:
    if not nodes:
        return False
    keep = set(nodes)
    stack = [nodes[0]]
    seen = {nodes[0]}
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in keep and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(keep)


def min_2ecss(nodes: Iterable[int], edges: Iterable[Edge]) -> frozenset[Edge] | None:
    """Minimum-size 2-edge-connected spanning subgraph of ``(nodes, edges)``.

    Branch and bound over edges in canonical order: excluding an edge is only
    explored while the remaining edges still form a 2-edge-connected graph.
    """
    nodes = sorted(set(nodes))
    edges = sorted(edge(*e) for e in edges)
    if len(nodes) == 1:
        return frozenset()
    if not is_2ec_subgraph(nodes, edges):
        return None
    best = [list(edges)]
    floor = len(nodes)

    def search(i: int, chosen: list[Edge]):
        if len(best[0]) == floor:
            return
        if max(len(chosen), floor) >= len(best[0]):
            return
        if i == len(edges):
            best[0] = list(chosen)
            return
        rest = edges[i + 1:]
        if is_2ec_subgraph(nodes, chosen + rest):
            search(i + 1, chosen)
        chosen.append(edges[i])
        search(i + 1, chosen)
        chosen.pop()

    search(0, [])
    return frozenset(best[0])


def _check_cap(size: int, cap: int, what: str):
    if size > cap:
        raise CapExceededError(f"{what} {size} exceeds the cap of {cap}")


def _feasible_sets(g: Graph, sizes: Iterable[int]):
    """Node sets ``S`` (by size, then lexicographic) with ``G[S]`` 2-edge-connected and dominating."""
    max_deg = max((len(a) for a in g.adj), default=0)
    for k in sizes:
        if k * (max_deg + 1) < g.n:
            continue
        for s in combinations(range(g.n), k):
            if not dominates(g, s, g.nodes()):
                continue
            if is_2ec_subgraph(s, g.induced_edges(s)):
                yield s


def opt_2ecds(g: Graph, cap: int = DEFAULT_NODE_CAP, allow_single: bool = False):
    """Minimum dominating ``S`` with ``G[S]`` 2-edge-connected, as ``(S, J)``.

    ``J`` is a minimum 2-edge-connected spanning subgraph of ``G[S]``. A
    single dominating node only counts when ``allow_single`` is set.
    """
    _check_cap(g.n, cap, "node count")
    sizes = ([1] if allow_single else []) + list(range(3, g.n + 1))
    for s in _feasible_sets(g, sizes):
        return frozenset(s), min_2ecss(s, g.induced_edges(s))
    return None


def opt_2ecd_subgraph(g: Graph, cap: int = DEFAULT_NODE_CAP):
    """2-edge-connected dominating subgraph ``(S, J)`` with ``|J|`` minimum (``|S| >= 3``)."""
    _check_cap(g.n, cap, "node count")
    best = None
    for s in _feasible_sets(g, range(3, g.n + 1)):
        if best is not None and len(s) >= len(best[1]):
            break
        j = min_2ecss(s, g.induced_edges(s))
        if best is None or len(j) < len(best[1]):
            best = (frozenset(s), j)
    return best


def opt_by_edge_enumeration(g: Graph, max_edges: int = 40):
    """Independent optimum by enumerating edge subsets ``J`` by increasing size.

    Returns ``(min |J|, min |S|)`` over 2-edge-connected dominating subgraphs
    ``(V(J), J)`` with at least 3 nodes, or ``None`` if there is none. The
    scan stops once ``|J| > 2(best |S| - 1)``, the edge count above which no
    edge-minimal subgraph can improve ``|S|``.
    """
    _check_cap(g.m, max_edges, "edge count")
    best_j = best_s = None
    for k in range(3, g.m + 1):
        if best_s is not None and k > 2 * (best_s - 1):
            break
        for j in combinations(g.edges, k):
            nodes = {v for e in j for v in e}
            if best_s is not None and len(nodes) >= best_s and best_j is not None:
                continue
            if not dominates(g, nodes, g.nodes()) or not is_2ec_subgraph(nodes, j):
                continue
            if best_j is None:
                best_j = k
            if best_s is None or len(nodes) < best_s:
                best_s = len(nodes)
    if best_j is None:
        return None
    return best_j, best_s


def opt_dominating_subtree(inst: DSInstance, cap: int = DEFAULT_LINK_CAP) -> frozenset[Edge] | None:
    links = inst.links
    _check_cap(len(links), cap, "link count")
    for k in range(1, len(links) + 1):
        for f in combinations(links, k):
            if is_feasible_ds(inst, f):
                return frozenset(f)
    return None


def opt_subset_cds(g: Graph, q: Iterable[int], r: Iterable[int], cap: int = DEFAULT_LINK_CAP):
    """Minimum nonempty ``S`` inside ``q`` with ``G[S]`` connected and ``S`` dominating ``r``."""
    q = sorted(set(q))
    r = sorted(set(r))
    _check_cap(len(q), cap, "|Q|")
    for k in range(1, len(q) + 1):
        for s in combinations(q, k):
            if dominates(g, s, r) and _connected(g.adj, s):
                return frozenset(s)
    return None


def opt_gst_nodes(g: Graph, groups: Sequence[Iterable[int]], cap: int = DEFAULT_LINK_CAP):
    """Unit node-weight group Steiner tree: fewest nodes of a connected set hitting every group."""
    _check_cap(g.n, cap, "node count")
    groups = [frozenset(x) for x in groups]
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            ss = set(s)
            if all(grp & ss for grp in groups) and _connected(g.adj, s):
                return frozenset(s)
    return None


def _mst_cost(nodes: Sequence[int], costs: dict[Edge, int]) -> int:
    keep = set(nodes)
    parent = {v: v for v in keep}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0
    for e, c in sorted(costs.items(), key=lambda kv: (kv[1], kv[0])):
        if e[0] in keep and e[1] in keep:
            a, b = find(e[0]), find(e[1])
            if a != b:
                parent[a] = b
                total += c
    return total


def opt_gst_cost_bruteforce(g: Graph, groups, costs: dict[Edge, int] | None = None, cap: int = 12):
    """Edge-cost group Steiner tree by enumerating connected node sets (MST of each)."""
    _check_cap(g.n, cap, "node count")
    costs = costs or {e: 1 for e in g.edges}
    groups = [frozenset(x) for x in groups]
    best = None
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            ss = set(s)
            if all(grp & ss for grp in groups) and _connected(g.adj, s):
                c = _mst_cost(s, costs)
                if best is None or c < best:
                    best = c
    return best


def opt_gst_cost(g: Graph, groups, costs: dict[Edge, int] | None = None) -> int | None:
    """Edge-cost group Steiner tree optimum by dynamic programming over group subsets.

    ``best[mask][v]`` is the cheapest tree containing ``v`` that hits the
    groups in ``mask``; subsets are merged at ``v`` and then spread along
    shortest paths. Exponential only in the number of groups.
    """
    groups = [frozenset(x) for x in groups]
    if not groups:
        return 0 if g.n else None
    costs = costs or {e: 1 for e in g.edges}
    k = len(groups)
    full = (1 << k) - 1
    inf = float("inf")
    best = [[inf] * g.n for _ in range(full + 1)]
    for i, grp in enumerate(groups):
        for v in grp:
            best[1 << i][v] = 0
    for v in range(g.n):
        best[0][v] = 0
    for mask in range(1, full + 1):
        row = best[mask]
        sub = (mask - 1) & mask
        while sub:
            other = mask ^ sub
            if sub < other:
                for v in range(g.n):
                    c = best[sub][v] + best[other][v]
                    if c < row[v]:
                        row[v] = c
            sub = (sub - 1) & mask
        heap = [(c, v) for v, c in enumerate(row) if c < inf]
        heapq.heapify(heap)
        while heap:
            c, v = heapq.heappop(heap)
            if c > row[v]:
                continue
            for w in g.adj[v]:
                nc = c + costs[edge(v, w)]
                if nc < row[w]:
                    row[w] = nc
                    heapq.heappush(heap, (nc, w))
    ans = min(best[full])
    return None if ans == inf else int(ans)
