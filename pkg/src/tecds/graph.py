"""Simple undirected graphs, instance parsing, and connectivity/domination predicates.

Nodes are the integers ``0..n-1``. Edges are stored canonically as ``(u, v)``
with ``u < v`` so iteration order is reproducible.
"""
from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Mapping, Sequence

from .errors import ParseError

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical form of the undirected edge ``uv``."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "_edge_set")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("node count must be non-negative")
        seen: set[Edge] = set()
        for pair in edges:
            u, v = pair
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop at node {u}")
            e = edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e[0]}-{e[1]}")
            seen.add(e)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in seen:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "adj", tuple(tuple(sorted(x)) for x in nbrs))
        object.__setattr__(self, "_edge_set", frozenset(seen))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[Edge]:
        return self._edge_set

    def nodes(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self._edge_set

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return frozenset(self.adj[v]) | {v}

    def induced_edges(self, nodes: Iterable[int]) -> frozenset[Edge]:
        keep = set(nodes)
        return frozenset(e for e in self.edges if e[0] in keep and e[1] in keep)


def parse_graph(text: str) -> Graph:
    """Parse the plain-text instance format: ``n m`` then ``m`` lines ``u v``."""
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks]
    if not lines:
        raise ParseError("empty instance", 1)
    lineno, header = lines[0]
    n, m = _ints(header, 2, lineno)
    if n < 0 or m < 0:
        raise ParseError("counts must be non-negative", lineno)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise ParseError(f"expected {m} edge lines, found {len(body)}", last)
    seen: set[Edge] = set()
    for lineno, toks in body:
        u, v = _ints(toks, 2, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"loop at node {u}", lineno)
        e = edge(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
    return Graph(n, seen)


def _ints(tokens: list[str], count: int, lineno: int) -> list[int]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} integers, got {len(tokens)} tokens", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None


def format_graph(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(rows) + "\n"


# -- connectivity -----------------------------------------------------------


def _adjacency(nodes: Iterable[int], edges: Iterable[Edge]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in nodes}
    for u, v in edges:
        if u not in adj or v not in adj:
            raise ValueError(f"edge {u}-{v} leaves the node set")
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    return adj


def _components(adj: Mapping[int, Sequence[int]]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def _find_bridges(adj: Mapping[int, Sequence[int]]) -> set[Edge]:
    # iterative DFS with low-points; simple graphs only, so the parent is skipped by node
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[Edge] = set()
    counter = 0
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] > disc[p]:
                    bridges.add(edge(p, v))
    return bridges


def connected_components(g: Graph) -> list[list[int]]:
    return _components({v: g.adj[v] for v in g.nodes()})


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def two_edge_connectivity(g: Graph) -> tuple[bool, frozenset[Edge]]:
    """Return ``(is_2ec, bridges)``.

    A graph is 2-edge-connected when it has at least one node, is connected
    and has no bridge. A single node therefore counts; a single edge does not.
    """
    adj = {v: g.adj[v] for v in g.nodes()}
    bridges = frozenset(_find_bridges(adj))
    ok = g.n > 0 and len(_components(adj)) == 1 and not bridges
    return ok, bridges


def is_2ec_subgraph(nodes: Iterable[int], edges: Iterable[Sequence[int]]) -> bool:
    """2-edge-connectivity of the graph ``(nodes, edges)`` under the same convention."""
    adj = _adjacency(nodes, (edge(*e) for e in edges))
    if not adj:
        return False
    return len(_components(adj)) == 1 and not _find_bridges(adj)


def dominates(g: Graph, s: Iterable[int], r: Iterable[int]) -> bool:
    """True iff every node of ``r`` is in ``s`` or adjacent to a node of ``s``."""
    s = set(s)
    return all(x in s or any(y in s for y in g.adj[x]) for x in r)


def edge_disjoint_path_count(adj: Mapping[int, Sequence[int]], s: int, t: int, limit: int) -> int:
    """Number of edge-disjoint ``s``-``t`` paths, capped at ``limit``.

    Unit-capacity augmenting paths on the undirected graph ``adj``.
    """
    cap: dict[tuple[int, int], int] = {}
    for u, nb in adj.items():
        for w in nb:
            cap[(u, w)] = 1
    flow = 0
    while flow < limit:
        prev = {s: s}
        queue = deque([s])
        while queue and t not in prev:
            x = queue.popleft()
            for y in adj[x]:
                if y not in prev and cap[(x, y)] > 0:
                    prev[y] = x
                    queue.append(y)
        if t not in prev:
            break
        y = t
        while y != s:
            x = prev[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    return flow


def two_edge_disjoint_paths(g: Graph, s: int, t: int) -> bool:
    """Menger check: does ``g`` contain two edge-disjoint ``s``-``t`` paths?"""
    if s == t:
        raise ValueError("s and t must differ")
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError("s and t must be nodes of g")
    return edge_disjoint_path_count({v: g.adj[v] for v in g.nodes()}, s, t, 2) >= 2


# -- random instances -------------------------------------------------------


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Erdos-Renyi G(n, p); edges sampled in canonical order."""
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected_graph(n: int, p: float, rng: random.Random, max_tries: int = 10_000) -> Graph:
    for _ in range(max_tries):
        g = random_graph(n, p, rng)
        if is_connected(g):
            return g
    raise ValueError(f"no connected G({n}, {p}) sample after {max_tries} tries")
