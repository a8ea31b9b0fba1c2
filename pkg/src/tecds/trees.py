"""Spanning trees, tree paths and stretch measurement.

Two constructions are offered: a plain BFS tree and a randomized star
decomposition heuristic that tends to keep tree paths between the endpoints
of non-tree edges short. Neither carries a proven stretch bound; callers use
the stretch measured by :func:`measure_stretch`.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from statistics import fmean
from typing import Iterable

from .errors import InfeasibleError
from .graph import Edge, Graph, edge, is_connected


@dataclass(frozen=True)
class SpanningTree:
    host: Graph
    root: int
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    tree_edges: frozenset[Edge]

    @classmethod
    def from_edges(cls, host: Graph, edges: Iterable[Edge], root: int = 0) -> "SpanningTree":
        tree_edges = frozenset(edge(*e) for e in edges)
        if host.n == 0:
            raise ValueError("empty graph has no spanning tree")
        if not tree_edges <= host.edge_set:
            raise ValueError("tree edges must be edges of the host graph")
        if len(tree_edges) != host.n - 1:
            raise ValueError(f"a spanning tree on {host.n} nodes has {host.n - 1} edges")
        nbrs: list[list[int]] = [[] for _ in range(host.n)]
        for u, v in tree_edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        parent = [-1] * host.n
        depth = [0] * host.n
        parent[root] = root
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(nbrs[x]):
                if parent[y] < 0:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
        if min(parent) < 0:
            raise ValueError("tree edges do not span the host graph")
        return cls(host, root, tuple(parent), tuple(depth), tree_edges)

    @cached_property
    def links(self) -> tuple[Edge, ...]:
        """Non-tree edges of the host, in canonical order."""
        return tuple(e for e in self.host.edges if e not in self.tree_edges)

    def path_nodes(self, u: int, v: int) -> list[int]:
        """Nodes of the unique ``u``-``v`` tree path, from ``u`` to ``v``."""
        left, right = [u], [v]
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
            left.append(a)
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
            right.append(b)
        while a != b:
            a = self.parent[a]
            b = self.parent[b]
            left.append(a)
            right.append(b)
        right.pop()
        return left + right[::-1]


def tree_path(t: SpanningTree, u: int, v: int) -> list[Edge]:
    nodes = t.path_nodes(u, v)
    return [edge(a, b) for a, b in zip(nodes, nodes[1:])]


def bfs_tree(g: Graph, root: int = 0) -> SpanningTree:
    if not is_connected(g):
        raise InfeasibleError("graph is disconnected; no spanning tree exists")
    parent = {root: root}
    queue = deque([root])
    tree = []
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in parent:
                parent[y] = x
                tree.append(edge(x, y))
                queue.append(y)
    return SpanningTree.from_edges(g, tree, root)


def _bfs_dist(g: Graph, src: int, allowed: set[int]) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y in allowed and y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def _split(g: Graph, nodes: set[int]) -> list[list[int]]:
    out = []
    left = set(nodes)
    while left:
        s = min(left)
        comp = _bfs_dist(g, s, left)
        left -= comp.keys()
        out.append(sorted(comp))
    return out


def _carve_cones(g, dist, ball, shell, radius, rng):
    """Split ``shell`` into connected cones, each entered from the ball through one portal.

    The cone of portal ``x`` holds the shell nodes ``y`` with
    ``d(c, x) + d(x, y) <= d(c, y) + slack``, distances taken inside the part
    of the shell not yet carved.
    """
    left = set(shell)
    cones = []
    while left:
        portals = [(dist[x], x) for x in left if any(b in ball for b in g.adj[x])]
        if not portals:
            break
        _, x = min(portals)
        anchor = min(b for b in g.adj[x] if b in ball and dist[b] == dist[x] - 1)
        slack = int(rng.uniform(0, radius / 4))
        dx = _bfs_dist(g, x, left)
        cone = {y for y, d in dx.items() if dist[x] + d <= dist[y] + slack}
        left -= cone
        cones.append([x, anchor, cone])
    # stragglers cut off from the ball by earlier cones join an adjacent cone
    while left:
        for item in cones:
            grow = {y for y in left if any(z in item[2] for z in g.adj[y])}
            item[2] |= grow
            left -= grow
    return [(x, a, sorted(c)) for x, a, c in cones]


def low_stretch_tree(g: Graph, seed: int = 0) -> SpanningTree:
    """Spanning tree from a recursive randomized star decomposition.

    The whole graph is centered at its minimum-eccentricity node (lowest index
    on ties). A piece with center ``c`` and radius ``r`` keeps a ball of radius
    drawn uniformly from ``[r/4, r/2]`` around ``c`` and carves the rest into
    cones. Each cone hangs off the ball by the edge from its portal to the
    portal's BFS parent. The ball is decomposed again around ``c`` and each
    cone around its portal. Pieces of radius at most 1 take their BFS star.
    """
    if not is_connected(g):
        raise InfeasibleError("graph is disconnected; no spanning tree exists")
    rng = random.Random(seed)
    tree: list[Edge] = []
    nodes = set(g.nodes())
    center = min(g.nodes(), key=lambda v: (max(_bfs_dist(g, v, nodes).values()), v))
    work = [(sorted(nodes), center)]
    while work:
        piece, center = work.pop()
        if len(piece) == 1:
            continue
        allowed = set(piece)
        dist = _bfs_dist(g, center, allowed)
        radius = max(dist.values())
        if radius <= 1:
            tree.extend(edge(center, v) for v in piece if v != center)
            continue
        cut = rng.uniform(radius / 4, radius / 2)
        ball = {v for v in piece if dist[v] <= cut}
        work.append((sorted(ball), center))
        for portal, anchor, petal in _carve_cones(g, dist, ball, allowed - ball, radius, rng):
            tree.append(edge(portal, anchor))
            work.append((petal, portal))
    return SpanningTree.from_edges(g, tree, root=0)


@dataclass(frozen=True)
class StretchReport:
    sigma_max: int
    sigma_avg: float
    per_link: dict[Edge, int] = field(default_factory=dict)


def measure_stretch(g: Graph, t: SpanningTree) -> StretchReport:
    """Tree-path length for every non-tree edge (unit lengths, so stretch = path length).

    A graph without non-tree edges reports ``sigma_max = 1``.
    """
    if t.host != g:
        raise ValueError("tree does not span this graph")
    per_link = {f: len(t.path_nodes(*f)) - 1 for f in t.links}
    if not per_link:
        return StretchReport(1, 1.0, {})
    return StretchReport(max(per_link.values()), fmean(per_link.values()), per_link)
