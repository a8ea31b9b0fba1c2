"""Instance generators shared by the test modules."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

import networkx as nx

from tecds.graph import Graph, is_connected, random_connected_graph


def prufer_trees(n: int):
    """Every labeled tree on ``n`` nodes, as a list of canonical edges."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        t = nx.from_prufer_sequence(list(seq))
        yield sorted(tuple(sorted(e)) for e in t.edges())


def unlabeled_trees(n: int):
    """One labeled representative per isomorphism class of trees on ``n`` nodes."""
    if n == 1:
        yield []
        return
    for t in nx.nonisomorphic_trees(n):
        yield sorted(tuple(sorted(e)) for e in t.edges())


def non_tree_pairs(n: int, tree_edges):
    tset = set(tree_edges)
    return [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in tset]


def from_nx(h) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph(len(mapping), [(mapping[u], mapping[v]) for u, v in h.edges()])


def to_nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@lru_cache(maxsize=None)
def atlas(max_n: int, connected: bool = True) -> tuple[Graph, ...]:
    """All graphs on 1..max_n nodes up to isomorphism (max_n <= 7)."""
    out = []
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n:
            g = from_nx(h)
            if not connected or is_connected(g):
                out.append(g)
    return tuple(out)


def random_graphs(count: int, n_range: tuple[int, int], seed: int, p_range=(0.25, 0.6)):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        p = rng.uniform(*p_range)
        out.append(random_connected_graph(n, p, rng))
    return out


def graphs_up_to(n: int):
    """Every labeled graph on ``n`` nodes (small n only)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


@lru_cache(maxsize=None)
def connected_graphs_8() -> tuple[Graph, ...]:
    """All 11117 connected graphs on 8 nodes, up to isomorphism.

    Every connected graph has a vertex whose removal leaves it connected, so
    extending each connected 7-node atlas graph by one vertex in every way
    reaches all of them; duplicates are dropped by hash then isomorphism test.
    """
    buckets: dict = {}
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != 7 or not nx.is_connected(h):
            continue
        for k in range(1, 8):
            for nbrs in itertools.combinations(range(7), k):
                x = h.copy()
                x.add_edges_from((7, v) for v in nbrs)
                key = (x.number_of_edges(), nx.weisfeiler_lehman_graph_hash(x, iterations=3))
                same = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(x, y) for y in same):
                    same.append(x)
    return tuple(from_nx(x) for group in buckets.values() for x in group)
