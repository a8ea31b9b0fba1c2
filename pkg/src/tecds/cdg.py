"""The connectivity-domination graph of a Dominating Subtree instance.

Its nodes are the links (role Q) and the graph nodes (role R). Two links are
adjacent when their tree paths share a node; a link is adjacent to a graph
node it dominates, i.e. a node on its tree path ("member") or a graph
neighbour of one ("neighbor"). A link set is a feasible Dominating Subtree
solution iff it induces a connected subgraph here and dominates all of R.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal

from .errors import CertificateError, InfeasibleError
from .graph import Edge, Graph
from .subtree import DSInstance

MEMBER = "member"
NEIGHBOR = "neighbor"


@dataclass(frozen=True)
class CDGraph:
    instance: DSInstance
    q_nodes: tuple[Edge, ...]
    r_nodes: tuple[int, ...]
    i_edges: frozenset[tuple[Edge, Edge]]
    d_edges: dict[tuple[Edge, int], Literal["member", "neighbor"]]

    @cached_property
    def q_adj(self) -> dict[Edge, frozenset[Edge]]:
        adj: dict[Edge, set[Edge]] = {f: set() for f in self.q_nodes}
        for f, g in self.i_edges:
            adj[f].add(g)
            adj[g].add(f)
        return {f: frozenset(s) for f, s in adj.items()}

    @cached_property
    def dominated_by(self) -> dict[Edge, frozenset[int]]:
        out: dict[Edge, set[int]] = {f: set() for f in self.q_nodes}
        for f, v in self.d_edges:
            out[f].add(v)
        return {f: frozenset(s) for f, s in out.items()}

    @cached_property
    def q_of(self) -> dict[int, tuple[Edge, ...]]:
        """``Q_v``: links adjacent to graph node ``v``, in link order."""
        out: dict[int, list[Edge]] = {v: [] for v in self.r_nodes}
        for f in self.q_nodes:
            for v in sorted(self.dominated_by[f]):
                out[v].append(f)
        return {v: tuple(fs) for v, fs in out.items()}

    @cached_property
    def index(self) -> dict[Edge | int, int]:
        """Position of every node in :attr:`graph` (links first, then graph nodes)."""
        idx: dict[Edge | int, int] = {f: i for i, f in enumerate(self.q_nodes)}
        base = len(self.q_nodes)
        idx.update({v: base + v for v in self.r_nodes})
        return idx

    @cached_property
    def graph(self) -> Graph:
        """The same graph as a plain :class:`Graph` on integer labels, see :attr:`index`."""
        idx = self.index
        pairs = [(idx[f], idx[g]) for f, g in self.i_edges]
        pairs += [(idx[f], idx[v]) for f, v in self.d_edges]
        return Graph(len(self.q_nodes) + len(self.r_nodes), pairs)

    def label(self, i: int) -> Edge | int:
        """Inverse of :attr:`index`."""
        base = len(self.q_nodes)
        return self.q_nodes[i] if i < base else self.r_nodes[i - base]

    @property
    def q_ids(self) -> range:
        return range(len(self.q_nodes))

    @property
    def r_ids(self) -> range:
        base = len(self.q_nodes)
        return range(base, base + len(self.r_nodes))


def build_cdg(inst: DSInstance) -> CDGraph:
    g = inst.graph
    links = inst.links
    nodes = {f: inst.path_nodes[f] for f in links}
    i_edges = set()
    for a, f in enumerate(links):
        for h in links[a + 1:]:
            if nodes[f] & nodes[h]:
                i_edges.add((f, h))
    d_edges: dict[tuple[Edge, int], str] = {}
    for f in links:
        for v in sorted(nodes[f]):
            d_edges[(f, v)] = MEMBER
        for v in sorted(nodes[f]):
            for w in g.adj[v]:
                d_edges.setdefault((f, w), NEIGHBOR)
    return CDGraph(inst, links, tuple(g.nodes()), frozenset(i_edges), dict(sorted(d_edges.items())))


def verify_cdg_solution(cdg: CDGraph, links: Iterable[Edge]) -> bool:
    """Links induce a connected subgraph of the CDG and dominate every graph node."""
    chosen = cdg.instance.check_links(links)
    if not chosen:
        return False
    start = min(chosen)
    seen = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for h in cdg.q_adj[f]:
            if h in chosen and h not in seen:
                seen.add(h)
                queue.append(h)
    if seen != chosen:
        return False
    covered = set().union(*(cdg.dominated_by[f] for f in chosen))
    return len(covered) == len(cdg.r_nodes)


def classify_link(cdg: CDGraph, v: int, e: Edge) -> tuple[int, Edge]:
    """Type of link ``e`` relative to node ``v`` and its witness ``f_e``.

    Type 1: some link ``f`` has ``v`` on its tree path and shares a tree-path
    node with ``e``. The witness is ``e`` itself when ``v`` lies on ``T_e``,
    otherwise the lowest such ``f``. Type 2 otherwise, with witness ``e``.
    """
    if (e, v) not in cdg.d_edges:
        raise ValueError(f"link {e} is not adjacent to node {v}")
    if cdg.d_edges[(e, v)] == MEMBER:
        return 1, e
    for f in cdg.q_of[v]:
        if cdg.d_edges[(f, v)] == MEMBER and f in cdg.q_adj[e]:
            return 1, f
    return 2, e


def short_connector(cdg: CDGraph, v: int, e1: Edge, e2: Edge) -> list[Edge]:
    """A simple ``e1``-``e2`` path among links with at most two internal nodes.

    Both links must be adjacent to ``v``. Raises :class:`InfeasibleError`
    when the configuration around ``v`` rules out every feasible solution.
    """
    if e1 == e2:
        raise ValueError("connector endpoints must differ")
    if e2 in cdg.q_adj[e1]:
        return [e1, e2]
    t1, f1 = classify_link(cdg, v, e1)
    t2, f2 = classify_link(cdg, v, e2)
    if t1 == 2 or t2 == 2:
        # v hangs off the tree by a bridge; every link dominating it then
        # contains v's neighbour, so Q_v is a clique and we returned above
        raise InfeasibleError(
            f"node {v} is dominated only across a bridge that isolates more than one node"
        )
    walk = [e1, f1, f2, e2]
    path: list[Edge] = []
    for f in walk:
        if f in path:
            del path[path.index(f) + 1:]
        else:
            path.append(f)
    for a, b in zip(path, path[1:]):
        if b not in cdg.q_adj[a]:
            raise CertificateError(f"connector step {a}-{b} is not an edge of the CDG")
    return path


def to_dot(cdg: CDGraph) -> str:
    """Graphviz rendering: links boxed, membership edges bold."""
    def name(x):
        return f'"f{x[0]}_{x[1]}"' if isinstance(x, tuple) else f'"v{x}"'

    out = ["graph cdg {"]
    out += [f"  {name(f)} [shape=box, label=\"{f[0]}-{f[1]}\"];" for f in cdg.q_nodes]
    out += [f"  {name(v)} [shape=circle, label=\"{v}\"];" for v in cdg.r_nodes]
    out += [f"  {name(f)} -- {name(h)} [style=bold, color=blue];" for f, h in sorted(cdg.i_edges)]
    for (f, v), kind in cdg.d_edges.items():
        style = "bold" if kind == MEMBER else "solid"
        out.append(f"  {name(f)} -- {name(v)} [style={style}];")
    out.append("}")
    return "\n".join(out) + "\n"
