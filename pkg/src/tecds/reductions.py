"""Instance transformations between Subset Steiner CDS, Group Steiner Tree and Partial CDS."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InfeasibleError, ParseError
from .graph import Edge, Graph, edge, _ints


@dataclass(frozen=True)
class GSTInstance:
    graph: Graph
    groups: tuple[frozenset[int], ...]
    edge_costs: dict[Edge, int] | None = None

    def __post_init__(self):
        for grp in self.groups:
            if not grp:
                raise ValueError("groups must be nonempty")
            if not all(0 <= v < self.graph.n for v in grp):
                raise ValueError("group member outside the node range")
        if self.edge_costs is not None:
            if set(self.edge_costs) != self.graph.edge_set:
                raise ValueError("costs must be given for exactly the graph's edges")
            if any(c < 0 for c in self.edge_costs.values()):
                raise ValueError("costs must be non-negative")

    @property
    def k(self) -> int:
        return len(self.groups)

    def cost(self, e: Edge) -> int:
        return 1 if self.edge_costs is None else self.edge_costs[edge(*e)]


@dataclass(frozen=True)
class PartialCDSInstance:
    """Partial CDS: a connected set of finite total weight dominating ``k_target`` nodes.

    ``weights[v] is None`` marks ``v`` as forbidden (infinite weight).
    """

    graph: Graph
    weights: tuple[int | None, ...]
    k_target: int

    def __post_init__(self):
        if len(self.weights) != self.graph.n:
            raise ValueError("one weight per node")
        if self.k_target > self.graph.n:
            raise ValueError("k_target exceeds the node count")

    def is_forbidden(self, v: int) -> bool:
        return self.weights[v] is None


def _check_partition(g: Graph, q: Iterable[int], r: Iterable[int]) -> tuple[list[int], list[int]]:
    q, r = sorted(set(q)), sorted(set(r))
    if set(q) & set(r) or len(q) + len(r) != g.n:
        raise ValueError("Q and R must partition the node set")
    return q, r


def subset_cds_to_gst(g: Graph, q: Iterable[int], r: Iterable[int]) -> tuple[GSTInstance, list[int]]:
    """GST on ``G[Q]`` with one group per ``r``: the nodes of ``Q`` adjacent to ``r``.

    Returns the instance and the list mapping its node labels back to ``Q``.
    """
    q, r = _check_partition(g, q, r)
    pos = {v: i for i, v in enumerate(q)}
    sub = Graph(len(q), [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos])
    groups = []
    for x in r:
        grp = frozenset(pos[y] for y in g.adj[x] if y in pos)
        if not grp:
            raise InfeasibleError(f"node {x} has no dominator in Q")
        groups.append(grp)
    return GSTInstance(sub, tuple(groups)), q


def gst_to_subset_cds(inst: GSTInstance) -> tuple[Graph, list[int], list[int]]:
    """Add a node ``r_S`` per group joined to the group's members; ``Q = V``, ``R = {r_S}``."""
    if inst.edge_costs is not None and any(c != 1 for c in inst.edge_costs.values()):
        raise ValueError("gst_to_subset_cds needs unit costs")
    g = inst.graph
    n = g.n
    pairs = list(g.edges)
    for i, grp in enumerate(inst.groups):
        pairs += [(v, n + i) for v in sorted(grp)]
    return Graph(n + inst.k, pairs), list(range(n)), list(range(n, n + inst.k))


def rounding_scale(n: int, epsilon: Fraction, m_guess: int) -> Fraction:
    """The unit ``epsilon * M / n`` in which rounded costs are expressed."""
    return Fraction(epsilon) * m_guess / n


def rounded_cost(c: int, mu: Fraction) -> int:
    return math.floor(Fraction(c) / mu)


def round_and_subdivide(inst: GSTInstance, epsilon, m_guess: int) -> GSTInstance:
    """Unit-cost GST instance equivalent to ``inst`` under rounded costs.

    Edges costlier than ``m_guess`` are dropped, costs are rounded down to
    multiples of ``epsilon * m_guess / n``, zero-cost edges are contracted
    (groups follow their members), and an edge of rounded cost ``c`` becomes
    a path of ``c`` unit edges.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if m_guess <= 0:
        raise ValueError("the guessed maximum cost must be positive")
    g = inst.graph
    n = g.n
    mu = rounding_scale(n, epsilon, m_guess)
    kept = {e: rounded_cost(inst.cost(e), mu) for e in g.edges if inst.cost(e) <= m_guess}

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v), c in kept.items():
        if c == 0:
            a, b = find(u), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    reps = sorted({find(v) for v in range(n)})
    label = {rep: i for i, rep in enumerate(reps)}
    length: dict[Edge, int] = {}
    for (u, v), c in kept.items():
        a, b = label[find(u)], label[find(v)]
        if c == 0 or a == b:
            continue
        e = edge(a, b)
        length[e] = min(c, length.get(e, c))
    nxt = len(reps)
    pairs = []
    for (a, b), c in sorted(length.items()):
        chain = [a] + list(range(nxt, nxt + c - 1)) + [b]
        nxt += c - 1
        pairs += list(zip(chain, chain[1:]))
    groups = tuple(frozenset(label[find(v)] for v in grp) for grp in inst.groups)
    out = GSTInstance(Graph(nxt, pairs), groups)
    bound = n + len(g.edges) * max(0, math.floor(n / epsilon) - 1)
    if out.graph.n > bound:
        raise AssertionError(f"subdivided instance has {out.graph.n} > {bound} nodes")
    return out


def subset_cds_to_partial_cds(
    g: Graph, q: Iterable[int], r: Iterable[int], weights: Sequence[int] | None = None
) -> PartialCDSInstance:
    """Partial CDS whose finite-weight solutions reaching ``k_target`` dominate all of ``R``.

    Adds ``|Q|`` copies of ``R``; copy ``i`` of ``r`` is joined to every node of
    ``Q`` adjacent to ``r``. Nodes outside ``Q`` are forbidden and
    ``k_target = (|Q| + 1) |R|``.
    """
    q, r = _check_partition(g, q, r)
    if weights is None:
        weights = [1] * g.n
    if len(weights) != g.n:
        raise ValueError("one weight per original node")
    qs = set(q)
    pairs = list(g.edges)
    nxt = g.n
    for _copy in range(len(q)):
        for x in r:
            pairs += [(y, nxt) for y in g.adj[x] if y in qs]
            nxt += 1
    w = [weights[v] if v in qs else None for v in range(g.n)] + [None] * (nxt - g.n)
    out = PartialCDSInstance(Graph(nxt, pairs), tuple(w), (len(q) + 1) * len(r))
    expected = len(q) * len(r) + len(r) + len(q)
    if out.graph.n != expected or out.graph.n > max(g.n * g.n, 1):
        raise AssertionError(f"partial CDS instance has {out.graph.n} nodes, expected {expected}")
    return out


# -- file formats -----------------------------------------------------------


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    return [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines()) if ln.split()]


def parse_gst(text: str) -> GSTInstance:
    """Graph block (edge lines ``u v`` or ``u v cost``), then ``k`` and ``k`` group lines."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty instance", 1)
    lineno, header = lines[0]
    n, m = _ints(header, 2, lineno)
    if len(lines) < m + 2:
        raise ParseError("instance ends before the group count", lines[-1][0])
    pairs, costs = [], {}
    width = None
    for lineno, toks in lines[1:m + 1]:
        if width is None:
            width = len(toks)
            if width not in (2, 3):
                raise ParseError("edge line must be 'u v' or 'u v cost'", lineno)
        vals = _ints(toks, width, lineno)
        u, v = vals[0], vals[1]
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"bad edge {u} {v}", lineno)
        e = edge(u, v)
        if e in costs or e in pairs:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        pairs.append(e)
        if width == 3:
            if vals[2] < 0:
                raise ParseError("negative cost", lineno)
            costs[e] = vals[2]
    lineno, toks = lines[m + 1]
    (k,) = _ints(toks, 1, lineno)
    group_lines = lines[m + 2:]
    if len(group_lines) != k:
        raise ParseError(f"expected {k} group lines, found {len(group_lines)}", lineno)
    groups = []
    for lineno, toks in group_lines:
        members = _ints(toks, len(toks), lineno)
        if any(not 0 <= v < n for v in members):
            raise ParseError("group member out of range", lineno)
        groups.append(frozenset(members))
    return GSTInstance(Graph(n, pairs), tuple(groups), costs if width == 3 else None)


def format_gst(inst: GSTInstance) -> str:
    g = inst.graph
    rows = [f"{g.n} {g.m}"]
    for u, v in g.edges:
        rows.append(f"{u} {v}" if inst.edge_costs is None else f"{u} {v} {inst.edge_costs[(u, v)]}")
    rows.append(str(inst.k))
    rows += [" ".join(map(str, sorted(grp))) for grp in inst.groups]
    return "\n".join(rows) + "\n"


def parse_subset_cds(text: str) -> tuple[Graph, list[int], list[int]]:
    """Graph block, then one line ``|R| r_1 ... r_|R|``; ``Q`` is the complement of ``R``."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty instance", 1)
    lineno, header = lines[0]
    n, m = _ints(header, 2, lineno)
    if len(lines) != m + 2:
        raise ParseError("expected the graph block followed by one terminal line", lines[-1][0])
    pairs = []
    for lineno, toks in lines[1:m + 1]:
        pairs.append(tuple(_ints(toks, 2, lineno)))
    try:
        g = Graph(n, pairs)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    lineno, toks = lines[m + 1]
    vals = _ints(toks, len(toks), lineno)
    if vals[0] != len(vals) - 1:
        raise ParseError("terminal count does not match the listed terminals", lineno)
    r = sorted(set(vals[1:]))
    if any(not 0 <= x < n for x in r):
        raise ParseError("terminal out of range", lineno)
    return g, [v for v in range(n) if v not in set(r)], r


def format_subset_cds(g: Graph, q: Sequence[int], r: Sequence[int]) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    rows.append(" ".join(map(str, [len(r), *sorted(r)])))
    return "\n".join(rows) + "\n"


def format_partial_cds(inst: PartialCDSInstance) -> str:
    g = inst.graph
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    rows.append(str(inst.k_target))
    rows.append(" ".join("inf" if w is None else str(w) for w in inst.weights))
    return "\n".join(rows) + "\n"
