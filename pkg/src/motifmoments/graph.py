"""Undirected simple graphs: construction, edge-list I/O, distances and neighborhoods.

Nodes are dense 0-based integers. A :class:`Graph` is immutable once built, so
every query below is a pure read.
"""

from __future__ import annotations

import math
import random
from collections import deque
from collections.abc import Iterable

from .errors import ConnectivityError, EdgeListError, ParameterError

__all__ = [
    "Graph",
    "parse_edge_list",
    "emit_edge_list",
    "read_edge_list",
    "bfs_distances",
    "neighborhood",
    "induced_subgraph",
    "diameter",
    "eccentricity",
    "is_connected",
    "ring",
    "path",
    "complete",
    "star",
    "erdos_renyi",
    "empty",
]


class Graph:
    """Labeled undirected simple graph on nodes ``0 .. node_count-1``.

    Parameters
    ----------
    node_count : int
        Number of nodes. Nodes without incident edges are allowed.
    edges : iterable of (int, int)
        Unordered pairs; duplicates collapse and orientation is ignored.
    """

    __slots__ = ("node_count", "edges", "adjacency", "_masks", "_hash")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 0:
            raise ParameterError("node_count must be non-negative")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise IndexError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            norm.add((u, v) if u < v else (v, u))
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.node_count = node_count
        self.edges = frozenset(norm)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        self._masks = None
        self._hash = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbor sets as integer bitmasks, built on first use."""
        if self._masks is None:
            self._masks = tuple(sum(1 << w for w in a) for a in self.adjacency)
        return self._masks

    def adjacency_matrix(self) -> list[list[int]]:
        n = self.node_count
        a = [[0] * n for _ in range(n)]
        for u, v in self.edges:
            a[u][v] = a[v][u] = 1
        return a

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.node_count, self.edges))
        return self._hash

    def __repr__(self):
        return f"Graph(node_count={self.node_count}, edges={self.sorted_edges()!r})"


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated integer pairs into a :class:`Graph`.

    Blank lines and lines starting with ``#`` are skipped. A header line
    ``n <N>`` fixes the node count; otherwise it is one more than the largest
    index seen.
    """
    declared = None
    pairs = []
    max_index = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if declared is not None or pairs:
                raise EdgeListError("header 'n <N>' must precede all edges", lineno)
            if len(tokens) != 2:
                raise EdgeListError(f"malformed header {line!r}", lineno)
            declared = _parse_index(tokens[1], lineno)
            continue
        if len(tokens) != 2:
            raise EdgeListError(f"expected two node indices, got {len(tokens)} tokens", lineno)
        u = _parse_index(tokens[0], lineno)
        v = _parse_index(tokens[1], lineno)
        if u == v:
            raise EdgeListError(f"self-loop at node {u}", lineno)
        if declared is not None and max(u, v) >= declared:
            raise EdgeListError(f"node index {max(u, v)} >= declared n={declared}", lineno)
        max_index = max(max_index, u, v)
        pairs.append((u, v))
    node_count = declared if declared is not None else max_index + 1
    return Graph(node_count, pairs)


def _parse_index(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise EdgeListError(f"non-integer token {token!r}", lineno) from None
    if value < 0:
        raise EdgeListError(f"negative node index {value}", lineno)
    return value


def emit_edge_list(g: Graph) -> str:
    lines = [f"n {g.node_count}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _check_node(g: Graph, v: int) -> None:
    if not 0 <= v < g.node_count:
        raise IndexError(f"node {v} out of range for graph with {g.node_count} nodes")


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    """Hop distances from ``source``; ``None`` marks unreachable nodes."""
    _check_node(g, source)
    dist: list[int | None] = [None] * g.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adjacency[u]:
            if dist[w] is None:
                dist[w] = du
                queue.append(w)
    return dist


def neighborhood(g: Graph, v: int, r: int) -> tuple[int, ...]:
    """Sorted nodes within distance ``r`` of ``v`` (``v`` included)."""
    if r < 0:
        raise ParameterError("radius must be non-negative")
    dist = bfs_distances(g, v)
    return tuple(w for w, d in enumerate(dist) if d is not None and d <= r)


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``nodes``, relabeled in sorted order.

    Returns the subgraph and the map from its node indices back to ``g``.
    """
    index_map = tuple(sorted(set(nodes)))
    for v in index_map:
        _check_node(g, v)
    local = {v: i for i, v in enumerate(index_map)}
    edges = [
        (local[u], local[w])
        for u in index_map
        for w in g.adjacency[u]
        if u < w and w in local
    ]
    return Graph(len(index_map), edges), index_map


def eccentricity(g: Graph, v: int) -> float:
    dist = bfs_distances(g, v)
    if any(d is None for d in dist):
        return math.inf
    return max(dist)


def is_connected(g: Graph) -> bool:
    if g.node_count == 0:
        return True
    return all(d is not None for d in bfs_distances(g, 0))


def diameter(g: Graph) -> float:
    """Largest pairwise distance; ``math.inf`` for a disconnected graph."""
    if g.node_count == 0:
        raise ParameterError("diameter of the empty graph is undefined")
    best = 0
    for v in range(g.node_count):
        ecc = eccentricity(g, v)
        if ecc == math.inf:
            return math.inf
        best = max(best, ecc)
    return best


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise ConnectivityError("graph is not connected")


# -- generators ---------------------------------------------------------------


def empty(n: int) -> Graph:
    return Graph(n)


def ring(n: int) -> Graph:
    """Cycle on ``n`` nodes; ``ring(2)`` is a single edge and ``ring(1)`` a lone node."""
    if n < 1:
        raise ParameterError("ring needs n >= 1")
    return Graph(n, ((i, (i + 1) % n) for i in range(n) if i != (i + 1) % n))


def path(n: int) -> Graph:
    if n < 1:
        raise ParameterError("path needs n >= 1")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise ParameterError("complete graph needs n >= 1")
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star(m: int) -> Graph:
    """Star K_{1,m}: hub 0 joined to leaves 1..m."""
    if m < 0:
        raise ParameterError("star needs m >= 0")
    return Graph(m + 1, ((0, i) for i in range(1, m + 1)))


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p) sample.

    Pairs ``(i, j)``, ``i < j``, are visited in lexicographic order and kept
    when ``random.Random(seed).random() < p``. Python's Mersenne Twister
    ``random()`` stream is stable across platforms and releases, so the output
    depends only on ``(n, p, seed)``.
    """
    if n < 1:
        raise ParameterError("erdos_renyi needs n >= 1")
    if not 0.0 <= p <= 1.0:
        raise ParameterError("p must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)
