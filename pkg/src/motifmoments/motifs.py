"""Motif censuses and spectral moments computed without eigendecomposition.

Three independent routes to ``m_k = tr(A^k) / n`` live here:

* motif route: weighted sum of motif frequencies (``moment_from_motifs``);
* trace route: exact integer matrix powers (``moment_trace_oracle``);
* closed forms for ``k = 4`` and ``k = 5`` built from degrees, triangles and
  short cycles.

Motif frequencies are counted as injective embeddings of the motif divided by
its automorphism count. ``enumerate_census`` is a second, slower counter that
walks every connected edge subset of the host; it backs the tests.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .canon import CanonicalKey, automorphism_count, build_atlas, canonical_key, motif_name
from .errors import ParameterError
from .graph import Graph, emit_edge_list
from .walks import CoefficientTable, load_coefficient_table

__all__ = [
    "MotifCensus",
    "census",
    "enumerate_subgraphs",
    "enumerate_census",
    "count_embeddings",
    "rooted_embedding_counts",
    "closed_walk_count",
    "walk_count_from_motifs",
    "moment_from_motifs",
    "moment_trace_oracle",
    "degree_power_sum",
    "triangles_per_node",
    "triangle_count",
    "four_cycle_count",
    "moment4_closed_form",
    "moment5_closed_form",
    "closed_form_walk_count",
    "format_moment",
]

CENSUS_EDGE_LIMIT = 10_000


def host_fingerprint(g: Graph) -> str:
    return hashlib.sha256(emit_edge_list(g).encode()).hexdigest()[:16]


# -- embedding counter --------------------------------------------------------


@lru_cache(maxsize=None)
def _plan(pattern: Graph, first: int) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Node order for backtracking plus, per position, earlier adjacent positions.

    Greedy: after ``first``, always place the node with the most placed
    neighbours (ties to higher degree, then lower index).
    """
    order = [first]
    placed = {first}
    while len(order) < pattern.node_count:
        best = max(
            (v for v in range(pattern.node_count) if v not in placed),
            key=lambda v: (
                sum(w in placed for w in pattern.adjacency[v]),
                pattern.degree(v),
                -v,
            ),
        )
        order.append(best)
        placed.add(best)
    pos = {v: i for i, v in enumerate(order)}
    constraints = tuple(
        tuple(sorted(pos[w] for w in pattern.adjacency[v] if pos[w] < i))
        for i, v in enumerate(order)
    )
    return tuple(order), constraints


def _count_from(masks, constraints, images, used, i, last):
    cand = -1
    for j in constraints[i]:
        cand &= masks[images[j]]
    cand &= ~used
    if i == last:
        return cand.bit_count()
    total = 0
    while cand:
        low = cand & -cand
        images[i] = low.bit_length() - 1
        total += _count_from(masks, constraints, images, used | low, i + 1, last)
        cand ^= low
    return total


def _check_pattern(pattern: Graph) -> None:
    if pattern.node_count < 2:
        raise ParameterError("pattern needs at least two nodes")
    if any(not a for a in pattern.adjacency):
        raise ParameterError("pattern must not have isolated nodes")


def rooted_embedding_counts(host: Graph, pattern: Graph, root: int, nodes=None) -> list[int]:
    """Injective homomorphisms of ``pattern`` into ``host``, tallied by the image of ``root``.

    Entry ``i`` counts the embeddings that send pattern node ``root`` to host
    node ``nodes[i]`` (all host nodes by default). The pattern must be
    connected.
    """
    _check_pattern(pattern)
    _, constraints = _plan(pattern, root)
    masks = host.masks
    last = pattern.node_count - 1
    images = [0] * pattern.node_count
    counts = []
    for v in range(host.node_count) if nodes is None else nodes:
        images[0] = v
        counts.append(_count_from(masks, constraints, images, 1 << v, 1, last))
    return counts


def count_embeddings(host: Graph, pattern: Graph) -> int:
    """Total injective homomorphisms of a connected ``pattern`` into ``host``."""
    _check_pattern(pattern)
    degrees = pattern.degrees()
    root = max(range(pattern.node_count), key=lambda v: (degrees[v], -v))
    return sum(rooted_embedding_counts(host, pattern, root))


def embedding_frequency(host: Graph, pattern: Graph) -> int:
    """Number of distinct subgraphs (edge sets) of ``host`` isomorphic to ``pattern``."""
    total = count_embeddings(host, pattern)
    aut = automorphism_count(pattern)
    assert total % aut == 0
    return total // aut


# -- census ---------------------------------------------------------------------


@dataclass(frozen=True)
class MotifCensus:
    """Motif frequencies of one host over the atlas of order ``k``."""

    host: str
    k: int
    counts: dict = field(default_factory=dict)

    @property
    def max_motif_nodes(self) -> int:
        return self.k

    @property
    def max_motif_edges(self) -> int:
        return self.k

    def __getitem__(self, key: CanonicalKey) -> int:
        return self.counts[key]

    def get(self, key: CanonicalKey, default: int = 0) -> int:
        return self.counts.get(key, default)

    def to_text(self) -> str:
        atlas = build_atlas(self.k)
        lines = []
        for key, count in self.counts.items():
            name = motif_name(key) or f"g{atlas.member(key).id}"
            lines.append(f"motif={key.hex} name={name} count={count}")
        return "\n".join(lines) + "\n"


def _check_order(k: int) -> None:
    if not 2 <= k <= 7:
        raise ParameterError(f"motif order must satisfy 2 <= k <= 7, got {k}")


def census(g: Graph, k: int, keys=None) -> MotifCensus:
    """Frequencies of every atlas motif with at most ``k`` nodes and ``k`` edges.

    ``keys`` restricts the count to a subset of the atlas; the moment routines
    use it to skip motifs that carry zero weight.
    """
    _check_order(k)
    if k == 7 and g.edge_count > CENSUS_EDGE_LIMIT:
        raise ParameterError(
            f"census at k=7 is limited to {CENSUS_EDGE_LIMIT} host edges, got {g.edge_count}"
        )
    atlas = build_atlas(k)
    if keys is None:
        wanted = atlas.keys()
    else:
        keys = set(keys)
        wanted = [key for key in atlas.keys() if key in keys]
    counts = {}
    for key in wanted:
        rep = atlas.member(key).graph
        counts[key] = g.edge_count if rep.edge_count == 1 else embedding_frequency(g, rep)
    return MotifCensus(host_fingerprint(g), k, counts)


def enumerate_subgraphs(g: Graph, max_edges: int, max_nodes: int | None = None) -> Iterator[frozenset]:
    """Yield each connected edge subset of ``g`` exactly once.

    This is ESU run on the line graph: a set of host edges spans a connected
    subgraph iff it is connected in the line graph.
    """
    if max_nodes is None:
        max_nodes = max_edges
    edges = g.sorted_edges()
    incident = [[] for _ in range(g.node_count)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)

    nbrs = [(set(incident[u]) | set(incident[v])) - {i} for i, (u, v) in enumerate(edges)]

    def extend(sub, nodes, ext, closed, seed):
        yield frozenset(edges[i] for i in sub)
        if len(sub) == max_edges:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            u, v = edges[w]
            new_nodes = nodes | {u, v}
            if len(new_nodes) > max_nodes:
                continue
            fresh = {x for x in nbrs[w] if x > seed and x not in closed}
            yield from extend(sub | {w}, new_nodes, set(ext) | fresh, closed | fresh | {w}, seed)

    for seed in range(len(edges)):
        u, v = edges[seed]
        ext = {x for x in nbrs[seed] if x > seed}
        closed = ext | nbrs[seed] | {seed}
        yield from extend({seed}, {u, v}, ext, closed, seed)


def _local_graph(edge_set) -> Graph:
    labels = sorted({x for e in edge_set for x in e})
    local = {v: i for i, v in enumerate(labels)}
    return Graph(len(labels), ((local[a], local[b]) for a, b in edge_set))


def enumerate_census(g: Graph, k: int) -> MotifCensus:
    """Census by exhaustive enumeration of connected edge subsets (slow, exact)."""
    _check_order(k)
    tally = Counter(canonical_key(_local_graph(s)) for s in enumerate_subgraphs(g, k, k))
    counts = {key: tally.get(key, 0) for key in build_atlas(k).keys()}
    return MotifCensus(host_fingerprint(g), k, counts)


# -- moments ----------------------------------------------------------------------


def closed_walk_count(g: Graph, k: int) -> int:
    """``tr(A^k)`` by exact integer matrix powers."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    n = g.node_count
    adjacency = g.adjacency
    power = g.adjacency_matrix()
    for _ in range(k - 1):
        power = [[sum(row[l] for l in adjacency[j]) for j in range(n)] for row in power]
    return sum(power[i][i] for i in range(n))


def _require_nodes(g: Graph) -> None:
    if g.node_count == 0:
        raise ParameterError("moments are undefined for a graph without nodes")


def moment_trace_oracle(g: Graph, k: int) -> Fraction:
    _require_nodes(g)
    return Fraction(closed_walk_count(g, k), g.node_count)


def walk_count_from_motifs(g: Graph, k: int, table: CoefficientTable | None = None) -> int:
    """Closed ``k``-walk count as the weighted sum of motif frequencies."""
    if k == 1:
        return 0
    _check_order(k)
    table = table if table is not None else load_coefficient_table()
    weights = table.motifs(k)
    found = census(g, k, keys=weights)
    return sum(w * found[key] for key, w in weights.items())


def moment_from_motifs(g: Graph, k: int, table: CoefficientTable | None = None) -> Fraction:
    _require_nodes(g)
    return Fraction(walk_count_from_motifs(g, k, table), g.node_count)


def degree_power_sum(g: Graph, r: int) -> int:
    return sum(d**r for d in g.degrees())


def triangles_per_node(g: Graph) -> list[int]:
    """Triangles touching each node, by intersecting neighbour sets."""
    masks = g.masks
    return [
        sum((masks[u] & masks[v]).bit_count() for u in g.adjacency[v]) // 2
        for v in range(g.node_count)
    ]


def triangle_count(g: Graph) -> int:
    return sum(triangles_per_node(g)) // 3


def four_cycle_count(g: Graph) -> int:
    """4-cycles: each one is counted once by each of its two diagonals."""
    masks = g.masks
    total = 0
    for i in range(g.node_count):
        for j in range(i + 1, g.node_count):
            c = (masks[i] & masks[j]).bit_count()
            total += c * (c - 1) // 2
    return total // 2


_C5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


def moment4_closed_form(g: Graph) -> Fraction:
    """``(2 W2 - W1 + 8 C4) / n`` with ``Wr`` the degree power sums."""
    _require_nodes(g)
    w1 = degree_power_sum(g, 1)
    w2 = degree_power_sum(g, 2)
    return Fraction(2 * w2 - w1 + 8 * four_cycle_count(g), g.node_count)


def moment5_closed_form(g: Graph) -> Fraction:
    """``(10 C5 - 30 T + 10 sum_i d_i T_i) / n`` with ``T_i`` triangles at node ``i``."""
    _require_nodes(g)
    per_node = triangles_per_node(g)
    triangles = sum(per_node) // 3
    clustering_degree = sum(d * t for d, t in zip(g.degrees(), per_node))
    five_cycles = embedding_frequency(g, _C5)
    return Fraction(10 * five_cycles - 30 * triangles + 10 * clustering_degree, g.node_count)


def closed_form_walk_count(g: Graph, k: int) -> int:
    """``n * m_k`` from edge, triangle, degree and cycle statistics, for ``k <= 5``."""
    if not 1 <= k <= 5:
        raise ParameterError(f"closed forms cover 1 <= k <= 5, got {k}")
    if k == 1:
        return 0
    if k == 2:
        return 2 * g.edge_count
    if k == 3:
        return 6 * triangle_count(g)
    moment = moment4_closed_form(g) if k == 4 else moment5_closed_form(g)
    return int(moment * g.node_count)


def format_moment(k: int, value: Fraction, n: int) -> str:
    """Report line ``k=<k> n_mk=<int> mk=<decimal>``."""
    walks = value * n
    assert walks.denominator == 1
    return f"k={k} n_mk={walks.numerator} mk={float(value):.12g}"
