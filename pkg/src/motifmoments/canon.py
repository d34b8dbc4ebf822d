"""Canonical labeling of small graphs and the atlas of connected motifs.

Keys are exact: the adjacency code is maximised over every node ordering that
respects a colour-refined degree partition, so two graphs share a key iff they
are isomorphic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParameterError, SizeError
from .graph import Graph, is_connected

__all__ = [
    "MAX_CANON_NODES",
    "CanonicalKey",
    "AtlasMember",
    "Atlas",
    "canonical_key",
    "canonical_form",
    "is_isomorphic",
    "build_atlas",
    "automorphism_count",
    "automorphism_orbits",
    "motif_name",
]

MAX_CANON_NODES = 8
_HEX_WIDTH = 7  # C(8, 2) = 28 adjacency bits


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Isomorphism-invariant fingerprint of a graph with at most 8 nodes."""

    node_count: int
    bits: int

    @property
    def hex(self) -> str:
        return f"{self.node_count:x}{self.bits:0{_HEX_WIDTH}x}"

    @classmethod
    def from_hex(cls, text: str) -> CanonicalKey:
        if len(text) != _HEX_WIDTH + 1:
            raise ValueError(f"malformed key {text!r}")
        return cls(int(text[0], 16), int(text[1:], 16))

    def graph(self) -> Graph:
        """Rebuild the canonical representative encoded by the key."""
        n = self.node_count
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        top = len(pairs) - 1
        return Graph(n, [p for idx, p in enumerate(pairs) if self.bits >> (top - idx) & 1])

    def __str__(self):
        return self.hex


def _refine(n: int, adjacency: tuple[tuple[int, ...], ...]) -> list[int]:
    """Stable colour refinement seeded by degree; colours are canonical ranks."""
    colors = [len(a) for a in adjacency]
    n_colors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adjacency[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == n_colors:
            return new
        colors, n_colors = new, len(ranks)


@lru_cache(maxsize=1 << 16)
def _canonical(n: int, edges: frozenset) -> tuple[int, tuple[int, ...]]:
    adj_sets = [set() for _ in range(n)]
    for u, v in edges:
        adj_sets[u].add(v)
        adj_sets[v].add(u)
    adjacency = tuple(tuple(sorted(a)) for a in adj_sets)
    colors = _refine(n, adjacency)
    cells = [
        [v for v in range(n) if colors[v] == c]
        for c in sorted(set(colors))
    ]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    best = -1
    best_order: tuple[int, ...] = tuple(range(n))
    for parts in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        order = tuple(itertools.chain.from_iterable(parts))
        code = 0
        for i, j in pairs:
            code = (code << 1) | (order[j] in adj_sets[order[i]])
        if code > best:
            best, best_order = code, order
    return max(best, 0), best_order


def _check_size(g: Graph) -> None:
    if g.node_count > MAX_CANON_NODES:
        raise SizeError(
            f"canonical labeling supports at most {MAX_CANON_NODES} nodes, got {g.node_count}"
        )


def canonical_key(g: Graph) -> CanonicalKey:
    _check_size(g)
    bits, _ = _canonical(g.node_count, g.edges)
    return CanonicalKey(g.node_count, bits)


def canonical_form(g: Graph) -> tuple[CanonicalKey, Graph]:
    """Key plus the relabeled copy of ``g`` whose adjacency code is the key."""
    key = canonical_key(g)
    return key, key.graph()


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    _check_size(g1)
    _check_size(g2)
    if g1.node_count != g2.node_count or g1.edge_count != g2.edge_count:
        return False
    return canonical_key(g1) == canonical_key(g2)


@lru_cache(maxsize=None)
def _automorphisms(n: int, edges: frozenset) -> tuple[tuple[int, ...], ...]:
    adjacency = [set() for _ in range(n)]
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    colors = _refine(n, tuple(tuple(sorted(a)) for a in adjacency))
    found = []
    for perm in itertools.permutations(range(n)):
        if any(colors[perm[v]] != colors[v] for v in range(n)):
            continue
        if all(perm[v] in adjacency[perm[u]] for u, v in edges):
            found.append(perm)
    return tuple(found)


def automorphism_count(g: Graph) -> int:
    """Order of the automorphism group, by exhaustive search."""
    _check_size(g)
    return len(_automorphisms(g.node_count, g.edges))


def automorphism_orbits(g: Graph) -> list[tuple[int, ...]]:
    """Node orbits under the automorphism group, each sorted, ordered by smallest member."""
    _check_size(g)
    perms = _automorphisms(g.node_count, g.edges)
    orbits = {tuple(sorted({p[v] for p in perms})) for v in range(g.node_count)}
    return sorted(orbits)


# -- atlas --------------------------------------------------------------------

_NAMED = {
    "K2": Graph(2, [(0, 1)]),
    "P3": Graph(3, [(0, 1), (1, 2)]),
    "K3": Graph(3, [(0, 1), (1, 2), (0, 2)]),
    "P4": Graph(4, [(0, 1), (1, 2), (2, 3)]),
    "K1,3": Graph(4, [(0, 1), (0, 2), (0, 3)]),
    "C4": Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "paw": Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
    "C5": Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
    "C6": Graph(6, [(i, (i + 1) % 6) for i in range(6)]),
    "C7": Graph(7, [(i, (i + 1) % 7) for i in range(7)]),
}
_NAMES_BY_KEY = {canonical_key(g): name for name, g in _NAMED.items()}


def motif_name(key: CanonicalKey) -> str | None:
    """Conventional name for a handful of common motifs, else ``None``."""
    return _NAMES_BY_KEY.get(key)


@dataclass(frozen=True)
class AtlasMember:
    id: int
    key: CanonicalKey
    graph: Graph

    @property
    def name(self) -> str:
        return motif_name(self.key) or f"g{self.id}"


@dataclass(frozen=True)
class Atlas:
    """Non-isomorphic connected graphs with 2..k nodes and at most k edges."""

    k: int
    members: tuple[AtlasMember, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def keys(self) -> list[CanonicalKey]:
        return [m.key for m in self.members]

    def __contains__(self, key):
        return any(m.key == key for m in self.members)

    def member(self, key: CanonicalKey) -> AtlasMember:
        for m in self.members:
            if m.key == key:
                return m
        raise KeyError(key)

    def to_catalog(self) -> str:
        lines = []
        for m in self.members:
            edges = ",".join(f"{u}-{v}" for u, v in m.graph.sorted_edges())
            lines.append(
                f"k={self.k} id={m.id} n={m.graph.node_count} edges={edges} key={m.key.hex}"
            )
        return "\n".join(lines) + "\n"


def _sort_key(key: CanonicalKey):
    return (key.graph().edge_count, key.node_count, key.bits)


@lru_cache(maxsize=None)
def build_atlas(k: int) -> Atlas:
    """Enumerate the motif atlas by generational growth from a single edge.

    Each generation adds one edge between existing nodes or one pendant node to
    every representative, deduplicating by canonical key. Every connected graph
    is reachable this way: removing a cycle edge or a leaf keeps it connected.
    """
    if not 2 <= k <= 7:
        raise ParameterError(f"atlas order must satisfy 2 <= k <= 7, got {k}")
    seen: set[CanonicalKey] = set()
    frontier = [Graph(2, [(0, 1)])]
    seen.add(canonical_key(frontier[0]))
    while frontier:
        nxt = []
        for g in frontier:
            if g.edge_count >= k:
                continue
            n = g.node_count
            children = [
                Graph(n, g.edges | {(u, v)})
                for u in range(n)
                for v in range(u + 1, n)
                if (u, v) not in g.edges
            ]
            if n < k:
                children.extend(Graph(n + 1, g.edges | {(u, n)}) for u in range(n))
            for child in children:
                key = canonical_key(child)
                if key not in seen:
                    seen.add(key)
                    nxt.append(child)
        frontier = nxt
    ordered = sorted(seen, key=_sort_key)
    members = tuple(AtlasMember(i, key, key.graph()) for i, key in enumerate(ordered))
    for m in members:
        assert is_connected(m.graph)
    return Atlas(k, members)
