"""Closed-walk enumeration and the motif weights of the walk/motif identity.

The weight of a motif ``g`` at length ``k`` is the number of closed walks of
length ``k`` inside ``g`` that traverse every edge of ``g``, summed over all
starting nodes. Summed against motif frequencies these weights reproduce the
closed-walk count ``tr(A^k)`` of any host graph.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources

from .canon import CanonicalKey, build_atlas
from .errors import ConfigurationError, ParameterError
from .graph import Graph, bfs_distances, is_connected

__all__ = [
    "WalkRecord",
    "enumerate_closed_walks",
    "omega",
    "CoefficientTable",
    "build_coefficient_table",
    "load_coefficient_table",
]


@dataclass(frozen=True)
class WalkRecord:
    """A closed walk ``(v0, v1, ..., vk)`` with ``v0 == vk``."""

    nodes: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    @cached_property
    def node_set(self) -> frozenset[int]:
        return frozenset(self.nodes)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (a, b) if a < b else (b, a) for a, b in zip(self.nodes, self.nodes[1:])
        )

    def underlying_graph(self) -> tuple[Graph, tuple[int, ...]]:
        """Simple graph spanned by the walk, relabeled; plus the label map."""
        labels = tuple(sorted(self.node_set))
        local = {v: i for i, v in enumerate(labels)}
        return Graph(len(labels), ((local[a], local[b]) for a, b in self.edge_set)), labels


def enumerate_closed_walks(g: Graph, k: int, root: int) -> Iterator[WalkRecord]:
    """Yield every closed walk of length ``k`` starting and ending at ``root``."""
    if k < 1:
        raise ParameterError("walk length must be >= 1")
    if not 0 <= root < g.node_count:
        raise IndexError(f"root {root} out of range for graph with {g.node_count} nodes")
    dist = bfs_distances(g, root)
    adjacency = g.adjacency
    walk = [root]

    def extend(steps_left):
        cur = walk[-1]
        if steps_left == 0:
            if cur == root:
                yield WalkRecord(tuple(walk))
            return
        for w in adjacency[cur]:
            # every node reachable here is reachable from root, so dist is set
            if dist[w] <= steps_left - 1:
                walk.append(w)
                yield from extend(steps_left - 1)
                walk.pop()

    yield from extend(k)


def omega(g_rep: Graph, k: int) -> int:
    """Closed ``k``-walks in ``g_rep`` that cover all of its edges, over all roots."""
    if g_rep.node_count < 2 or not is_connected(g_rep):
        raise ParameterError("omega needs a connected graph with at least one edge")
    if g_rep.node_count > k or g_rep.edge_count > k:
        raise ParameterError(
            f"omega needs at most k={k} nodes and edges, got "
            f"{g_rep.node_count} nodes and {g_rep.edge_count} edges"
        )
    return _omega(g_rep.node_count, g_rep.edges, k)


@lru_cache(maxsize=None)
def _omega(n: int, edges: frozenset, k: int) -> int:
    g = Graph(n, edges)
    index = {e: i for i, e in enumerate(sorted(edges))}
    full = (1 << len(index)) - 1
    edge_bit = [
        {w: 1 << index[(v, w) if v < w else (w, v)] for w in g.adjacency[v]}
        for v in range(n)
    ]
    total = 0
    for root in range(n):
        dist = bfs_distances(g, root)

        @lru_cache(maxsize=None)
        def completions(cur, covered, steps_left):
            if steps_left == 0:
                return 1 if cur == root and covered == full else 0
            count = 0
            for w, bit in edge_bit[cur].items():
                cov = covered | bit
                rest = steps_left - 1
                # still have to cover the missing edges and walk home
                if dist[w] <= rest and (full & ~cov).bit_count() <= rest:
                    count += completions(w, cov, rest)
            return count

        total += completions(root, 0, k)
    return total


@dataclass(frozen=True)
class CoefficientTable:
    """Motif weights keyed by ``(k, key)``; only positive weights are stored.

    The key set at a given ``k`` is the set of motifs that some closed
    ``k``-walk spans.
    """

    entries: dict = field(default_factory=dict)
    covered_k: frozenset = frozenset()

    def covers(self, k: int) -> bool:
        return k in self.covered_k

    def require(self, k: int) -> None:
        if not self.covers(k):
            raise ConfigurationError(
                f"coefficient table covers k in {sorted(self.covered_k)}, not k={k}"
            )

    def motifs(self, k: int) -> dict[CanonicalKey, int]:
        """Weights of every motif with a positive weight at length ``k``."""
        self.require(k)
        return {key: w for (kk, key), w in sorted(self.entries.items()) if kk == k}

    def omega(self, k: int, key: CanonicalKey) -> int:
        self.require(k)
        return self.entries.get((k, key), 0)

    @property
    def k_max(self) -> int:
        return max(self.covered_k, default=0)

    def to_text(self) -> str:
        lines = [f"# covered_k={','.join(str(k) for k in sorted(self.covered_k))}"]
        lines.extend(
            f"k={k} key={key.hex} omega={w}" for (k, key), w in sorted(self.entries.items())
        )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CoefficientTable:
        entries = {}
        covered = set()
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("# covered_k="):
                covered.update(int(t) for t in line.split("=", 1)[1].split(",") if t)
                continue
            if line.startswith("#"):
                continue
            fields = dict(tok.split("=", 1) for tok in line.split())
            k = int(fields["k"])
            entries[(k, CanonicalKey.from_hex(fields["key"]))] = int(fields["omega"])
            covered.add(k)
        return cls(entries, frozenset(covered))


def build_coefficient_table(k_max: int) -> CoefficientTable:
    if not 2 <= k_max <= 7:
        raise ParameterError(f"k_max must satisfy 2 <= k_max <= 7, got {k_max}")
    entries = {}
    for k in range(2, k_max + 1):
        for member in build_atlas(k):
            w = omega(member.graph, k)
            if w > 0:
                entries[(k, member.key)] = w
    return CoefficientTable(entries, frozenset(range(2, k_max + 1)))


@lru_cache(maxsize=1)
def load_coefficient_table() -> CoefficientTable:
    """The shipped table for ``k = 2..7``."""
    text = resources.files("motifmoments.data").joinpath("coefficients.txt").read_text()
    return CoefficientTable.from_text(text)
