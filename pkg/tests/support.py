"""Shared host corpus, independent oracles, and the acceptance result log."""

from __future__ import annotations

import itertools

import networkx as nx
import numpy as np

from motifmoments.graph import Graph, complete, erdos_renyi, path, ring, star

ER_SPECS = [(10 + (7 * i) % 16, (0.1, 0.2, 0.3)[i % 3], 1000 + i) for i in range(25)]


def corpus() -> list[tuple[str, Graph]]:
    hosts = [(f"R{n}", ring(n)) for n in range(3, 11)]
    hosts += [(f"K{n}", complete(n)) for n in range(2, 7)]
    hosts += [(f"P{n}", path(n)) for n in range(2, 9)]
    hosts += [(f"K1,{m}", star(m)) for m in range(1, 7)]
    hosts += [(f"ER({n},{p},seed={s})", erdos_renyi(n, p, s)) for n, p, s in ER_SPECS]
    return hosts


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.node_count))
    h.add_edges_from(g.edges)
    return h


def numpy_trace_power(g: Graph, k: int) -> int:
    """tr(A^k) with numpy object-dtype (arbitrary precision) matrix powers."""
    a = np.array(g.adjacency_matrix(), dtype=object).reshape(g.node_count, g.node_count)
    p = np.identity(g.node_count, dtype=object)
    for _ in range(k):
        p = p.dot(a)
    return int(sum(p[i, i] for i in range(g.node_count)))


def brute_force_closed_walks(g: Graph, k: int):
    """All closed walks of length k as node tuples, by product over node sequences."""
    walks = []
    for seq in itertools.product(range(g.node_count), repeat=k):
        closed = seq + (seq[0],)
        if all(g.has_edge(a, b) for a, b in zip(closed, closed[1:])):
            walks.append(closed)
    return walks


def connected_subgraph_classes(max_nodes: int, max_edges: int) -> list[nx.Graph]:
    """Isomorphism classes of connected graphs (>= 2 nodes) by exhaustive edge subsets.

    Deduplicates with networkx's VF2 isomorphism test, independent of the
    package's canonical labeling.
    """
    classes: list[nx.Graph] = []
    for n in range(2, max_nodes + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for m in range(n - 1, min(max_edges, len(pairs)) + 1):
            for subset in itertools.combinations(pairs, m):
                h = nx.Graph()
                h.add_nodes_from(range(n))
                h.add_edges_from(subset)
                if not nx.is_connected(h):
                    continue
                if any(nx.is_isomorphic(h, c) for c in classes if c.number_of_edges() == m and c.number_of_nodes() == n):
                    continue
                classes.append(h)
    return classes


ACCEPTANCE_LOG: list[str] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_LOG.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f" ({detail})" if detail else ""))
