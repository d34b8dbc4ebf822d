"""Per-node measurements from radius-r views and the local-to-global identity.

A node ``v`` *detects* a copy ``h`` of motif ``g`` when ``v`` lies on ``h`` and
every node of ``h`` is within ``r`` hops of ``v`` measured inside ``h``. The
number of detecting nodes per copy, ``D(g, r)``, depends only on ``g``, so

    sum_v H(g, v, r) = D(g, r) * F(g, host)

and dividing each node's weighted local counts by ``D`` makes their network
average equal to the spectral moment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .canon import CanonicalKey, automorphism_count, automorphism_orbits, build_atlas
from .errors import CapabilityError, ConfigurationError, ConnectivityError, ParameterError
from .graph import Graph, bfs_distances, eccentricity, is_connected
from .motifs import (
    _local_graph,
    census,
    closed_walk_count,
    enumerate_subgraphs,
    rooted_embedding_counts,
)
from .walks import CoefficientTable, load_coefficient_table

__all__ = [
    "detector_count",
    "DetectorTable",
    "build_detector_table",
    "load_detector_table",
    "local_embedding_frequency",
    "local_frequencies",
    "LocalMeasurement",
    "local_measurement",
    "local_measurements",
    "check_capability",
    "MotifSum",
    "SumCheckReport",
    "sum_check",
    "reading_discrepancies",
]

DETECTOR_RADII = (1, 2, 3)


def check_capability(k: int, r: int) -> None:
    if r < 0:
        raise ParameterError("radius must be non-negative")
    if k > 2 * r + 1:
        raise CapabilityError.for_radius(k, r)


def detector_count(g_rep: Graph, r: int) -> int:
    """Nodes of ``g_rep`` whose eccentricity within ``g_rep`` is at most ``r``."""
    if g_rep.node_count == 0 or not is_connected(g_rep):
        raise ConnectivityError("detector count needs a connected motif")
    return sum(1 for u in range(g_rep.node_count) if eccentricity(g_rep, u) <= r)


@dataclass(frozen=True)
class DetectorTable:
    """``D(g, r)`` for atlas motifs, keyed by ``(key, r)``."""

    entries: dict = field(default_factory=dict)

    def get(self, key: CanonicalKey, r: int) -> int:
        try:
            return self.entries[(key, r)]
        except KeyError:
            return detector_count(key.graph(), r)

    def to_text(self) -> str:
        return "".join(
            f"key={key.hex} r={r} D={d}\n" for (key, r), d in sorted(self.entries.items())
        )

    @classmethod
    def from_text(cls, text: str) -> DetectorTable:
        entries = {}
        for line in text.splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            fields = dict(tok.split("=", 1) for tok in line.split())
            entries[(CanonicalKey.from_hex(fields["key"]), int(fields["r"]))] = int(fields["D"])
        return cls(entries)


def build_detector_table(k: int = 7, radii=DETECTOR_RADII) -> DetectorTable:
    return DetectorTable(
        {(m.key, r): detector_count(m.graph, r) for m in build_atlas(k) for r in radii}
    )


@lru_cache(maxsize=1)
def load_detector_table() -> DetectorTable:
    text = resources.files("motifmoments.data").joinpath("detectors.txt").read_text()
    return DetectorTable.from_text(text)


# -- local embedding frequencies ---------------------------------------------------


def _detecting_orbits(g_rep: Graph, r: int) -> list[tuple[int, int]]:
    """(orbit representative, orbit size) for orbits whose eccentricity is <= r."""
    return [
        (orbit[0], len(orbit))
        for orbit in automorphism_orbits(g_rep)
        if eccentricity(g_rep, orbit[0]) <= r
    ]


def local_frequencies(host: Graph, g_rep: Graph, r: int, nodes=None) -> list[int]:
    """``H(g, v, r)`` for every host node (or for ``nodes``, in order).

    An embedding that maps motif node ``u`` onto ``v`` certifies a copy that
    ``v`` detects exactly when ``u`` has eccentricity <= r in the motif. Each
    copy containing ``v`` is hit by ``|Aut(g)|`` embeddings, all of which
    place the same orbit on ``v``.
    """
    if r < 0:
        raise ParameterError("radius must be non-negative")
    nodes = list(range(host.node_count)) if nodes is None else list(nodes)
    totals = [0] * len(nodes)
    for rep, size in _detecting_orbits(g_rep, r):
        for i, c in enumerate(rooted_embedding_counts(host, g_rep, rep, nodes)):
            totals[i] += size * c
    aut = automorphism_count(g_rep)
    assert all(t % aut == 0 for t in totals)
    return [t // aut for t in totals]


def local_embedding_frequency(host: Graph, v: int, r: int, g_rep: Graph) -> int:
    """Copies of ``g_rep`` in ``host`` that contain ``v`` and that ``v`` detects at radius ``r``."""
    if not 0 <= v < host.node_count:
        raise IndexError(f"node {v} out of range for graph with {host.node_count} nodes")
    return local_frequencies(host, g_rep, r, [v])[0]


@dataclass(frozen=True)
class LocalMeasurement:
    """Weighted local motif count of one node; its network average is ``m_k``."""

    v: int
    r: int
    k: int
    mu: Fraction
    frequencies: dict = field(default_factory=dict)

    def to_text(self) -> str:
        return f"v={self.v} k={self.k} mu={self.mu.numerator}/{self.mu.denominator}"


def _weights_and_detectors(k, r, table, det):
    table = table if table is not None else load_coefficient_table()
    det = det if det is not None else load_detector_table()
    weights = table.motifs(k) if k >= 2 else {}
    detectors = {key: det.get(key, r) for key in weights}
    blind = [key.hex for key, d in detectors.items() if d == 0]
    if blind:
        raise ConfigurationError(f"no detector node at r={r} for motifs {blind}")
    return weights, detectors


def local_measurements(
    host: Graph,
    r: int,
    k: int,
    table: CoefficientTable | None = None,
    det: DetectorTable | None = None,
) -> list[LocalMeasurement]:
    """``mu_k^(r)(v)`` for every node, ordered by node index."""
    check_capability(k, r)
    weights, detectors = _weights_and_detectors(k, r, table, det)
    per_motif = {key: local_frequencies(host, key.graph(), r) for key in weights}
    out = []
    for v in range(host.node_count):
        freqs = {key: per_motif[key][v] for key in weights}
        mu = sum(
            (Fraction(weights[key] * freqs[key], detectors[key]) for key in weights),
            Fraction(0),
        )
        out.append(LocalMeasurement(v, r, k, mu, freqs))
    return out


def local_measurement(
    host: Graph,
    v: int,
    r: int,
    k: int,
    table: CoefficientTable | None = None,
    det: DetectorTable | None = None,
) -> LocalMeasurement:
    check_capability(k, r)
    if not 0 <= v < host.node_count:
        raise IndexError(f"node {v} out of range for graph with {host.node_count} nodes")
    weights, detectors = _weights_and_detectors(k, r, table, det)
    freqs = {key: local_frequencies(host, key.graph(), r, [v])[0] for key in weights}
    mu = sum(
        (Fraction(weights[key] * freqs[key], detectors[key]) for key in weights),
        Fraction(0),
    )
    return LocalMeasurement(v, r, k, mu, freqs)


# -- verification ---------------------------------------------------------------------


@dataclass(frozen=True)
class MotifSum:
    key: CanonicalKey
    omega: int
    detectors: int
    frequency: int
    local_total: int

    @property
    def ok(self) -> bool:
        return self.local_total == self.detectors * self.frequency


@dataclass(frozen=True)
class SumCheckReport:
    r: int
    k: int
    n: int
    motifs: tuple[MotifSum, ...]
    mu_total: Fraction
    walk_count: int

    @property
    def moment_ok(self) -> bool:
        return self.mu_total == self.walk_count

    @property
    def ok(self) -> bool:
        return self.moment_ok and all(m.ok for m in self.motifs)

    def lines(self) -> list[str]:
        out = [
            f"k={self.k} r={self.r} motif={m.key.hex} omega={m.omega} D={m.detectors} "
            f"F={m.frequency} sum_H={m.local_total} D*F={m.detectors * m.frequency} "
            f"{'ok' if m.ok else 'FAIL'}"
            for m in self.motifs
        ]
        out.append(
            f"k={self.k} r={self.r} sum_mu={self.mu_total} n*m_k={self.walk_count} "
            f"{'ok' if self.moment_ok else 'FAIL'}"
        )
        return out


def sum_check(
    host: Graph,
    r: int,
    k: int,
    table: CoefficientTable | None = None,
    det: DetectorTable | None = None,
) -> SumCheckReport:
    """Check the per-motif detector identity and the moment identity on ``host``.

    Motif frequencies come from the census and the walk count from matrix
    powers, so neither side of either identity reuses the local counts.
    """
    check_capability(k, r)
    measurements = local_measurements(host, r, k, table, det)
    weights, detectors = _weights_and_detectors(k, r, table, det)
    found = census(host, k, keys=weights) if weights else None
    rows = tuple(
        MotifSum(
            key,
            weights[key],
            detectors[key],
            found[key],
            sum(m.frequencies[key] for m in measurements),
        )
        for key in weights
    )
    mu_total = sum((m.mu for m in measurements), Fraction(0))
    return SumCheckReport(r, k, host.node_count, rows, mu_total, closed_walk_count(host, k))


def reading_discrepancies(host: Graph, r: int, k: int) -> int:
    """Count (node, copy) pairs on which the two detection readings disagree.

    Reading A: ``v`` detects copy ``h`` when ``v`` is on ``h`` and every node
    of ``h`` is within ``r`` hops of ``v`` in the host (the copy sits inside
    ``v``'s radius-r view). Reading B, the one used everywhere else, measures
    those hops inside ``h``. Host distances never exceed in-copy distances, so
    A accepts everything B does; the count is of pairs only A accepts. Copies
    range over connected subgraphs with at most ``k`` nodes and edges.
    """
    host_dist = [bfs_distances(host, v) for v in range(host.node_count)]
    disagreements = 0
    for edge_set in enumerate_subgraphs(host, k, k):
        sub = _local_graph(edge_set)
        labels = sorted({x for e in edge_set for x in e})
        for i, v in enumerate(labels):
            in_copy = eccentricity(sub, i) <= r
            in_view = all(host_dist[v][w] <= r for w in labels)
            disagreements += in_view != in_copy
    return disagreements
