"""Synchronous average consensus with Metropolis weights.

Each node starts from its local measurement and repeatedly replaces its value
by a Metropolis-weighted average with its neighbours. On a connected graph the
weight matrix is symmetric and doubly stochastic, so every node converges to
the network mean, which is the spectral moment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ConnectivityError, ParameterError
from .graph import Graph, is_connected
from .local import DetectorTable, LocalMeasurement, check_capability, local_measurements
from .walks import CoefficientTable

__all__ = [
    "ConsensusConfig",
    "ConsensusTrace",
    "DistributedMoment",
    "metropolis_weights",
    "run_average_consensus",
    "distributed_moment",
]


@dataclass(frozen=True)
class ConsensusConfig:
    """Stopping rule and recording options.

    The run stops once every node is within ``tolerance * max(1, |mean|)`` of
    the true mean, or within ``tolerance`` when ``absolute`` is set.
    ``record_every`` keeps a snapshot every that many rounds (0 keeps only the
    first and last).
    """

    tolerance: float = 1e-10
    max_rounds: int = 100_000
    weight_scheme: str = "metropolis"
    record_every: int = 0
    absolute: bool = False

    def bound(self, mean: float) -> float:
        return self.tolerance if self.absolute else self.tolerance * max(1.0, abs(mean))

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ParameterError("tolerance must be positive")
        if self.max_rounds < 1:
            raise ParameterError("max_rounds must be >= 1")
        if self.weight_scheme != "metropolis":
            raise ParameterError(f"unknown weight scheme {self.weight_scheme!r}")
        if self.record_every < 0:
            raise ParameterError("record_every must be >= 0")


@dataclass
class ConsensusTrace:
    target: Fraction
    converged: bool
    rounds: int
    final: np.ndarray
    snapshots: list = field(default_factory=list)
    max_mean_drift: float = 0.0

    def max_error(self) -> float:
        return float(np.max(np.abs(self.final - float(self.target))))

    def to_tsv(self) -> str:
        lines = ["round\tnode\tvalue"]
        for rnd, values in self.snapshots:
            lines.extend(f"{rnd}\t{v}\t{x:.17g}" for v, x in enumerate(values))
        return "\n".join(lines) + "\n"


def metropolis_weights(g: Graph) -> np.ndarray:
    """``W[v, u] = 1 / (1 + max(d_v, d_u))`` on edges, diagonal fills rows to one."""
    n = g.node_count
    deg = g.degrees()
    w = np.zeros((n, n))
    for u, v in g.sorted_edges():
        w[u, v] = w[v, u] = 1.0 / (1 + max(deg[u], deg[v]))
    w[np.diag_indices(n)] = 1.0 - w.sum(axis=1)
    return w


def _edge_weights(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    edges = g.sorted_edges()
    deg = g.degrees()
    tails = np.array([u for u, _ in edges], dtype=np.intp)
    heads = np.array([v for _, v in edges], dtype=np.intp)
    weights = np.array([1.0 / (1 + max(deg[u], deg[v])) for u, v in edges])
    return tails, heads, weights


def run_average_consensus(host: Graph, initial, cfg: ConsensusConfig | None = None) -> ConsensusTrace:
    """Iterate ``x_v <- x_v + sum_u W_vu (x_u - x_v)`` until every node is near the mean.

    ``initial`` may hold floats or Fractions; the target mean is computed
    exactly from them. Running out of rounds is reported through
    ``converged=False``, not raised.
    """
    cfg = cfg or ConsensusConfig()
    n = host.node_count
    if n == 0:
        raise ParameterError("consensus needs at least one node")
    if len(initial) != n:
        raise ParameterError(f"expected {n} initial values, got {len(initial)}")
    if not is_connected(host):
        raise ConnectivityError("average consensus needs a connected graph")

    target = sum((Fraction(x) for x in initial), Fraction(0)) / n
    goal = float(target)
    bound = cfg.bound(goal)
    tails, heads, weights = _edge_weights(host)
    x = np.array([float(v) for v in initial])
    snapshots = [(0, x.copy())]
    prev_mean = math.fsum(x) / n
    drift = 0.0
    rounds = 0
    converged = bool(np.max(np.abs(x - goal)) <= bound)
    while not converged and rounds < cfg.max_rounds:
        # neighbour differences stay small near consensus, so rounding does too
        flow = weights * (x[heads] - x[tails])
        delta = np.zeros(n)
        np.add.at(delta, tails, flow)
        np.add.at(delta, heads, -flow)
        x = x + delta
        rounds += 1
        mean = math.fsum(x) / n
        drift = max(drift, abs(mean - prev_mean))
        prev_mean = mean
        converged = bool(np.max(np.abs(x - goal)) <= bound)
        if cfg.record_every and rounds % cfg.record_every == 0:
            snapshots.append((rounds, x.copy()))
    if snapshots[-1][0] != rounds:
        snapshots.append((rounds, x.copy()))
    return ConsensusTrace(target, converged, rounds, x, snapshots, drift)


@dataclass
class DistributedMoment:
    k: int
    r: int
    estimate: float
    exact: Fraction
    trace: ConsensusTrace
    measurements: list[LocalMeasurement]

    def summary(self) -> str:
        return (
            f"k={self.k} r={self.r} rounds={self.trace.rounds} "
            f"estimate={self.estimate:.17g} exact={self.exact.numerator}/{self.exact.denominator}"
        )


def distributed_moment(
    host: Graph,
    r: int,
    k: int,
    cfg: ConsensusConfig | None = None,
    table: CoefficientTable | None = None,
    det: DetectorTable | None = None,
) -> DistributedMoment:
    """Estimate ``m_k`` by averaging the radius-``r`` local measurements.

    ``estimate`` is the value node 0 holds when the run stops; every other
    node holds the same value to within the configured tolerance. ``exact``
    is the rational mean of the measurements.
    """
    check_capability(k, r)
    if not is_connected(host):
        raise ConnectivityError("distributed moment needs a connected graph")
    measurements = local_measurements(host, r, k, table, det)
    trace = run_average_consensus(host, [m.mu for m in measurements], cfg)
    return DistributedMoment(k, r, float(trace.final[0]), trace.target, trace, measurements)
