"""scikit-learn compatible transformers over collections of graphs.

Each sample is one graph. Samples may be :class:`~motifmoments.graph.Graph`
objects, edge-list strings, square 0/1 adjacency matrices, or any object with
``nodes`` and ``edges`` attributes (e.g. a networkx graph).

>>> from motifmoments.graph import ring, complete
>>> SpectralMoments(k_max=4).fit_transform([ring(5), complete(3)])
array([[0., 2., 0., 6.],
       [0., 2., 2., 6.]])
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .canon import build_atlas, motif_name
from .consensus import ConsensusConfig, distributed_moment
from .errors import CapabilityError, ParameterError
from .graph import Graph, parse_edge_list
from .local import check_capability, load_detector_table
from .motifs import (
    census,
    closed_form_walk_count,
    closed_walk_count,
    walk_count_from_motifs,
)
from .walks import build_coefficient_table, load_coefficient_table

__all__ = [
    "check_graph",
    "check_graphs",
    "MotifCensusTransformer",
    "SpectralMoments",
    "DistributedSpectralMoments",
]


def check_graph(obj) -> Graph:
    """Coerce one sample into a :class:`Graph`, rejecting anything ambiguous."""
    if isinstance(obj, Graph):
        return obj
    if isinstance(obj, str):
        return parse_edge_list(obj)
    if hasattr(obj, "nodes") and hasattr(obj, "edges"):
        if getattr(obj, "is_directed", lambda: False)():
            raise ValueError("directed graphs are not supported")
        labels = sorted(obj.nodes())
        index = {v: i for i, v in enumerate(labels)}
        return Graph(len(labels), ((index[u], index[v]) for u, v in obj.edges()))
    a = np.asarray(obj)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
    if not np.isin(a, (0, 1)).all():
        raise ValueError("adjacency matrix entries must be 0 or 1")
    if not (a == a.T).all():
        raise ValueError("adjacency matrix must be symmetric")
    if np.diag(a).any():
        raise ValueError("adjacency matrix must have a zero diagonal (no self-loops)")
    rows, cols = np.nonzero(np.triu(a, 1))
    return Graph(a.shape[0], zip(rows.tolist(), cols.tolist()))


def check_graphs(X) -> list[Graph]:
    if isinstance(X, (Graph, str)):
        raise ValueError("expected a sequence of graphs; wrap a single graph in a list")
    graphs = [check_graph(x) for x in X]
    if not graphs:
        raise ValueError("expected at least one graph")
    return graphs


class MotifCensusTransformer(TransformerMixin, BaseEstimator):
    """Motif frequencies as features, one column per atlas motif.

    Parameters
    ----------
    k : int, default=4
        Motifs with at most ``k`` nodes and ``k`` edges are counted (2..7).
    """

    def __init__(self, k=4):
        self.k = k

    def fit(self, X=None, y=None):
        atlas = build_atlas(self.k)
        self.keys_ = atlas.keys()
        self.feature_names_ = np.array(
            [motif_name(m.key) or f"g{m.id}" for m in atlas], dtype=object
        )
        self.n_features_out_ = len(self.keys_)
        return self

    def transform(self, X):
        check_is_fitted(self, "keys_")
        rows = [census(g, self.k).counts for g in check_graphs(X)]
        return np.array([[row[key] for key in self.keys_] for row in rows], dtype=np.int64)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "keys_")
        return self.feature_names_.copy()


class SpectralMoments(TransformerMixin, BaseEstimator):
    """Spectral moments ``m_1 .. m_k_max`` of each graph's adjacency matrix.

    Parameters
    ----------
    k_max : int, default=5
        Highest moment order.
    method : {"motifs", "trace", "closed-form"}, default="motifs"
        ``motifs`` sums weighted motif frequencies (k_max <= 7), ``trace``
        uses exact matrix powers, ``closed-form`` uses degree, triangle and
        cycle statistics (k_max <= 5).
    """

    def __init__(self, k_max=5, method="motifs"):
        self.k_max = k_max
        self.method = method

    def fit(self, X=None, y=None):
        if self.method not in ("motifs", "trace", "closed-form"):
            raise ParameterError(f"unknown method {self.method!r}")
        if self.k_max < 1:
            raise ParameterError("k_max must be >= 1")
        if self.method == "motifs" and self.k_max > 7:
            raise CapabilityError("motif weights are tabulated for k <= 7", self.k_max, 7)
        if self.method == "closed-form" and self.k_max > 5:
            raise CapabilityError("closed forms exist for k <= 5", self.k_max, 5)
        if self.method == "motifs":
            shipped = load_coefficient_table()
            self.coefficients_ = (
                shipped if shipped.covers(max(self.k_max, 2)) else build_coefficient_table(self.k_max)
            )
        else:
            self.coefficients_ = None
        self.n_features_out_ = self.k_max
        return self

    def _walks(self, g: Graph, k: int) -> int:
        if self.method == "trace":
            return closed_walk_count(g, k)
        if self.method == "closed-form":
            return closed_form_walk_count(g, k)
        return walk_count_from_motifs(g, k, self.coefficients_)

    def transform_exact(self, X) -> list[list[Fraction]]:
        check_is_fitted(self, "n_features_out_")
        out = []
        for g in check_graphs(X):
            if g.node_count == 0:
                raise ValueError("graph without nodes has no spectral moments")
            out.append([Fraction(self._walks(g, k), g.node_count) for k in range(1, self.k_max + 1)])
        return out

    def transform(self, X):
        return np.array([[float(v) for v in row] for row in self.transform_exact(X)])

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "n_features_out_")
        return np.array([f"m{k}" for k in range(1, self.k_max + 1)], dtype=object)


class DistributedSpectralMoments(TransformerMixin, BaseEstimator):
    """Moments estimated by average consensus over radius-``radius`` local views.

    Parameters
    ----------
    radius : int, default=1
        Neighbourhood radius each node can see.
    k_max : int or None, default=None
        Highest moment order; defaults to ``min(2 * radius + 1, 7)``.
    tolerance, max_rounds, absolute
        Consensus stopping rule, see :class:`~motifmoments.consensus.ConsensusConfig`.
    """

    def __init__(self, radius=1, k_max=None, tolerance=1e-10, max_rounds=100_000, absolute=False):
        self.radius = radius
        self.k_max = k_max
        self.tolerance = tolerance
        self.max_rounds = max_rounds
        self.absolute = absolute

    def fit(self, X=None, y=None):
        k_max = self.k_max if self.k_max is not None else min(2 * self.radius + 1, 7)
        check_capability(k_max, self.radius)
        if k_max > 7:
            raise CapabilityError("motif weights are tabulated for k <= 7", k_max, 7)
        self.k_max_ = k_max
        self.config_ = ConsensusConfig(
            tolerance=self.tolerance, max_rounds=self.max_rounds, absolute=self.absolute
        )
        self.coefficients_ = load_coefficient_table()
        self.detectors_ = load_detector_table()
        self.n_features_out_ = k_max
        return self

    def transform(self, X):
        check_is_fitted(self, "k_max_")
        rows = []
        for g in check_graphs(X):
            row = [0.0]
            for k in range(2, self.k_max_ + 1):
                result = distributed_moment(
                    g, self.radius, k, self.config_, self.coefficients_, self.detectors_
                )
                row.append(result.estimate)
            rows.append(row)
        return np.array(rows)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "k_max_")
        return np.array([f"m{k}" for k in range(1, self.k_max_ + 1)], dtype=object)
