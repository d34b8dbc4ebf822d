from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from motifmoments.canon import build_atlas
from motifmoments.errors import CapabilityError, ParameterError
from motifmoments.estimators import (
    DistributedSpectralMoments,
    MotifCensusTransformer,
    SpectralMoments,
    check_graph,
    check_graphs,
)
from motifmoments.graph import Graph, complete, erdos_renyi, ring, star
from motifmoments.motifs import census, moment_trace_oracle

GRAPHS = [ring(5), complete(4), star(3), erdos_renyi(10, 0.4, 1)]


class TestCheckGraph:
    def test_passthrough(self):
        g = ring(4)
        assert check_graph(g) is g

    def test_edge_list_string(self):
        assert check_graph("0 1\n1 2\n2 0\n") == complete(3)

    def test_networkx(self):
        h = nx.relabel_nodes(nx.cycle_graph(5), {i: chr(97 + i) for i in range(5)})
        assert check_graph(h) == ring(5)

    def test_directed_rejected(self):
        with pytest.raises(ValueError, match="directed"):
            check_graph(nx.DiGraph([(0, 1)]))

    def test_matrix(self):
        a = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        assert check_graph(a) == complete(3)

    @pytest.mark.parametrize(
        "bad, match",
        [
            (np.zeros((2, 3)), "square"),
            (np.array([[0, 2], [2, 0]]), "0 or 1"),
            (np.array([[0, 1], [0, 0]]), "symmetric"),
            (np.array([[1, 0], [0, 0]]), "diagonal"),
        ],
    )
    def test_matrix_errors(self, bad, match):
        with pytest.raises(ValueError, match=match):
            check_graph(bad)

    def test_collection_errors(self):
        with pytest.raises(ValueError):
            check_graphs(ring(4))
        with pytest.raises(ValueError):
            check_graphs([])


class TestMotifCensusTransformer:
    def test_features(self):
        t = MotifCensusTransformer(k=4).fit(GRAPHS)
        x = t.transform(GRAPHS)
        assert x.shape == (4, 7)
        assert x.dtype == np.int64
        names = list(t.get_feature_names_out())
        assert set(names) == {"K2", "P3", "K3", "P4", "K1,3", "C4", "paw"}
        for row, g in zip(x, GRAPHS):
            assert list(row) == [census(g, 4)[k] for k in build_atlas(4).keys()]

    def test_unnamed_motifs_get_ids(self):
        names = MotifCensusTransformer(k=5).fit().get_feature_names_out()
        assert len(names) == len(set(names)) == 16
        assert any(n.startswith("g") for n in names)

    def test_params_and_clone(self):
        t = MotifCensusTransformer(k=5)
        assert t.get_params() == {"k": 5}
        assert clone(t).k == 5

    def test_not_fitted(self):
        from sklearn.exceptions import NotFittedError

        with pytest.raises(NotFittedError):
            MotifCensusTransformer().transform(GRAPHS)


class TestSpectralMoments:
    @pytest.mark.parametrize("method", ["motifs", "trace", "closed-form"])
    def test_methods_agree_with_trace(self, method):
        exact = SpectralMoments(k_max=5, method=method).fit(GRAPHS).transform_exact(GRAPHS)
        for row, g in zip(exact, GRAPHS):
            assert row == [moment_trace_oracle(g, k) for k in range(1, 6)]
            assert all(isinstance(v, Fraction) for v in row)

    def test_pipeline(self):
        pipe = make_pipeline(SpectralMoments(k_max=4), StandardScaler())
        out = pipe.fit_transform(GRAPHS)
        assert out.shape == (4, 4)
        assert np.allclose(out[:, 1:].mean(axis=0), 0.0)

    def test_params(self):
        est = SpectralMoments(k_max=3, method="trace")
        assert est.get_params() == {"k_max": 3, "method": "trace"}
        assert clone(est).set_params(k_max=6).k_max == 6

    def test_feature_names(self):
        est = SpectralMoments(k_max=3).fit()
        assert list(est.get_feature_names_out()) == ["m1", "m2", "m3"]

    @pytest.mark.parametrize(
        "kwargs, error",
        [
            ({"method": "eig"}, ParameterError),
            ({"k_max": 0}, ParameterError),
            ({"k_max": 8}, CapabilityError),
            ({"k_max": 6, "method": "closed-form"}, CapabilityError),
        ],
    )
    def test_validation(self, kwargs, error):
        with pytest.raises(error):
            SpectralMoments(**kwargs).fit()

    def test_trace_beyond_table(self):
        x = SpectralMoments(k_max=8, method="trace").fit_transform([ring(5)])
        assert x[0, 7] == 70

    def test_nodeless_graph(self):
        with pytest.raises(ValueError):
            SpectralMoments().fit().transform([Graph(0)])


class TestDistributedSpectralMoments:
    def test_matches_exact(self):
        hosts = [ring(6), complete(4), erdos_renyi(12, 0.4, 3)]
        est = DistributedSpectralMoments(radius=2, absolute=True).fit(hosts)
        assert est.k_max_ == 5
        approx = est.transform(hosts)
        exact = SpectralMoments(k_max=5, method="trace").fit_transform(hosts)
        assert np.allclose(approx, exact, atol=1e-9, rtol=0)

    def test_capability(self):
        with pytest.raises(CapabilityError):
            DistributedSpectralMoments(radius=1, k_max=4).fit()

    def test_feature_names(self):
        est = DistributedSpectralMoments(radius=1).fit()
        assert list(est.get_feature_names_out()) == ["m1", "m2", "m3"]


def test_module_doctest():
    import doctest

    import motifmoments.estimators as module

    assert doctest.testmod(module).failed == 0
