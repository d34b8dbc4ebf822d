"""Spectral moments of undirected graphs from motif counts and local views."""

__version__ = "0.1.0"

from .canon import CanonicalKey, build_atlas, canonical_key, is_isomorphic
from .consensus import ConsensusConfig, distributed_moment, run_average_consensus
from .errors import (
    CapabilityError,
    ConfigurationError,
    ConnectivityError,
    EdgeListError,
    MotifMomentsError,
    ParameterError,
    SizeError,
)
from .graph import Graph, emit_edge_list, parse_edge_list
from .local import detector_count, local_measurement, local_measurements, sum_check
from .motifs import census, moment_from_motifs, moment_trace_oracle
from .walks import build_coefficient_table, load_coefficient_table, omega

__all__ = [
    "CanonicalKey",
    "CapabilityError",
    "ConfigurationError",
    "ConnectivityError",
    "ConsensusConfig",
    "EdgeListError",
    "Graph",
    "MotifMomentsError",
    "ParameterError",
    "SizeError",
    "build_atlas",
    "build_coefficient_table",
    "canonical_key",
    "census",
    "detector_count",
    "distributed_moment",
    "emit_edge_list",
    "is_isomorphic",
    "load_coefficient_table",
    "local_measurement",
    "local_measurements",
    "moment_from_motifs",
    "moment_trace_oracle",
    "omega",
    "parse_edge_list",
    "run_average_consensus",
    "sum_check",
]
