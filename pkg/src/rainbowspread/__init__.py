"""Spread oracles, rainbow lifting, fragmentation and threshold experiments
for randomly colored random structures."""

__version__ = "0.1.0"

from .hypergraph import Hypergraph, read_hypergraph, write_hypergraph
from .spread import SpreadCertificate, containment_count, is_kappa_spread, max_spread, pad_to_uniform
from .lifting import LiftedEdge, expected_edge_count, lift_rainbow, lifted_containment_count
from .rng import RngStream

__all__ = [
    "Hypergraph",
    "read_hypergraph",
    "write_hypergraph",
    "SpreadCertificate",
    "containment_count",
    "is_kappa_spread",
    "max_spread",
    "pad_to_uniform",
    "LiftedEdge",
    "expected_edge_count",
    "lift_rainbow",
    "lifted_containment_count",
    "RngStream",
]
