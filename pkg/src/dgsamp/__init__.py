"""Sampling-set selection and signal reconstruction on directed graphs."""

from .digraph import (
    DiGraph,
    NormalizedAdjacency,
    RwLaplacian,
    from_edges,
    gen_er_digraph,
    load_graph,
    normalized_adjacency,
    random_walk_laplacian,
    to_edges,
    validate,
)
from .gda_direct import GdaParams, gda_direct_sample
from .gdas import GdasOutcome, gdas_sample
from .recon import ReconResult, SampleSet, gsv, mse, reconstruct

__all__ = [
    "DiGraph",
    "NormalizedAdjacency",
    "RwLaplacian",
    "from_edges",
    "gen_er_digraph",
    "load_graph",
    "normalized_adjacency",
    "random_walk_laplacian",
    "to_edges",
    "validate",
    "GdaParams",
    "gda_direct_sample",
    "GdasOutcome",
    "gdas_sample",
    "ReconResult",
    "SampleSet",
    "gsv",
    "mse",
    "reconstruct",
]
