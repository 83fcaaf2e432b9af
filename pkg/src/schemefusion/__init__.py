"""Exact eigenmatrices, fusions and amorphicity tests for symmetric association schemes."""

from .amorphic import brute_force_amorphic, canonical_check, decide, self_duality_check, implication_audit
from .errors import InputError, SchemeError
from .exact import RatMatrix
from .fusegraph import FusingGraph, contract, fusing_graph, graph_profile
from .fusion import IndexPartition, bm_check, fuse_relations, fuses, fusing_pairs
from .scheme import RelationTable, SpectralData, spectral_from_P, spectrum, validate_table

__version__ = "0.1.0"

__all__ = [
    "FusingGraph", "IndexPartition", "InputError", "RatMatrix", "RelationTable",
    "SchemeError", "SpectralData", "bm_check", "brute_force_amorphic", "canonical_check",
    "contract", "decide", "fuse_relations", "fuses", "fusing_graph", "fusing_pairs",
    "graph_profile", "self_duality_check", "spectral_from_P", "spectrum", "implication_audit",
    "validate_table",
]
