"""Concrete semilattices, actions and cover systems for four example families."""

from .graph import GraphDesc, graph_complex, graph_ktheory, graph_model
from .nq import NqDesc, check_nq, nq_complex, nq_ktheory
from .raam import RaamDesc, raam_complex, raam_ktheory
from .tiling import TilingDesc, tiling_complex, tiling_ktheory, tiling_model

__all__ = [
    "GraphDesc", "graph_complex", "graph_ktheory", "graph_model",
    "NqDesc", "check_nq", "nq_complex", "nq_ktheory",
    "RaamDesc", "raam_complex", "raam_ktheory",
    "TilingDesc", "tiling_complex", "tiling_ktheory", "tiling_model",
]
