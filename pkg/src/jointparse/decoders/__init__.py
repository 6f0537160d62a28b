"""Chart decoders: exact and approximate, plus exhaustive references."""

from .brute import (
    arborescence_head_vectors,
    binary_shapes,
    brute_force_arborescence,
    brute_force_const,
    brute_force_dep,
    brute_force_joint,
    brute_force_projective,
    joint_skeletons,
    projective_head_vectors,
)
from .cky import cky_decode
from .common import (
    DecodeError,
    DecodeResult,
    DecodeStats,
    assign_dep_labels,
    score_const_tree,
    score_dep_tree,
    score_joint_tree,
)
from .eisner import eisner_decode
from .h3n import h3n_decode
from .hpsg import hpsg_decode
from .mst import mst_decode

__all__ = [
    "DecodeError",
    "DecodeResult",
    "DecodeStats",
    "arborescence_head_vectors",
    "assign_dep_labels",
    "binary_shapes",
    "brute_force_arborescence",
    "brute_force_const",
    "brute_force_dep",
    "brute_force_joint",
    "brute_force_projective",
    "cky_decode",
    "eisner_decode",
    "h3n_decode",
    "hpsg_decode",
    "joint_skeletons",
    "mst_decode",
    "projective_head_vectors",
    "score_const_tree",
    "score_dep_tree",
    "score_joint_tree",
]
