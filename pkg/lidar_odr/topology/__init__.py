"""Lane topology without odometry: relations, superlines and the road model."""

from .lookup import (
    MODULO_BASE,
    SegmentNormals,
    calc_norm_vec,
    quantize,
    relation_delta,
    relative_lookup,
)
from .resolve import (
    OffsetUnionFind,
    check_contiguous,
    global_lookup,
    resolve_topology,
    write_relations_csv,
)
from .road import adjacent_width_samples, build_road_model, chain_tangents

__all__ = [
    "MODULO_BASE",
    "SegmentNormals",
    "calc_norm_vec",
    "quantize",
    "relation_delta",
    "relative_lookup",
    "OffsetUnionFind",
    "check_contiguous",
    "global_lookup",
    "resolve_topology",
    "write_relations_csv",
    "adjacent_width_samples",
    "build_road_model",
    "chain_tangents",
]
