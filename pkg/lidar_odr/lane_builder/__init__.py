"""Candidate lane-marking lines: directional search and occlusion merging."""

from .builder import build_candidates, seed_order, write_candidates_csv
from .combine import EndState, combine_candidates, end_state, sweep_points
from .search import ClusterIndex, dist_sort, search_mark, stabilize_direction

__all__ = [
    "build_candidates",
    "seed_order",
    "write_candidates_csv",
    "EndState",
    "combine_candidates",
    "end_state",
    "sweep_points",
    "ClusterIndex",
    "dist_sort",
    "search_mark",
    "stabilize_direction",
]
