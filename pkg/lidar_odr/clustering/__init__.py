"""Marking clustering: DBSCAN, centers, directions and solid-line slicing."""

from .builder import build_clusters, write_clusters_csv
from .density import DensityClusters, dbscan
from .shape import (
    calc_center_bb,
    line_ransac,
    make_cluster,
    projection_extent,
    split_cluster,
    unify_direction,
)

__all__ = [
    "build_clusters",
    "write_clusters_csv",
    "DensityClusters",
    "dbscan",
    "calc_center_bb",
    "line_ransac",
    "make_cluster",
    "projection_extent",
    "split_cluster",
    "unify_direction",
]
