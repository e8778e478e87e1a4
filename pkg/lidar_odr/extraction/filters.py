"""Range crop, plane/reflectivity filter and radius outlier removal."""

from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from ..core.errors import StructuralError
from ..types import ExtractionConfig, FrameTag, GroundPlane, PointCloud


def crop(cloud: PointCloud, cfg: ExtractionConfig) -> PointCloud:
    """Keep points within sensor range and not above the mounting height."""
    if cloud.frame is not FrameTag.VEHICLE:
        raise StructuralError("crop expects a vehicle-frame cloud")
    xyz = cloud.xyz
    keep = (np.linalg.norm(xyz, axis=1) <= cfg.max_range) & (xyz[:, 2] <= cfg.sensor_height)
    return cloud.subset(keep)


def filter_markings(cloud: PointCloud, plane: GroundPlane, cfg: ExtractionConfig) -> PointCloud:
    """
    Keep bright points at or below the raised ground plane.

    A point survives when normal.p <= offset + plane_raise and its reflectivity
    reaches the threshold; both predicates are applied in one pass.
    """
    near_ground = plane.signed_distance(cloud.xyz) <= cfg.plane_raise
    bright = cloud.reflectivity >= cfg.reflectivity_threshold
    return cloud.subset(near_ground & bright)


def neighbor_counts(xyz: np.ndarray, radius: float, workers: Optional[int] = None) -> np.ndarray:
    """Number of other points within radius (3D, inclusive) of each point."""
    if len(xyz) == 0:
        return np.zeros(0, dtype=np.int64)
    tree = cKDTree(xyz)
    counts = tree.query_ball_point(xyz, r=radius, return_length=True, workers=workers or 1)
    return np.asarray(counts, dtype=np.int64) - 1


def remove_radius_outliers(
    cloud: PointCloud, cfg: ExtractionConfig, workers: Optional[int] = None
) -> PointCloud:
    """Drop world-frame points with fewer than outlier_min_neighbors neighbors."""
    if cloud.frame is not FrameTag.WORLD:
        raise StructuralError("radius outlier removal expects a world-frame cloud")
    counts = neighbor_counts(cloud.xyz, cfg.outlier_radius, workers)
    return cloud.subset(counts >= cfg.outlier_min_neighbors)
