"""Lane-marking extraction: crop, ground plane, reflectivity and outlier filters."""

from .filters import crop, filter_markings, neighbor_counts, remove_radius_outliers
from .frame import extract_frame, extract_markings
from .ground import fit_ground_plane, ground_inlier_mask

__all__ = [
    "crop",
    "filter_markings",
    "neighbor_counts",
    "remove_radius_outliers",
    "extract_frame",
    "extract_markings",
    "fit_ground_plane",
    "ground_inlier_mask",
]
