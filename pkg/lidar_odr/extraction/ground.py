"""RANSAC ground-plane estimation."""

import numpy as np

from ..core.errors import EstimationError
from ..types import ExtractionConfig, GroundPlane, PointCloud

_CHUNK = 64


def ground_inlier_mask(cloud: PointCloud, plane: GroundPlane, tol: float) -> np.ndarray:
    """Points within tol of the plane."""
    return np.abs(plane.signed_distance(cloud.xyz)) <= tol


def _total_least_squares(xyz: np.ndarray) -> tuple[np.ndarray, float]:
    centroid = xyz.mean(axis=0)
    _, _, vt = np.linalg.svd(xyz - centroid, full_matrices=False)
    normal = vt[-1] / np.linalg.norm(vt[-1])
    if normal[2] < 0:
        normal = -normal
    return normal, float(normal @ centroid)


def fit_ground_plane(cloud: PointCloud, cfg: ExtractionConfig) -> GroundPlane:
    """
    Estimate the road surface with 3-point RANSAC and refine it on the inliers.

    Candidate planes are scored by inlier count (|n.p - d| <= ransac_inlier_tol);
    the first best candidate wins, so a fixed rng_seed gives a bit-identical
    plane. The winner is refined by total least squares over its inliers.

    Args:
        cloud: Points of one frame (any frame tag; the plane lives in it)
        cfg: Extraction configuration

    Returns:
        Upward-oriented plane with its final inlier count

    Raises:
        EstimationError: Fewer than 3 points or all points collinear
    """
    xyz = cloud.xyz
    n = len(xyz)
    if n < 3:
        raise EstimationError("ground plane RANSAC", f"need at least 3 points, got {n}")
    singular = np.linalg.svd(xyz - xyz.mean(axis=0), compute_uv=False)
    if singular[1] <= 1e-9 * max(singular[0], 1.0):
        raise EstimationError("ground plane RANSAC", "points are collinear")

    rng = np.random.default_rng(cfg.rng_seed)
    samples = np.stack(
        [rng.choice(n, size=3, replace=False) for _ in range(cfg.ransac_iterations)]
    )
    p0, p1, p2 = xyz[samples[:, 0]], xyz[samples[:, 1]], xyz[samples[:, 2]]
    normals = np.cross(p1 - p0, p2 - p0)
    norms = np.linalg.norm(normals, axis=1)
    valid = norms > 1e-12
    normals[valid] /= norms[valid, None]
    normals[normals[:, 2] < 0] *= -1.0
    offsets = np.einsum("ij,ij->i", normals, p0)

    counts = np.full(len(samples), -1, dtype=np.int64)
    for start in range(0, len(samples), _CHUNK):
        sl = slice(start, start + _CHUNK)
        dist = np.abs(xyz @ normals[sl].T - offsets[sl])
        counts[sl] = (dist <= cfg.ransac_inlier_tol).sum(axis=0)
    counts[~valid] = -1

    best = int(np.argmax(counts))
    if counts[best] >= 3:
        inliers = np.abs(xyz @ normals[best] - offsets[best]) <= cfg.ransac_inlier_tol
        normal, offset = _total_least_squares(xyz[inliers])
    else:
        normal, offset = _total_least_squares(xyz)

    if normal[2] <= 0:
        raise EstimationError("ground plane RANSAC", "best plane is vertical")
    inlier_count = int((np.abs(xyz @ normal - offset) <= cfg.ransac_inlier_tol).sum())
    return GroundPlane(normal=normal, offset=offset, inlier_count=inlier_count)
