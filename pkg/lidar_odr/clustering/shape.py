"""Per-cluster center, direction, slicing and sign unification."""

import math
from typing import List, Optional, Sequence

import numpy as np

from ..core.errors import EstimationError
from ..types import Cluster, ClusterConfig, PointCloud
from ..utils.geometry import principal_direction

# Largest over second singular value below which a point set has no dominant axis.
ISOTROPY_RATIO = 1.5


def calc_center_bb(points: PointCloud) -> np.ndarray:
    """Center of the axis-aligned bounding box."""
    if len(points) == 0:
        raise EstimationError("bounding box center", "cluster is empty")
    xyz = points.xyz
    return (xyz.min(axis=0) + xyz.max(axis=0)) / 2.0


def line_ransac(points: PointCloud, cfg: ClusterConfig) -> np.ndarray:
    """
    Dominant 3D line direction of a point set.

    Two-point hypotheses are scored by the number of points within
    line_ransac_tol of the line. The result is the principal direction of all
    points; the winning hypothesis is returned when their spread has no
    dominant axis. The sign is arbitrary.

    Raises:
        EstimationError: Fewer than two distinct points
    """
    xyz = points.xyz
    distinct = np.unique(xyz, axis=0)
    if len(distinct) < 2:
        raise EstimationError("line RANSAC", "need at least 2 distinct points")
    if len(distinct) == 2:
        chord = distinct[1] - distinct[0]
        return chord / np.linalg.norm(chord)

    rng = np.random.default_rng(cfg.rng_seed)
    n = len(xyz)
    best_count = -1
    best: Optional[np.ndarray] = None
    for _ in range(cfg.line_ransac_iterations):
        i, j = rng.choice(n, size=2, replace=False)
        direction = xyz[j] - xyz[i]
        norm = np.linalg.norm(direction)
        if norm < 1e-12:
            continue
        direction /= norm
        rel = xyz - xyz[i]
        along = rel @ direction
        dist = np.linalg.norm(rel - along[:, None] * direction, axis=1)
        inliers = dist <= cfg.line_ransac_tol
        count = int(inliers.sum())
        if count > best_count:
            best_count, best = count, direction

    spread = np.linalg.svd(xyz - xyz.mean(axis=0), compute_uv=False)
    if best is not None and spread[0] < ISOTROPY_RATIO * spread[1]:
        return best
    return principal_direction(xyz)


def projection_extent(points: PointCloud, direction: np.ndarray) -> float:
    t = points.xyz @ direction
    return float(t.max() - t.min()) if len(t) else 0.0


def make_cluster(cluster_id: int, points: PointCloud, cfg: ClusterConfig) -> Cluster:
    """Cluster with bounding-box center, RANSAC direction and projected length."""
    direction = line_ransac(points, cfg)
    return Cluster(
        id=cluster_id,
        points=points,
        center=calc_center_bb(points),
        raw_direction=direction,
        length=projection_extent(points, direction),
    )


def split_cluster(c: Cluster, cfg: ClusterConfig) -> List[Cluster]:
    """
    Slice a long cluster into uniform pieces along its direction.

    Clusters up to split_threshold come back unchanged. Longer ones are cut
    into n = ceil(length / slice_length) bins of equal projected extent; each
    non-empty bin becomes a cluster with its own center and direction, and a
    slice that is still longer than the threshold is split again. Slices keep
    the parent's id.
    """
    if c.length <= cfg.split_threshold:
        return [c]

    n = math.ceil(c.length / cfg.slice_length)
    width = c.length / n
    t = c.points.xyz @ c.raw_direction
    bins = np.minimum(((t - t.min()) / width).astype(np.int64), n - 1)

    slices: List[Cluster] = []
    for k in range(n):
        mask = bins == k
        if not mask.any():
            continue
        part = c.points.subset(mask)
        try:
            piece = make_cluster(c.id, part, cfg)
        except EstimationError:
            piece = Cluster(
                id=c.id,
                points=part,
                center=calc_center_bb(part),
                raw_direction=c.raw_direction,
                length=projection_extent(part, c.raw_direction),
            )
        if piece.length > cfg.split_threshold:
            slices.extend(split_cluster(piece, cfg))
        else:
            slices.append(piece)
    return slices


def unify_direction(
    clusters: Sequence[Cluster], origin: Optional[np.ndarray] = None
) -> List[Cluster]:
    """Flip each direction to point away from the origin; centers at the origin keep theirs."""
    anchor = np.zeros(3) if origin is None else np.asarray(origin, dtype=np.float64)
    unified = []
    for c in clusters:
        if float(c.raw_direction @ (c.center - anchor)) < 0:
            c = c.model_copy(update={"raw_direction": -c.raw_direction})
        unified.append(c)
    return unified
