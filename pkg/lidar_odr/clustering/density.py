"""Density-based clustering of the accumulated marking cloud."""

from typing import List, NamedTuple, Optional

import numpy as np
from sklearn.cluster import DBSCAN

from ..core.errors import StructuralError
from ..types import ClusterConfig, FrameTag, PointCloud


class DensityClusters(NamedTuple):
    """DBSCAN outcome: one cloud per cluster label plus labels and core mask."""
    clusters: List[PointCloud]
    noise: PointCloud
    labels: np.ndarray
    core_mask: np.ndarray


def dbscan(cloud: PointCloud, cfg: ClusterConfig, workers: Optional[int] = None) -> DensityClusters:
    """
    Cluster a world-frame cloud with DBSCAN.

    A point is core when at least dbscan_min_pts points (itself included) lie
    within dbscan_eps. Clusters are returned in label order; label -1 is noise.

    Args:
        cloud: World-frame marking cloud
        cfg: Clustering configuration
        workers: Parallel jobs for the neighbor queries

    Returns:
        Cluster clouds, the noise cloud, per-point labels and the core mask
    """
    if cloud.frame is not FrameTag.WORLD:
        raise StructuralError("dbscan expects a world-frame cloud")
    n = len(cloud)
    if n == 0:
        return DensityClusters([], cloud, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=bool))

    model = DBSCAN(eps=cfg.dbscan_eps, min_samples=cfg.dbscan_min_pts, n_jobs=workers)
    model.fit(cloud.xyz)
    labels = model.labels_.astype(np.int64)
    core_mask = np.zeros(n, dtype=bool)
    core_mask[model.core_sample_indices_] = True

    clusters = [cloud.subset(labels == label) for label in range(int(labels.max()) + 1)]
    return DensityClusters(clusters, cloud.subset(labels < 0), labels, core_mask)
