"""Cluster stage: DBSCAN, shape estimation, slicing and sign unification."""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from ..core.errors import EstimationError
from ..types import Cluster, ClusterConfig, PointCloud
from ..utils.logger import OdrLogger, null_logger
from .density import dbscan
from .shape import make_cluster, split_cluster, unify_direction


def build_clusters(
    cloud: PointCloud,
    cfg: ClusterConfig,
    workers: Optional[int] = None,
    logger: Optional[OdrLogger] = None,
) -> List[Cluster]:
    """
    Turn a world-frame marking cloud into sign-unified, sliced clusters.

    Args:
        cloud: Accumulated marking cloud
        cfg: Clustering configuration
        workers: Worker cap for DBSCAN and per-cluster estimation
        logger: Optional category logger

    Returns:
        Clusters numbered 0..n-1 in DBSCAN label order, slices in order along
        their parent
    """
    log = logger or null_logger()
    result = dbscan(cloud, cfg, workers)

    def _shape(points: PointCloud) -> Optional[Cluster]:
        try:
            return make_cluster(0, points, cfg)
        except EstimationError as e:
            log.debug(
                "clustering", "dropping degenerate cluster", points=len(points), reason=e.message
            )
            return None

    with ThreadPoolExecutor(max_workers=workers) as pool:
        shaped = [c for c in pool.map(_shape, result.clusters) if c is not None]

    pieces: List[Cluster] = []
    for c in shaped:
        pieces.extend(split_cluster(c, cfg))
    unified = unify_direction(pieces)
    clusters = [c.model_copy(update={"id": i}) for i, c in enumerate(unified)]

    log.info(
        "clustering",
        "clustered marking cloud",
        points=len(cloud),
        noise=len(result.noise),
        dbscan_clusters=len(result.clusters),
        clusters=len(clusters),
        sliced=len(pieces) - len(shaped),
    )
    return clusters


def write_clusters_csv(clusters: Sequence[Cluster], path: Union[str, Path]) -> Path:
    """Dump cluster points as id,x,y,z rows."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blocks = [
        np.column_stack([np.full(len(c.points), c.id, dtype=np.float64), c.points.xyz])
        for c in clusters
    ]
    rows = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, 4))
    np.savetxt(path, rows, fmt=["%d", "%.17g", "%.17g", "%.17g"], delimiter=",",
               header="id,x,y,z", comments="")
    return path
