"""Candidate-line stage: seeded search, sorting and combination."""

import itertools
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from ..types import CandidateLine, Cluster, SearchConfig
from ..utils.logger import OdrLogger, null_logger
from .combine import combine_candidates
from .search import ClusterIndex, dist_sort, search_mark


def seed_order(clusters: Sequence[Cluster]) -> List[Cluster]:
    """Clusters by distance from the origin, lowest id first on ties."""
    return sorted(clusters, key=lambda c: (float(np.linalg.norm(c.center)), c.id))


def build_candidates(
    clusters: Sequence[Cluster], cfg: SearchConfig, logger: Optional[OdrLogger] = None
) -> List[CandidateLine]:
    """
    Chain all clusters into candidate lines and merge them across gaps.

    Seeds are taken closest to the origin first; every cluster ends up in
    exactly one line. Line ids come from a counter in seed order.
    """
    log = logger or null_logger()
    index = ClusterIndex(clusters)
    ids = itertools.count()
    lines: List[CandidateLine] = []
    for seed in seed_order(clusters):
        if index.consumed[index.position(seed.id)]:
            continue
        lines.append(dist_sort(search_mark(seed, index, cfg, next(ids))))

    combined = combine_candidates(lines, cfg)
    log.info(
        "lane_builder",
        "built candidate lines",
        clusters=len(clusters),
        searched=len(lines),
        combined=len(combined),
    )
    return combined


def write_candidates_csv(lines: Sequence[CandidateLine], path: Union[str, Path]) -> Path:
    """Dump candidate lines as ordered polylines (line_id, order, x, y, z)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blocks = [
        np.column_stack(
            [
                np.full(len(l), l.id, dtype=np.float64),
                np.arange(len(l), dtype=np.float64),
                l.centers,
            ]
        )
        for l in lines
    ]
    rows = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, 5))
    np.savetxt(path, rows, fmt=["%d", "%d", "%.17g", "%.17g", "%.17g"], delimiter=",",
               header="line_id,order,x,y,z", comments="")
    return path
