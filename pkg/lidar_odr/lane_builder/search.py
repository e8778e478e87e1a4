"""Directional mark search: chain clusters into candidate lines."""

from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from ..types import CandidateLine, Cluster, SearchConfig
from ..utils.geometry import greedy_chain_order, point_segment_distance


def stabilize_direction(
    v_star_i: np.ndarray, v_star_prev: np.ndarray, gamma: float
) -> np.ndarray:
    """
    Blend the newest and the previous cluster direction.

    Returns gamma * v_star_i + (1 - gamma) * v_star_prev renormalized; an
    all-but-zero blend (antiparallel inputs) falls back to v_star_i.
    """
    v_i = np.asarray(v_star_i, dtype=np.float64)
    if gamma == 1.0:
        return v_i.copy()
    blend = gamma * v_i + (1.0 - gamma) * np.asarray(v_star_prev, dtype=np.float64)
    norm = np.linalg.norm(blend)
    if norm < 1e-12:
        return v_i / np.linalg.norm(v_i)
    return blend / norm


class ClusterIndex:
    """
    Read-only KD-tree over cluster centers with a mutable consumption mask.

    Positions index the cluster list; queries only return unconsumed ones.
    """

    def __init__(self, clusters: Sequence[Cluster]):
        self.clusters = list(clusters)
        self.centers = np.array([c.center for c in self.clusters], dtype=np.float64).reshape(-1, 3)
        self.ids = np.array([c.id for c in self.clusters], dtype=np.int64)
        self.consumed = np.zeros(len(self.clusters), dtype=bool)
        self._tree = cKDTree(self.centers) if len(self.clusters) else None
        self._position: Dict[int, int] = {c.id: i for i, c in enumerate(self.clusters)}

    def __len__(self) -> int:
        return len(self.clusters)

    def position(self, cluster_id: int) -> int:
        return self._position[cluster_id]

    def consume(self, pos: int) -> None:
        self.consumed[pos] = True

    def free_within(self, point: np.ndarray, radius: float) -> List[int]:
        if self._tree is None:
            return []
        hits = self._tree.query_ball_point(point, r=radius)
        return [i for i in hits if not self.consumed[i]]

    def nearest_free(self, point: np.ndarray, radius: float) -> Optional[int]:
        """Closest unconsumed center within radius; ties go to the lower id."""
        hits = self.free_within(point, radius)
        if not hits:
            return None
        dist = np.linalg.norm(self.centers[hits] - point, axis=1)
        return min(zip(dist.tolist(), self.ids[hits].tolist(), hits))[2]

    def free_near_segment(self, a: np.ndarray, b: np.ndarray, tol: float) -> List[int]:
        """Unconsumed centers within tol of segment a-b, ordered from a to b."""
        half = np.linalg.norm(b - a) / 2.0
        hits = self.free_within((a + b) / 2.0, half + tol)
        if not hits:
            return []
        pts = self.centers[hits]
        close = point_segment_distance(pts, a, b) <= tol
        hits = [h for h, ok in zip(hits, close) if ok]
        along = b - a
        return sorted(hits, key=lambda h: (float((self.centers[h] - a) @ along), int(self.ids[h])))


def _probe_distances(cfg: SearchConfig) -> np.ndarray:
    count = int(np.floor(cfg.search_length / cfg.step + 1e-9))
    return cfg.step * np.arange(1, count + 1)


def search_mark(
    seed: Cluster, index: ClusterIndex, cfg: SearchConfig, line_id: int = 0
) -> CandidateLine:
    """
    Grow one candidate line from a seed cluster.

    From the current center the search probes p_c = center + v * d for
    d = step, 2 step, ... up to search_length; the first probe with an
    unconsumed center within ball_radius wins (closest to the probe, then
    lowest id). Centers lying within seg_attach_tol of the new segment are
    attached as well. After each hit the search direction becomes the
    stabilized blend of the last two cluster directions. The line ends when a
    full sweep finds nothing.

    Args:
        seed: Unconsumed cluster that starts the line
        index: Shared cluster index; consumed clusters are marked in it
        cfg: Search configuration
        line_id: Identifier given to the produced line

    Returns:
        Candidate line in discovery order
    """
    seed_pos = index.position(seed.id)
    index.consume(seed_pos)
    chain = [seed_pos]
    v_hat = seed.raw_direction.copy()
    probes = _probe_distances(cfg)

    current = seed_pos
    while True:
        hit = None
        origin = index.centers[current]
        for d in probes:
            hit = index.nearest_free(origin + v_hat * d, cfg.ball_radius)
            if hit is not None:
                break
        if hit is None:
            break

        index.consume(hit)
        for extra in index.free_near_segment(origin, index.centers[hit], cfg.seg_attach_tol):
            index.consume(extra)
            chain.append(extra)
        chain.append(hit)

        v_hat = stabilize_direction(
            index.clusters[hit].raw_direction, index.clusters[current].raw_direction, cfg.gamma
        )
        current = hit

    clusters = [index.clusters[p] for p in chain]
    return CandidateLine(
        id=line_id,
        cluster_ids=[c.id for c in clusters],
        centers=np.array([c.center for c in clusters]),
        directions=np.array([c.raw_direction for c in clusters]),
        stabilized_direction=v_hat,
    )


def dist_sort(line: CandidateLine, origin: Optional[np.ndarray] = None) -> CandidateLine:
    """Reorder a line's clusters by greedy nearest-neighbor chaining from the origin."""
    order = greedy_chain_order(line.centers, origin)
    if np.array_equal(order, np.arange(len(line))):
        return line
    return line.model_copy(
        update={
            "cluster_ids": [line.cluster_ids[i] for i in order],
            "centers": line.centers[order],
            "directions": line.directions[order],
        }
    )
