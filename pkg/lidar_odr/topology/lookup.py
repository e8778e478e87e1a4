"""Lateral neighbor relations between candidate lines."""

from collections import defaultdict
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from ..core.errors import TopologyError
from ..types import CandidateLine, RelationEntry, RelativeLookup, Side, TopologyConfig
from ..utils.geometry import left_normal

# Spacing the literal modulo quantization divides by.
MODULO_BASE = 3.0

# Hits closer than this fraction of a lane width are overlapping fragments, not neighbors.
MIN_RAY_FRACTION = 0.25


class SegmentNormals(NamedTuple):
    """Midpoints and unit normals of a line's non-degenerate 2D segments."""
    midpoints: np.ndarray
    left: np.ndarray
    right: np.ndarray


def calc_norm_vec(line: CandidateLine) -> SegmentNormals:
    """Left (-dy, dx) and right (dy, -dx) unit normals; zero-length segments are skipped."""
    xy = line.centers[:, :2]
    if len(xy) < 2:
        empty = np.zeros((0, 2))
        return SegmentNormals(empty, empty, empty)
    d = np.diff(xy, axis=0)
    keep = np.linalg.norm(d, axis=1) > 1e-9
    left = left_normal(d[keep]) if keep.any() else np.zeros((0, 2))
    mid = ((xy[:-1] + xy[1:]) / 2.0)[keep]
    return SegmentNormals(mid, left, -left)


def quantize(distance: float, cfg: TopologyConfig) -> Tuple[int, float]:
    """Lateral step count and residual for a neighbor distance."""
    if cfg.quantization == "modulo":
        residual = distance % MODULO_BASE
        return int(round((distance - residual) / MODULO_BASE)), residual
    steps = int(round(distance / cfg.nominal_lane_width))
    return steps, distance - steps * cfg.nominal_lane_width


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


class _SegmentIndex:
    """All 2D segments of all lines with a KD-tree over their midpoints."""

    def __init__(self, lines: Sequence[CandidateLine]):
        starts, ends, owners = [], [], []
        for line in lines:
            xy = line.centers[:, :2]
            if len(xy) < 2:
                continue
            keep = np.linalg.norm(np.diff(xy, axis=0), axis=1) > 1e-9
            starts.append(xy[:-1][keep])
            ends.append(xy[1:][keep])
            owners.append(np.full(int(keep.sum()), line.id, dtype=np.int64))
        self.a = np.vstack(starts) if starts else np.zeros((0, 2))
        self.b = np.vstack(ends) if ends else np.zeros((0, 2))
        self.owner = np.concatenate(owners) if owners else np.zeros(0, dtype=np.int64)
        lengths = np.linalg.norm(self.b - self.a, axis=1)
        self.half_max = float(lengths.max()) / 2.0 if len(lengths) else 0.0
        self._tree = cKDTree((self.a + self.b) / 2.0) if len(self.a) else None

    def cast(
        self,
        origins: np.ndarray,
        normals: np.ndarray,
        exclude: int,
        max_ray: float,
        min_ray: float = 0.0,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        Nearest segment hit per ray with min_ray < t <= max_ray.

        Returns:
            Owner line id (-1 for no hit) and hit distance per ray
        """
        owner = np.full(len(origins), -1, dtype=np.int64)
        dist = np.full(len(origins), np.inf)
        if self._tree is None or len(origins) == 0:
            return owner, dist
        near = self._tree.query_ball_point(origins, r=max_ray + self.half_max)
        flat = [np.asarray(n, dtype=np.int64) for n in near]
        pool = np.unique(np.concatenate(flat)) if flat else np.zeros(0, dtype=np.int64)
        pool = pool[self.owner[pool] != exclude]
        if pool.size == 0:
            return owner, dist

        a, e = self.a[pool][None, :, :], (self.b[pool] - self.a[pool])[None, :, :]
        p, n = origins[:, None, :], normals[:, None, :]
        denom = _cross(n, e)
        parallel = np.abs(denom) < 1e-12
        safe = np.where(parallel, 1.0, denom)
        t = _cross(a - p, e) / safe
        u = _cross(a - p, n) / safe
        valid = ~parallel & (t > min_ray) & (t <= max_ray) & (u >= 0) & (u <= 1)
        t = np.where(valid, t, np.inf)
        best = np.argmin(t, axis=1)
        rows = np.arange(len(origins))
        hit = np.isfinite(t[rows, best])
        owner[hit] = self.owner[pool[best[hit]]]
        dist[hit] = t[rows, best][hit]
        return owner, dist


def relative_lookup(
    lines: Sequence[CandidateLine], cfg: TopologyConfig
) -> Dict[int, RelativeLookup]:
    """
    Lateral relations seen from every line.

    From each segment midpoint a left and a right ray is cast; the nearest
    intersection with another line's segment within max_ray counts as one
    observation. Observations are aggregated per neighbor: the majority side
    wins, its distance is the median over its samples.

    Raises:
        TopologyError: A neighbor is seen on both sides with comparable support
    """
    index = _SegmentIndex(lines)
    min_ray = MIN_RAY_FRACTION * cfg.nominal_lane_width
    lookups: Dict[int, RelativeLookup] = {}
    for line in lines:
        normals = calc_norm_vec(line)
        votes: Dict[int, Dict[Side, List[float]]] = defaultdict(
            lambda: {Side.LEFT: [], Side.RIGHT: []}
        )
        for side, directions in ((Side.LEFT, normals.left), (Side.RIGHT, normals.right)):
            owner, dist = index.cast(
                normals.midpoints, directions, line.id, cfg.max_ray, min_ray
            )
            for other, d in zip(owner.tolist(), dist.tolist()):
                if other >= 0:
                    votes[other][side].append(d)

        entries = []
        for other in sorted(votes):
            left, right = votes[other][Side.LEFT], votes[other][Side.RIGHT]
            if len(left) >= len(right):
                side, major, minor = Side.LEFT, left, right
            else:
                side, major, minor = Side.RIGHT, right, left
            if minor and len(minor) / len(major) >= cfg.contradiction_ratio:
                raise TopologyError(
                    f"line {other} seen both left ({len(left)}) and right ({len(right)})",
                    line_ids=(line.id, other),
                )
            distance = float(np.median(major))
            if distance <= 0:
                continue
            steps, residual = quantize(distance, cfg)
            entries.append(
                RelationEntry(
                    line_id=other,
                    side=side,
                    distance=distance,
                    steps=steps,
                    support=len(major),
                    residual=residual,
                    samples=[float(v) for v in major],
                )
            )
        lookups[line.id] = RelativeLookup(source_id=line.id, entries=entries)
    return lookups


def relation_delta(entry: RelationEntry) -> int:
    """Offset of the neighbor minus offset of the source (offsets grow to the right)."""
    return entry.steps if entry.side is Side.RIGHT else -entry.steps

