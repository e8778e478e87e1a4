"""Map comparison, continuity and lane-width statistics."""

import math
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from ..core.errors import EvaluationError
from ..odr.sampling import end_pose, heading_at, sample_at, station_grid
from ..types import (
    ContinuityEntry,
    ContinuityReport,
    ExportConfig,
    LaneWidthStats,
    MapDistanceReport,
    OdrDocument,
    RoadModel,
)
from ..utils.geometry import wrap_angle


def map_distance(
    doc_a: OdrDocument,
    doc_b: OdrDocument,
    step: float = 1.0,
    oversample: int = 10,
    workers: int = 1,
) -> MapDistanceReport:
    """
    Distance statistics of the reference line of A against that of B.

    A is sampled every `step` meters. B is sampled every step / oversample
    meters, together with A's stations that fall on B, and each A sample is
    matched to its nearest B sample in the XY plane.

    Args:
        doc_a: Evaluated document
        doc_b: Reference document
        step: Station spacing along A
        oversample: Density factor of B's sampling
        workers: Threads for the nearest-neighbor queries

    Returns:
        RMSE, mean, population standard deviation and maximum of the distances

    Raises:
        EvaluationError: Either document has no geometry
    """
    if step <= 0 or oversample < 1:
        raise EvaluationError("step must be positive and oversample at least 1")
    if not doc_a.plan_view or not doc_b.plan_view:
        raise EvaluationError("cannot compare a document without geometries")

    s_a = station_grid(doc_a.length, step)
    length_b = doc_b.length
    s_b = np.union1d(station_grid(length_b, step / oversample), s_a[s_a <= length_b])
    points_a = sample_at(doc_a, s_a)[:, :2]
    points_b = sample_at(doc_b, s_b)[:, :2]

    distances, _ = cKDTree(points_b).query(points_a, workers=workers)
    avg = float(distances.mean())
    rmse = float(np.sqrt(np.mean(distances**2)))
    return MapDistanceReport(
        rmse=rmse,
        avg_distance=avg,
        sigma=float(distances.std()),
        sample_count=len(distances),
        eval_length=doc_a.length,
        max_distance=float(distances.max()),
    )


def continuity_report(doc: OdrDocument, cfg: Optional[ExportConfig] = None) -> ContinuityReport:
    """Leap and kink at every joint between consecutive geometries."""
    cfg = cfg or ExportConfig()
    entries = []
    for k, (current, following) in enumerate(zip(doc.plan_view[:-1], doc.plan_view[1:])):
        x, y, hdg = end_pose(current)
        gap = math.hypot(following.x - x, following.y - y)
        kink = abs(float(wrap_angle(heading_at(following, 0.0) - hdg)))
        entries.append(ContinuityEntry(index=k, gap=gap, kink_deg=math.degrees(kink)))
    max_gap = max((e.gap for e in entries), default=0.0)
    max_kink = max((e.kink_deg for e in entries), default=0.0)
    return ContinuityReport(
        entries=entries,
        max_gap=max_gap,
        max_kink_deg=max_kink,
        passed=max_gap <= cfg.max_gap and max_kink <= cfg.max_kink_deg,
    )


def lane_width_stats(model: RoadModel, pairs: Optional[Sequence[int]] = None) -> LaneWidthStats:
    """
    Mean and population sigma of adjacent-line distance samples.

    Args:
        model: Road model carrying width samples per adjacent line pair
        pairs: Indices of the pairs to use, counted from the leftmost; all by default

    Raises:
        EvaluationError: No width samples (single-line road) or bad pair index
    """
    groups = model.width_samples
    if pairs is not None:
        bad = [p for p in pairs if not 0 <= p < len(groups)]
        if bad:
            raise EvaluationError(f"lane pair indices {bad} outside 0..{len(groups) - 1}")
        groups = [groups[p] for p in pairs]
    samples = np.concatenate([np.asarray(g, dtype=np.float64) for g in groups] + [np.zeros(0)])
    if samples.size == 0:
        raise EvaluationError("road model has no lane width samples")
    return LaneWidthStats(
        mean=float(samples.mean()), sigma=float(samples.std()), count=int(samples.size)
    )
