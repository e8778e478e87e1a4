"""Road model: lane widths and the centered reference polyline."""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import TopologyError
from ..types import PlaneSample, RelativeLookup, RoadModel, Superline, TopologyConfig, Vec3
from ..utils.geometry import greedy_chain_order, left_normal
from ..utils.logger import OdrLogger, null_logger
from .resolve import check_contiguous


def chain_tangents(points: np.ndarray) -> np.ndarray:
    """Unit 2D tangents of an ordered chain by central differences."""
    xy = points[:, :2]
    if len(xy) < 2:
        return np.zeros((len(xy), 2))
    forward = np.empty_like(xy)
    forward[1:-1] = xy[2:] - xy[:-2]
    forward[0] = xy[1] - xy[0]
    forward[-1] = xy[-1] - xy[-2]
    norms = np.linalg.norm(forward, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return forward / norms


def adjacent_width_samples(
    superlines: Sequence[Superline], lookups: Dict[int, RelativeLookup]
) -> List[List[float]]:
    """Per adjacent superline pair, every one-step distance sample between their members."""
    offset_of = {i: s.lane_offset for s in superlines for i in s.member_line_ids}
    ordered = sorted(s.lane_offset for s in superlines)
    samples: Dict[Tuple[int, int], List[float]] = {
        (a, b): [] for a, b in zip(ordered[:-1], ordered[1:])
    }
    for source, lookup in lookups.items():
        if source not in offset_of:
            continue
        for entry in lookup.entries:
            if entry.line_id not in offset_of or entry.steps != 1:
                continue
            pair = tuple(sorted((offset_of[source], offset_of[entry.line_id])))
            if pair in samples:
                samples[pair].extend(entry.samples or [entry.distance])
    return [samples[pair] for pair in sorted(samples)]


def build_road_model(
    superlines: Sequence[Superline],
    lookups: Dict[int, RelativeLookup],
    cfg: TopologyConfig,
    origin: Vec3 = (0.0, 0.0, 0.0),
    planes: Optional[Sequence[PlaneSample]] = None,
    logger: Optional[OdrLogger] = None,
) -> RoadModel:
    """
    Lane structure and centered reference polyline from resolved superlines.

    Lane widths are the medians of the one-step neighbor distances of each
    adjacent superline pair. Every marking center is moved along its local
    right normal by (half road width - its cumulative width from the left
    line), keeping its Z, and the moved points are chained from the origin.

    Raises:
        TopologyError: Missing middle line, missing width evidence or a width
            outside the configured plausibility band
    """
    log = logger or null_logger()
    check_contiguous(superlines)
    ordered = sorted(superlines, key=lambda s: s.lane_offset)

    if len(ordered) == 1:
        log.warn("topology", "single marking line, building a one-lane road")
        widths = [cfg.default_lane_width]
        width_samples: List[List[float]] = []
        lane_offset = 0.0
        displacement = [0.0]
    else:
        width_samples = adjacent_width_samples(ordered, lookups)
        widths = []
        for k, samples in enumerate(width_samples):
            if not samples:
                raise TopologyError(
                    f"no width evidence between lane offsets {k} and {k + 1}",
                    line_ids=ordered[k].member_line_ids + ordered[k + 1].member_line_ids,
                )
            widths.append(float(np.median(samples)))
        low, high = cfg.width_band
        for k, w in enumerate(widths):
            if not low <= w <= high:
                raise TopologyError(
                    f"lane width {w:.3f} m between offsets {k} and {k + 1} "
                    f"outside [{low}, {high}]",
                    line_ids=ordered[k].member_line_ids + ordered[k + 1].member_line_ids,
                )
        cumulative = np.concatenate([[0.0], np.cumsum(widths)])
        lane_offset = float(cumulative[-1] / 2.0)
        displacement = [lane_offset - float(cumulative[s.lane_offset]) for s in ordered]

    moved = []
    for superline, shift in zip(ordered, displacement):
        centers = superline.merged_centers
        right = -left_normal(chain_tangents(centers)) if len(centers) else np.zeros((0, 2))
        if shift != 0.0 and len(centers) < 2:
            log.debug("topology", "skipping single-center superline", superline=superline.id)
            continue
        shifted = centers.copy()
        shifted[:, :2] += right * shift
        moved.append(shifted)

    if not moved:
        raise TopologyError("no superline has enough centers for a reference line")
    points = np.vstack(moved)
    points = points[greedy_chain_order(points)]
    all_samples = np.concatenate([np.asarray(s) for s in width_samples] + [np.zeros(0)])

    model = RoadModel(
        reference_polyline=[tuple(map(float, p)) for p in points],
        lane_count=max(len(ordered) - 1, 1),
        lane_widths=widths,
        width_sigma=float(all_samples.std()) if all_samples.size else 0.0,
        width_samples=width_samples,
        lane_offset=lane_offset,
        superline_count=len(ordered),
        origin=origin,
        plane_samples=list(planes or []),
    )
    log.info(
        "topology",
        "built road model",
        lane_count=model.lane_count,
        lane_widths=[round(w, 3) for w in widths],
        reference_points=len(points),
    )
    return model
