"""Candidate combination across occlusions."""

import math
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from ..types import CandidateLine, SearchConfig
from ..utils.geometry import points_to_polyline_distance, wrap_angle
from .search import dist_sort

# Window used to estimate the end curvature of a line.
_CURVATURE_SPAN = (20.0, 60.0)


class EndState(NamedTuple):
    """Where a line ends and how it continues."""
    point: np.ndarray
    heading: float
    curvature: float
    slope: float


def _oriented(direction: np.ndarray, along: Optional[np.ndarray]) -> np.ndarray:
    if along is not None and float(direction @ along) < 0:
        return -direction
    return direction


def end_state(line: CandidateLine, curvature_aware: bool = True) -> EndState:
    """
    Estimate the line's end heading, curvature and grade.

    The heading comes from the last cluster direction, oriented along the
    chain. When curvature_aware is set and the last centers span at least
    20 m, a circle through three of them replaces it with the arc tangent at
    the end point.
    """
    centers = line.centers
    end = centers[-1]
    along = end - centers[-2] if len(centers) >= 2 else None
    direction = _oriented(line.directions[-1], along)
    horizontal = math.hypot(direction[0], direction[1])
    heading = math.atan2(direction[1], direction[0])
    slope = float(direction[2] / horizontal) if horizontal > 1e-9 else 0.0
    curvature = 0.0

    if curvature_aware and len(centers) >= 3:
        back = np.linalg.norm(centers[:, :2] - end[:2], axis=1)
        beyond = np.flatnonzero(back > _CURVATURE_SPAN[1])
        window = np.arange(beyond.max() + 1 if beyond.size else 0, len(centers))
        if len(window) >= 3 and back[window[0]] >= _CURVATURE_SPAN[0]:
            a = centers[window[0], :2]
            b = centers[window[len(window) // 2], :2]
            c = end[:2]
            ab, bc, ac = b - a, c - b, c - a
            denom = np.linalg.norm(ab) * np.linalg.norm(bc) * np.linalg.norm(ac)
            if denom > 1e-9:
                curvature = float(2.0 * (ab[0] * bc[1] - ab[1] * bc[0]) / denom)
                chord = math.atan2(bc[1], bc[0])
                heading = float(wrap_angle(chord + curvature * np.linalg.norm(bc) / 2.0))
    return EndState(end, heading, curvature, slope)


def sweep_points(state: EndState, distances: np.ndarray) -> np.ndarray:
    """Points reached by following the end state's arc for each distance."""
    h, k = state.heading, state.curvature
    if abs(k) < 1e-9:
        dx = distances * math.cos(h)
        dy = distances * math.sin(h)
    else:
        dx = (np.sin(h + k * distances) - math.sin(h)) / k
        dy = (math.cos(h) - np.cos(h + k * distances)) / k
    dz = state.slope * distances
    return state.point + np.column_stack([dx, dy, dz])


def _start_heading(line: CandidateLine) -> float:
    direction = line.directions[0]
    if len(line) >= 2:
        direction = _oriented(direction, line.centers[1] - line.centers[0])
    return math.atan2(direction[1], direction[0])


def _merge(keeper: CandidateLine, other: CandidateLine) -> CandidateLine:
    merged = CandidateLine(
        id=keeper.id,
        cluster_ids=keeper.cluster_ids + other.cluster_ids,
        centers=np.vstack([keeper.centers, other.centers]),
        directions=np.vstack([keeper.directions, other.directions]),
        stabilized_direction=keeper.stabilized_direction,
    )
    merged = dist_sort(merged)
    last_owner = other if merged.cluster_ids[-1] in set(other.cluster_ids) else keeper
    return merged.model_copy(update={"stabilized_direction": last_owner.stabilized_direction})


def _attach_partner(line: CandidateLine, others: List[CandidateLine], tol: float) -> Optional[int]:
    """First other line touching this one by endpoint-to-segment distance."""
    for j, other in enumerate(others):
        ends = np.vstack([other.start, other.end])
        if points_to_polyline_distance(ends, line.centers).min() <= tol:
            return j
        ends = np.vstack([line.start, line.end])
        if points_to_polyline_distance(ends, other.centers).min() <= tol:
            return j
    return None


def _sweep_partner(
    line: CandidateLine, others: List[CandidateLine], cfg: SearchConfig
) -> Optional[int]:
    """Other line whose start is met first when sweeping on from this line's end."""
    if not others:
        return None
    count = int(math.floor(cfg.combine_length / cfg.step + 1e-9))
    distances = cfg.step * np.arange(1, count + 1)
    state = end_state(line, cfg.curvature_aware)
    probes = sweep_points(state, distances)
    starts = np.array([o.start for o in others])
    start_headings = np.array([_start_heading(o) for o in others])
    single = np.array([len(o) == 1 for o in others])
    max_angle = math.radians(cfg.max_combine_angle_deg)

    dist = np.linalg.norm(probes[:, None, :] - starts[None, :, :], axis=2)
    expected = state.heading + state.curvature * distances
    diff = np.abs(wrap_angle(start_headings[None, :] - expected[:, None]))
    diff = np.where(single[None, :], np.minimum(diff, math.pi - diff), diff)
    ok = (dist <= cfg.ball_radius) & (diff <= max_angle)
    for row in range(len(distances)):
        candidates = np.flatnonzero(ok[row])
        if candidates.size:
            return int(min(candidates, key=lambda j: (dist[row, j], others[j].id)))
    return None


def _processing_order(lines: Sequence[CandidateLine]) -> List[CandidateLine]:
    return sorted(lines, key=lambda l: (float(np.linalg.norm(l.start)), l.id))


def combine_candidates(lines: Sequence[CandidateLine], cfg: SearchConfig) -> List[CandidateLine]:
    """
    Merge candidate lines until no further combination is found.

    Two rules merge lines: an endpoint lying within seg_attach_tol of the
    other line's segments, and a sweep of up to combine_length from a line's
    end (following its end arc when curvature_aware) whose probe meets
    another line's start within ball_radius with a consistent heading. The
    merged line keeps the id of the line that found the partner and is
    dist-sorted again. Lines are visited by distance of their start from the
    origin, so the result does not depend on input order.
    """
    pool = _processing_order([dist_sort(l) for l in lines])
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(pool):
            line = pool[i]
            others = pool[:i] + pool[i + 1:]
            j = _attach_partner(line, others, cfg.seg_attach_tol)
            if j is None:
                j = _sweep_partner(line, others, cfg)
            if j is None:
                i += 1
                continue
            partner = others[j]
            merged = _merge(line, partner)
            pool = _processing_order(
                [merged] + [l for l in pool if l.id not in (line.id, partner.id)]
            )
            changed = True
            i = next(k for k, l in enumerate(pool) if l.id == merged.id)
    return pool

