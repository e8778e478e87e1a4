"""Elevation and superelevation records along the fitted reference line."""

import math
from typing import List, Sequence

import numpy as np
from scipy.spatial import cKDTree

from ..types import CubicRecord, Geometry, PlaneSample, Segment
from ..utils.geometry import cumulative_chord
from .sampling import evaluate_geometry

# Station spacing used to locate plane samples on the reference line.
_LOCATE_STEP = 0.5


def _cubic(ds: np.ndarray, values: np.ndarray, s: float) -> CubicRecord:
    """Unweighted least-squares polynomial of degree <= 3, lowered for few samples."""
    if len(values) == 0:
        return CubicRecord(s=s)
    distinct = len(np.unique(np.round(ds, 9)))
    degree = min(3, distinct - 1)
    if degree < 1:
        return CubicRecord(s=s, a=float(np.mean(values)))
    coef = np.polynomial.polynomial.polyfit(ds, values, degree)
    coef = np.pad(coef, (0, 4 - len(coef)))
    return CubicRecord(s=s, a=float(coef[0]), b=float(coef[1]), c=float(coef[2]), d=float(coef[3]))


def fit_elevation(segment: Segment, s_start: float, length: float) -> CubicRecord:
    """
    Cubic z(ds) over the segment's own points.

    The points are placed at ds = chord fraction * length, so the record
    spans the emitted geometry. Extensions and weights are not used.
    """
    own = segment.points
    chord = cumulative_chord(own[:, :2])
    total = float(chord[-1]) if len(chord) else 0.0
    ds = chord / total * length if total > 0 else np.zeros(len(own))
    return _cubic(ds, own[:, 2], s_start)


def plane_roll(normal: np.ndarray, heading: float) -> float:
    """
    Roll of a ground plane across the road, positive when the road falls to the right.
    """
    left = np.array([-math.sin(heading), math.cos(heading), 0.0])
    return math.atan2(-float(np.dot(normal, left)), float(normal[2]))


def fit_superelevation(
    geometries: Sequence[Geometry], planes: Sequence[PlaneSample]
) -> List[CubicRecord]:
    """
    Superelevation records from per-frame ground planes.

    Each plane sample is located on the reference line by its nearest densely
    sampled station; its roll is measured against the local road heading.
    One cubic per geometry is fitted to the rolls that fall on it; a geometry
    without samples takes the median roll of all samples.

    Args:
        geometries: Fitted planView
        planes: World-frame plane samples

    Returns:
        One record per geometry, or an empty list without plane data
    """
    if not planes or not geometries:
        return []

    stations, xy, heading = [], [], []
    for geometry in geometries:
        count = max(2, int(math.ceil(geometry.length / _LOCATE_STEP)) + 1)
        ds = np.linspace(0.0, geometry.length, count)
        points, hdg = evaluate_geometry(geometry, ds)
        stations.append(geometry.s + ds)
        xy.append(points)
        heading.append(np.broadcast_to(hdg, ds.shape))
    stations_arr = np.concatenate(stations)
    headings = np.concatenate(heading)
    tree = cKDTree(np.vstack(xy))

    positions = np.array([p.position[:2] for p in planes], dtype=np.float64)
    _, nearest = tree.query(positions)
    s_plane = stations_arr[nearest]
    rolls = np.array(
        [plane_roll(np.asarray(p.normal, dtype=np.float64), headings[k])
         for p, k in zip(planes, nearest)]
    )
    fallback = float(np.median(rolls))

    records = []
    for geometry in geometries:
        end = geometry.s + geometry.length
        mask = (s_plane >= geometry.s) & (s_plane <= end)
        if mask.any():
            records.append(_cubic(s_plane[mask] - geometry.s, rolls[mask], geometry.s))
        else:
            records.append(CubicRecord(s=geometry.s, a=fallback))
    return records
