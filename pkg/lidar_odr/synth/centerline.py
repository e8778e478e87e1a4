"""Analytic centerline built from straight and arc primitives."""

import math
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..types import ArcCurve, CenterlinePrimitive, CubicRecord, Geometry, GradeSegment, LineCurve


class Centerline:
    """
    Chain of primitives starting at (0, 0) with heading 0.

    Each primitive starts at the end pose of its predecessor, so position
    and heading are continuous by construction.
    """

    def __init__(self, primitives: Sequence[CenterlinePrimitive]):
        self.primitives = list(primitives)
        self.starts: List[float] = []
        self.poses: List[Tuple[float, float, float]] = []
        s, x, y, hdg = 0.0, 0.0, 0.0, 0.0
        for primitive in self.primitives:
            self.starts.append(s)
            self.poses.append((x, y, hdg))
            length = primitive.arc_length
            end_xy, end_hdg = self._local(primitive, x, y, hdg, np.array([length]))
            x, y, hdg = float(end_xy[0, 0]), float(end_xy[0, 1]), float(end_hdg[0])
            s += length
        self.length = s

    @staticmethod
    def _local(
        primitive: CenterlinePrimitive, x: float, y: float, hdg: float, ds: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        k = primitive.curvature
        if k == 0.0:
            px = x + ds * math.cos(hdg)
            py = y + ds * math.sin(hdg)
            return np.column_stack([px, py]), np.full_like(ds, hdg)
        heading = hdg + k * ds
        px = x + (np.sin(heading) - math.sin(hdg)) / k
        py = y - (np.cos(heading) - math.cos(hdg)) / k
        return np.column_stack([px, py]), heading

    def evaluate(self, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """(N, 2) positions and (N,) headings at stations s, clipped to [0, length]."""
        s = np.clip(np.asarray(s, dtype=np.float64), 0.0, self.length)
        idx = np.clip(np.searchsorted(self.starts, s, side="right") - 1, 0, len(self.starts) - 1)
        xy = np.empty((len(s), 2))
        heading = np.empty(len(s))
        for i, primitive in enumerate(self.primitives):
            mask = idx == i
            if mask.any():
                x, y, hdg = self.poses[i]
                ds = s[mask] - self.starts[i]
                xy[mask], heading[mask] = self._local(primitive, x, y, hdg, ds)
        return xy, heading

    def offset(self, s: np.ndarray, t: np.ndarray) -> np.ndarray:
        """Positions at lateral offset t (positive to the left) of stations s."""
        xy, heading = self.evaluate(s)
        normal = np.column_stack([-np.sin(heading), np.cos(heading)])
        return xy + normal * np.asarray(t, dtype=np.float64).reshape(-1, 1)

    def geometries(self) -> List[Geometry]:
        """planView records: one line or arc per primitive."""
        records = []
        for primitive, s, (x, y, hdg) in zip(self.primitives, self.starts, self.poses):
            if primitive.kind == "straight":
                curve: Union[LineCurve, ArcCurve] = LineCurve()
            else:
                curve = ArcCurve(curvature=primitive.curvature)
            records.append(
                Geometry(s=s, x=x, y=y, hdg=hdg, length=primitive.arc_length, curve=curve)
            )
        return records


class ElevationProfile:
    """Piecewise constant grade integrated to a continuous height z(s), z(0) = 0."""

    def __init__(self, segments: Sequence[GradeSegment], length: float):
        pieces = [g for g in segments if g.start_s < length]
        if not pieces or pieces[0].start_s > 0.0:
            pieces = [GradeSegment(start_s=0.0, grade=0.0)] + pieces
        self.starts = np.array([g.start_s for g in pieces])
        self.grades = np.array([g.grade for g in pieces])
        widths = np.diff(np.append(self.starts, length))
        self.heights = np.concatenate([[0.0], np.cumsum(self.grades * widths)[:-1]])

    def __call__(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=np.float64)
        idx = np.clip(np.searchsorted(self.starts, s, side="right") - 1, 0, len(self.starts) - 1)
        return self.heights[idx] + self.grades[idx] * (s - self.starts[idx])

    def records(self) -> List[CubicRecord]:
        return [
            CubicRecord(s=float(s), a=float(z), b=float(g))
            for s, z, g in zip(self.starts, self.heights, self.grades)
        ]
