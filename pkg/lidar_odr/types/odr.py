"""OpenDRIVE document type definitions."""

from typing import Annotated, List, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .cloud import Vec3


class ParamPoly3(BaseModel):
    """Parametric cubic u(p), v(p) in the geometry's local frame."""
    kind: Literal["paramPoly3"] = "paramPoly3"
    aU: float = 0.0
    bU: float = 0.0
    cU: float = 0.0
    dU: float = 0.0
    aV: float = 0.0
    bV: float = 0.0
    cV: float = 0.0
    dV: float = 0.0
    p_range: Literal["normalized", "arcLength"] = "normalized"


class LineCurve(BaseModel):
    """Straight reference-line element."""
    kind: Literal["line"] = "line"


class ArcCurve(BaseModel):
    """Constant-curvature element; positive curvature turns left."""
    kind: Literal["arc"] = "arc"
    curvature: float


Curve = Annotated[Union[ParamPoly3, LineCurve, ArcCurve], Field(discriminator="kind")]


class Geometry(BaseModel):
    """One planView record placed at (x, y, hdg) with start arclength s."""
    s: float = Field(ge=0)
    x: float
    y: float
    hdg: float
    length: float = Field(gt=0)
    curve: Curve


class CubicRecord(BaseModel):
    """a + b*ds + c*ds^2 + d*ds^3 starting at s (elevation, superelevation, offsets)."""
    s: float = Field(ge=0)
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def value(self, ds: float) -> float:
        return self.a + ds * (self.b + ds * (self.c + ds * self.d))


class Lane(BaseModel):
    """Driving lane with one constant-or-cubic width record."""
    id: int
    type: str = "driving"
    width: CubicRecord


class LaneSection(BaseModel):
    """Lane layout starting at s; the center lane 0 is implicit."""
    s: float = 0.0
    left: List[Lane] = Field(default_factory=list)
    right: List[Lane] = Field(default_factory=list)


class OdrHeader(BaseModel):
    """Header data written before the road."""
    name: str = "lidar-odr"
    rev_major: int = 1
    rev_minor: int = 6
    version: str = "1.00"
    geo_reference: str = ""
    origin: Vec3 = (0.0, 0.0, 0.0)


class OdrDocument(BaseModel):
    """Single-road OpenDRIVE document."""
    header: OdrHeader = Field(default_factory=OdrHeader)
    road_id: str = "1"
    road_name: str = ""
    plan_view: List[Geometry] = Field(default_factory=list)
    elevation: List[CubicRecord] = Field(default_factory=list)
    superelevation: List[CubicRecord] = Field(default_factory=list)
    lane_offset: List[CubicRecord] = Field(default_factory=list)
    lane_sections: List[LaneSection] = Field(default_factory=list)

    @property
    def length(self) -> float:
        return float(sum(g.length for g in self.plan_view))


class Segment(BaseModel):
    """
    Piece of the reference polyline fitted as one geometry.

    `points` are the segment's own vertices; `before` and `after` are the
    look-back and look-ahead vertices borrowed from its neighbors.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    index: int
    points: np.ndarray
    before: np.ndarray
    after: np.ndarray
    chord_start: float = 0.0
    chord_end: float = 0.0

    @property
    def chord_length(self) -> float:
        return self.chord_end - self.chord_start
