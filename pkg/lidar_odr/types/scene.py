"""Synthetic scene specification and ground-truth types."""

from typing import Dict, List, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .cloud import Vec3
from .odr import OdrDocument

MIN_HIGHWAY_RADIUS = 200.0


class CenterlinePrimitive(BaseModel):
    """Straight (length) or arc (radius, signed angle; positive turns left)."""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["straight", "arc"]
    length: float = Field(0.0, ge=0)
    radius: float = Field(0.0, ge=0)
    angle: float = 0.0

    @model_validator(mode="after")
    def _check_shape(self) -> "CenterlinePrimitive":
        if self.kind == "straight" and self.length <= 0:
            raise ValueError("straight primitives need a positive length")
        if self.kind == "arc":
            if self.radius < MIN_HIGHWAY_RADIUS:
                raise ValueError(f"arc radius must be >= {MIN_HIGHWAY_RADIUS} m")
            if self.angle == 0:
                raise ValueError("arc primitives need a non-zero angle")
        return self

    @property
    def arc_length(self) -> float:
        if self.kind == "straight":
            return self.length
        return self.radius * abs(self.angle)

    @property
    def curvature(self) -> float:
        if self.kind == "straight":
            return 0.0
        return (1.0 if self.angle > 0 else -1.0) / self.radius


class GradeSegment(BaseModel):
    """Constant longitudinal grade from start_s until the next segment."""
    model_config = ConfigDict(extra="forbid")

    start_s: float = Field(ge=0)
    grade: float


class SceneSpec(BaseModel):
    """Everything needed to synthesize one highway recording deterministically."""
    model_config = ConfigDict(extra="forbid")

    centerline: List[CenterlinePrimitive]
    lane_count: int = Field(3, ge=1)
    lane_width: float = Field(3.5, gt=0)
    dash_length: float = Field(6.0, gt=0)
    dash_gap: float = Field(12.0, gt=0)
    dashed_width: float = Field(0.15, ge=0)
    solid_width: float = Field(0.30, ge=0)
    marking_rows: int = Field(3, ge=1)
    point_spacing: float = Field(0.2, gt=0, le=0.2)
    noise_sigma: float = Field(0.0, ge=0)
    dropout_fraction: float = Field(0.0, ge=0, lt=1)
    line_dropout: Dict[int, float] = Field(default_factory=dict)
    clutter_density: float = Field(0.0, ge=0)
    clutter_margin: float = Field(3.0, ge=0)
    high_reflectivity_fraction: float = Field(0.1, ge=0, le=1)
    elevated_fraction: float = Field(0.1, ge=0, le=1)
    elevation_profile: List[GradeSegment] = Field(default_factory=list)
    bank_angle: float = 0.0
    frame_spacing: float = Field(20.0, gt=0)
    speed: float = Field(25.0, gt=0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_profile(self) -> "SceneSpec":
        if not self.centerline:
            raise ValueError("scene needs at least one centerline primitive")
        starts = [g.start_s for g in self.elevation_profile]
        if starts != sorted(starts):
            raise ValueError("elevation profile segments must be ordered by start_s")
        for line, fraction in self.line_dropout.items():
            if not 0 <= line <= self.lane_count:
                raise ValueError(f"line_dropout index {line} outside 0..{self.lane_count}")
            if not 0.0 <= fraction <= 1.0:
                raise ValueError("line_dropout fractions must lie in [0, 1]")
        return self

    @property
    def dash_cycle(self) -> float:
        return self.dash_length + self.dash_gap

    @property
    def total_length(self) -> float:
        return float(sum(p.arc_length for p in self.centerline))

    @classmethod
    def highway_default(cls, **overrides: object) -> "SceneSpec":
        """5 km three-lane highway with alternating arcs, heading within +-20 degrees."""
        primitives = [
            CenterlinePrimitive(kind="straight", length=600.0),
            CenterlinePrimitive(kind="arc", radius=800.0, angle=0.3),
            CenterlinePrimitive(kind="straight", length=700.0),
            CenterlinePrimitive(kind="arc", radius=600.0, angle=-0.5),
            CenterlinePrimitive(kind="straight", length=500.0),
            CenterlinePrimitive(kind="arc", radius=500.0, angle=0.4),
            CenterlinePrimitive(kind="straight", length=800.0),
            CenterlinePrimitive(kind="arc", radius=1000.0, angle=-0.2),
            CenterlinePrimitive(kind="straight", length=1460.0),
        ]
        params: Dict[str, object] = {
            "centerline": primitives,
            "lane_count": 3,
            "noise_sigma": 0.03,
            "dropout_fraction": 0.1,
            "clutter_density": 0.05,
            "elevation_profile": [
                GradeSegment(start_s=0.0, grade=0.0),
                GradeSegment(start_s=1000.0, grade=0.01),
                GradeSegment(start_s=2500.0, grade=-0.01),
                GradeSegment(start_s=3500.0, grade=0.0),
            ],
        }
        params.update(overrides)
        return cls.model_validate(params)


class GroundTruth(BaseModel):
    """Analytic truth for a synthesized scene."""
    centerline: List[Vec3]
    marking_lines: List[List[Vec3]]
    line_offsets: List[float]
    lane_count: int
    lane_widths: List[float]
    document: OdrDocument
