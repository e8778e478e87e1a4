"""Intermediate road-structure types: planes, clusters, lines and the road model."""

from enum import Enum
from typing import List, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .cloud import PlaneSample, PointCloud, Vec3


def _vector(v: object, length: int = 3) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64).reshape(-1)
    if arr.shape != (length,):
        raise ValueError(f"expected a {length}-vector")
    return arr


def _unit(v: object) -> np.ndarray:
    arr = _vector(v)
    if abs(np.linalg.norm(arr) - 1.0) > 1e-9:
        raise ValueError("direction must be unit length")
    return arr


class GroundPlane(BaseModel):
    """Plane normal . p = offset with an upward unit normal."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    normal: np.ndarray
    offset: float
    inlier_count: int = 0

    @field_validator("normal", mode="before")
    @classmethod
    def _upward_unit(cls, v: object) -> np.ndarray:
        arr = _unit(v)
        if arr[2] <= 0:
            raise ValueError("ground normal must point upwards")
        return arr

    def signed_distance(self, xyz: np.ndarray) -> np.ndarray:
        return xyz @ self.normal - self.offset


class Cluster(BaseModel):
    """One marking blob with its bounding-box center and unit direction."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    id: int
    points: PointCloud
    center: np.ndarray
    raw_direction: np.ndarray
    length: float = Field(ge=0)

    @field_validator("center", mode="before")
    @classmethod
    def _center(cls, v: object) -> np.ndarray:
        return _vector(v)

    @field_validator("raw_direction", mode="before")
    @classmethod
    def _direction(cls, v: object) -> np.ndarray:
        return _unit(v)


class CandidateLine(BaseModel):
    """Ordered chain of cluster centers hypothesized to be one marking line."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    id: int
    cluster_ids: List[int]
    centers: np.ndarray
    directions: np.ndarray
    stabilized_direction: np.ndarray

    @field_validator("centers", "directions", mode="before")
    @classmethod
    def _rows(cls, v: object) -> np.ndarray:
        arr = np.asarray(v, dtype=np.float64).reshape(-1, 3)
        if arr.shape[0] == 0:
            raise ValueError("a candidate line holds at least one cluster")
        return arr

    @field_validator("stabilized_direction", mode="before")
    @classmethod
    def _stabilized_unit(cls, v: object) -> np.ndarray:
        return _unit(v)

    @field_validator("cluster_ids")
    @classmethod
    def _unique_ids(cls, v: List[int]) -> List[int]:
        if len(set(v)) != len(v):
            raise ValueError("duplicate cluster ids in candidate line")
        return v

    @property
    def start(self) -> np.ndarray:
        return self.centers[0]

    @property
    def end(self) -> np.ndarray:
        return self.centers[-1]

    def __len__(self) -> int:
        return int(self.centers.shape[0])


class Side(str, Enum):
    """Side of a neighbor relative to the source line's direction."""
    LEFT = "left"
    RIGHT = "right"


class RelationEntry(BaseModel):
    """Aggregated relation from one source line to one neighbor line."""
    line_id: int
    side: Side
    distance: float = Field(gt=0)
    steps: int = Field(ge=0)
    support: int = Field(ge=1)
    residual: float = 0.0
    samples: List[float] = Field(default_factory=list)


class RelativeLookup(BaseModel):
    """All lateral relations seen from one source line."""
    source_id: int
    entries: List[RelationEntry] = Field(default_factory=list)


class Superline(BaseModel):
    """Candidate lines resolved to one global lateral offset."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    id: int
    member_line_ids: List[int]
    lane_offset: int
    merged_centers: np.ndarray


class RoadModel(BaseModel):
    """Reference polyline plus lane structure; the build stage's artifact."""
    format: Literal["lidar-odr/road-model"] = "lidar-odr/road-model"
    version: int = 1
    reference_polyline: List[Vec3]
    lane_count: int = Field(ge=1)
    lane_widths: List[float]
    width_sigma: float = Field(0.0, ge=0)
    width_samples: List[List[float]] = Field(default_factory=list)
    lane_offset: float = 0.0
    superline_count: int = 1
    origin: Vec3 = (0.0, 0.0, 0.0)
    plane_samples: List[PlaneSample] = Field(default_factory=list)

    @field_validator("lane_widths")
    @classmethod
    def _positive_widths(cls, v: List[float]) -> List[float]:
        if any(w <= 0 for w in v):
            raise ValueError("lane widths must be positive")
        return v

    def polyline_array(self) -> np.ndarray:
        return np.asarray(self.reference_polyline, dtype=np.float64).reshape(-1, 3)
