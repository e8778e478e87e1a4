"""Point cloud, pose and frame type definitions."""

import math
from enum import Enum
from typing import Iterable, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

Vec3 = Tuple[float, float, float]


class FrameTag(str, Enum):
    """Coordinate frame a cloud is expressed in."""
    VEHICLE = "vehicle"
    WORLD = "world"


class MarkPoint(BaseModel):
    """One LiDAR detection: position in meters plus normalized reflectivity."""
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    z: float
    reflectivity: float = Field(ge=0.0, le=1.0)

    @field_validator("x", "y", "z")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("coordinate must be finite")
        return v


def _as_cloud_array(data: object) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    if arr.size == 0:
        return np.zeros((0, 4), dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 4:
        raise ValueError(f"cloud data must have shape (N, 4), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("cloud contains non-finite values")
    refl = arr[:, 3]
    if np.any(refl < 0.0) or np.any(refl > 1.0):
        raise ValueError("reflectivity must lie in [0, 1]")
    return arr


class PointCloud(BaseModel):
    """
    Ordered point cloud stored as an (N, 4) array of x, y, z, reflectivity.

    The frame tag records which operation produced the cloud; stages check it
    before transforming or merging.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    data: np.ndarray
    frame: FrameTag

    @field_validator("data", mode="before")
    @classmethod
    def _validate_data(cls, v: object) -> np.ndarray:
        return _as_cloud_array(v)

    @classmethod
    def empty(cls, frame: FrameTag) -> "PointCloud":
        return cls(data=np.zeros((0, 4)), frame=frame)

    @classmethod
    def from_points(cls, points: Iterable[MarkPoint], frame: FrameTag) -> "PointCloud":
        rows = [(p.x, p.y, p.z, p.reflectivity) for p in points]
        return cls(data=np.array(rows, dtype=np.float64).reshape(-1, 4), frame=frame)

    def subset(self, mask: np.ndarray) -> "PointCloud":
        """Cloud restricted to a boolean mask or index array; values stay valid."""
        return PointCloud.model_construct(data=self.data[mask], frame=self.frame)

    @property
    def xyz(self) -> np.ndarray:
        return self.data[:, :3]

    @property
    def reflectivity(self) -> np.ndarray:
        return self.data[:, 3]

    @property
    def points(self) -> List[MarkPoint]:
        return [self.point(i) for i in range(len(self))]

    def point(self, index: int) -> MarkPoint:
        x, y, z, r = self.data[index]
        return MarkPoint(x=float(x), y=float(y), z=float(z), reflectivity=float(r))

    def __len__(self) -> int:
        return int(self.data.shape[0])


def normalize_yaw(yaw: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    wrapped = math.atan2(math.sin(yaw), math.cos(yaw))
    if wrapped <= -math.pi:
        wrapped = math.pi
    return wrapped


class Pose(BaseModel):
    """4-DoF vehicle pose: world translation plus yaw about world Z."""
    model_config = ConfigDict(frozen=True)

    translation: Vec3
    yaw: float = 0.0

    @field_validator("translation")
    @classmethod
    def _finite_translation(cls, v: Vec3) -> Vec3:
        if not all(math.isfinite(c) for c in v):
            raise ValueError("translation must be finite")
        return v

    @field_validator("yaw")
    @classmethod
    def _yaw_range(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("yaw must be finite")
        if not -math.pi < v <= math.pi:
            raise ValueError("yaw must lie in (-pi, pi]")
        return v


class Frame(BaseModel):
    """One sensor sweep in the vehicle frame with its pose."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    cloud: PointCloud
    pose: Pose
    timestamp: float

    @field_validator("cloud")
    @classmethod
    def _vehicle_frame(cls, v: PointCloud) -> PointCloud:
        if v.frame is not FrameTag.VEHICLE:
            raise ValueError("frame clouds must be tagged vehicle")
        return v


class PlaneSample(BaseModel):
    """World-frame ground plane observed by one frame, used for superelevation."""
    position: Vec3
    normal: Vec3


class MarkingCloud(BaseModel):
    """Accumulated world-frame marking cloud with its provenance."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    cloud: PointCloud
    planes: List[PlaneSample] = Field(default_factory=list)
    origin: Vec3 = (0.0, 0.0, 0.0)
    frame_count: int = 0
