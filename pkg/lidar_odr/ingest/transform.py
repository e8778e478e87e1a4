"""Vehicle-to-world transforms and cloud accumulation."""

from typing import Optional, Sequence

import numpy as np

from ..core.errors import StructuralError
from ..types import Frame, FrameTag, PointCloud, Pose, normalize_yaw
from ..utils.geometry import rotation_z


def world_origin(frames: Sequence[Frame]) -> np.ndarray:
    """World origin convention: the first frame's pose translation."""
    if not frames:
        return np.zeros(3)
    return np.asarray(frames[0].pose.translation, dtype=np.float64)


def to_world(frame: Frame, origin: Optional[np.ndarray] = None) -> PointCloud:
    """
    Rigidly move a vehicle-frame cloud into the world frame.

    Points are rotated by the pose yaw, translated by the pose translation and
    shifted so that `origin` becomes (0, 0, 0).
    """
    if frame.cloud.frame is not FrameTag.VEHICLE:
        raise StructuralError("to_world expects a vehicle-frame cloud")
    shift = np.asarray(frame.pose.translation) - (0.0 if origin is None else np.asarray(origin))
    data = frame.cloud.data.copy()
    data[:, :3] = data[:, :3] @ rotation_z(frame.pose.yaw).T + shift
    return PointCloud.model_construct(data=data, frame=FrameTag.WORLD)


def to_vehicle(cloud: PointCloud, pose: Pose, origin: Optional[np.ndarray] = None) -> PointCloud:
    """Inverse of to_world for the same pose and origin."""
    if cloud.frame is not FrameTag.WORLD:
        raise StructuralError("to_vehicle expects a world-frame cloud")
    shift = np.asarray(pose.translation) - (0.0 if origin is None else np.asarray(origin))
    data = cloud.data.copy()
    data[:, :3] = (data[:, :3] - shift) @ rotation_z(pose.yaw)
    return PointCloud.model_construct(data=data, frame=FrameTag.VEHICLE)


def inverse_pose(pose: Pose) -> Pose:
    """Pose whose transform undoes `pose` (for a zero origin)."""
    rot_inv = rotation_z(-pose.yaw)
    translation = -(rot_inv @ np.asarray(pose.translation))
    return Pose(
        translation=(float(translation[0]), float(translation[1]), float(translation[2])),
        yaw=normalize_yaw(-pose.yaw),
    )


def merge_world(clouds: Sequence[PointCloud]) -> PointCloud:
    """
    Concatenate world-frame clouds in the given order.

    Raises:
        StructuralError: If any input is not tagged world
    """
    if not clouds:
        return PointCloud.empty(FrameTag.WORLD)
    for i, cloud in enumerate(clouds):
        if cloud.frame is not FrameTag.WORLD:
            raise StructuralError("merge_world received a non-world cloud", index=i)
    return PointCloud.model_construct(
        data=np.concatenate([c.data for c in clouds], axis=0), frame=FrameTag.WORLD
    )
