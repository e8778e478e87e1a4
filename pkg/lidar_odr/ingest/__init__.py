"""Recording ingest: file formats and coordinate-frame conventions."""

from .reader import (
    POSES_FILE,
    read_frame_cloud,
    read_poses,
    read_recording,
    read_recordings,
    write_recording,
)
from .transform import inverse_pose, merge_world, to_vehicle, to_world, world_origin

__all__ = [
    "POSES_FILE",
    "read_frame_cloud",
    "read_poses",
    "read_recording",
    "read_recordings",
    "write_recording",
    "inverse_pose",
    "merge_world",
    "to_vehicle",
    "to_world",
    "world_origin",
]
