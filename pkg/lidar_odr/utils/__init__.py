"""Utility modules for lidar-odr."""

from .geometry import (
    cumulative_chord,
    greedy_chain_order,
    left_normal,
    point_segment_distance,
    points_to_polyline_distance,
    principal_direction,
    rotate_2d,
    rotation_z,
    wrap_angle,
)
from .logger import LogLevel, LogLine, OdrLogger, configure_logging, get_logger, null_logger

__all__ = [
    "cumulative_chord",
    "greedy_chain_order",
    "left_normal",
    "point_segment_distance",
    "points_to_polyline_distance",
    "principal_direction",
    "rotate_2d",
    "rotation_z",
    "wrap_angle",
    "LogLevel",
    "LogLine",
    "OdrLogger",
    "configure_logging",
    "get_logger",
    "null_logger",
]
