"""Synthetic highway scenes with ground truth."""

from .centerline import Centerline, ElevationProfile
from .scene import (
    generate_scene,
    line_offsets,
    perturb_recording,
    truth_document,
    write_scene,
)

__all__ = [
    "Centerline",
    "ElevationProfile",
    "generate_scene",
    "line_offsets",
    "perturb_recording",
    "truth_document",
    "write_scene",
]
