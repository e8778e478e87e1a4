"""
lidar-odr - OpenDRIVE roads from odometry-free LiDAR lane markings.

Lane markings are extracted from accumulated LiDAR frames, chained into
marking lines, resolved into a lane layout and exported as an OpenDRIVE
road with paramPoly3 reference-line geometry.
"""

__version__ = "0.1.0"

from .core import (
    ConfigurationError,
    DataError,
    EvaluationError,
    ExportError,
    LidarOdr,
    LidarOdrError,
    TopologyError,
)
from .types import (
    MapDistanceReport,
    OdrDocument,
    PipelineConfig,
    PipelineReport,
    RoadModel,
    SceneSpec,
)

__all__ = [
    # Version
    "__version__",
    # Main class
    "LidarOdr",
    # Common types
    "MapDistanceReport",
    "OdrDocument",
    "PipelineConfig",
    "PipelineReport",
    "RoadModel",
    "SceneSpec",
    # Errors
    "ConfigurationError",
    "DataError",
    "EvaluationError",
    "ExportError",
    "LidarOdrError",
    "TopologyError",
]
