"""Core lidar-odr components."""

from .errors import (
    ConfigurationError,
    DataError,
    EstimationError,
    EvaluationError,
    ExportError,
    LidarOdrError,
    OdrParseError,
    ParseError,
    StructuralError,
    TopologyError,
    UnsupportedFeatureError,
    ValidationError,
)
from .config import env_defaults, load_config, read_mapping, validate_model
from .artifacts import (
    read_marking_cloud,
    read_road_model,
    write_marking_cloud,
    write_road_model,
)
from .pipeline import LidarOdr

__all__ = [
    # Main class
    "LidarOdr",
    # Configuration and artifacts
    "env_defaults",
    "load_config",
    "read_mapping",
    "validate_model",
    "read_marking_cloud",
    "read_road_model",
    "write_marking_cloud",
    "write_road_model",
    # Errors
    "ConfigurationError",
    "DataError",
    "EstimationError",
    "EvaluationError",
    "ExportError",
    "LidarOdrError",
    "OdrParseError",
    "ParseError",
    "StructuralError",
    "TopologyError",
    "UnsupportedFeatureError",
    "ValidationError",
]
