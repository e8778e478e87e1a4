"""Custom exception hierarchy for lidar-odr."""

from typing import Any, Dict, Iterable, Optional


class LidarOdrError(Exception):
    """Base exception for all lidar-odr errors."""

    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ConfigurationError(LidarOdrError):
    """Raised when configuration is invalid."""

    exit_code = 2

    def __init__(self, reason: str):
        super().__init__(
            f"Invalid configuration: {reason}",
            {"reason": reason, "error_code": "CONFIGURATION_ERROR"},
        )


class DataError(LidarOdrError):
    """Base class for errors caused by input data."""

    exit_code = 3


class ParseError(DataError):
    """Raised when an input file cannot be parsed."""

    def __init__(self, path: str, line: Optional[int], reason: str):
        location = f"{path}:{line}" if line is not None else path
        super().__init__(
            f"Parse error at {location}: {reason}",
            {"path": path, "line": line, "reason": reason, "error_code": "PARSE_ERROR"},
        )


class StructuralError(DataError):
    """Raised when inputs are individually valid but inconsistent with each other."""

    def __init__(self, reason: str, **context: Any):
        super().__init__(
            f"Structural error: {reason}",
            {"reason": reason, **context, "error_code": "STRUCTURAL_ERROR"},
        )


class EstimationError(DataError):
    """Raised when a robust estimator has too little or degenerate data."""

    def __init__(self, estimator: str, reason: str):
        super().__init__(
            f"{estimator} failed: {reason}",
            {"estimator": estimator, "reason": reason, "error_code": "ESTIMATION_ERROR"},
        )


class TopologyError(LidarOdrError):
    """Raised when lane-marking relations cannot be resolved to one road."""

    exit_code = 4

    def __init__(self, reason: str, line_ids: Iterable[int] = ()):
        ids = sorted(int(i) for i in line_ids)
        message = f"Topology error: {reason}"
        if ids:
            message += f" (lines {', '.join(str(i) for i in ids)})"
        super().__init__(
            message,
            {"reason": reason, "line_ids": ids, "error_code": "TOPOLOGY_ERROR"},
        )
        self.line_ids = ids


class ExportError(LidarOdrError):
    """Raised when an OpenDRIVE document cannot be produced or read."""

    exit_code = 5

    def __init__(self, reason: str, path: Optional[str] = None):
        message = f"Export failed: {reason}"
        if path:
            message += f" ({path})"
        super().__init__(
            message,
            {"reason": reason, "path": path, "error_code": "EXPORT_ERROR"},
        )


class ValidationError(ExportError):
    """Raised when a document or road model violates its invariants."""

    def __init__(self, reason: str, path: Optional[str] = None):
        super().__init__(reason, path)
        self.details["error_code"] = "VALIDATION_ERROR"


class OdrParseError(ExportError):
    """Raised when an OpenDRIVE file is malformed."""

    def __init__(self, reason: str, path: Optional[str] = None):
        super().__init__(reason, path)
        self.details["error_code"] = "ODR_PARSE_ERROR"


class UnsupportedFeatureError(ExportError):
    """Raised when an OpenDRIVE feature outside the supported subset is found."""

    def __init__(self, feature: str, path: Optional[str] = None):
        super().__init__(f"unsupported OpenDRIVE feature '{feature}'", path)
        self.feature = feature
        self.details["feature"] = feature
        self.details["error_code"] = "UNSUPPORTED_FEATURE"


class EvaluationError(LidarOdrError):
    """Raised when a metric cannot be computed."""

    exit_code = 5

    def __init__(self, reason: str):
        super().__init__(
            f"Evaluation failed: {reason}",
            {"reason": reason, "error_code": "EVALUATION_ERROR"},
        )
