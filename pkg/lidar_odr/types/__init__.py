"""Type definitions for lidar-odr."""

from .cloud import (
    Frame,
    FrameTag,
    MarkingCloud,
    MarkPoint,
    PlaneSample,
    PointCloud,
    Pose,
    Vec3,
    normalize_yaw,
)
from .config import (
    NOMINAL_LANE_WIDTH,
    PLANE_RAISE,
    SLICE_POLICY,
    ClusterConfig,
    EvaluationConfig,
    ExportConfig,
    ExtractionConfig,
    PipelineConfig,
    SearchConfig,
    TopologyConfig,
)
from .odr import (
    ArcCurve,
    CubicRecord,
    Geometry,
    Lane,
    LaneSection,
    LineCurve,
    OdrDocument,
    OdrHeader,
    ParamPoly3,
    Segment,
)
from .reports import (
    ContinuityEntry,
    ContinuityReport,
    LaneWidthStats,
    MapDistanceReport,
    PipelineReport,
)
from .road import (
    CandidateLine,
    Cluster,
    GroundPlane,
    RelationEntry,
    RelativeLookup,
    RoadModel,
    Side,
    Superline,
)
from .scene import CenterlinePrimitive, GradeSegment, GroundTruth, SceneSpec
from .stages import BuildResult, ExportResult

__all__ = [
    # cloud.py
    "Frame",
    "FrameTag",
    "MarkingCloud",
    "MarkPoint",
    "PlaneSample",
    "PointCloud",
    "Pose",
    "Vec3",
    "normalize_yaw",
    # config.py
    "NOMINAL_LANE_WIDTH",
    "PLANE_RAISE",
    "SLICE_POLICY",
    "ClusterConfig",
    "EvaluationConfig",
    "ExportConfig",
    "ExtractionConfig",
    "PipelineConfig",
    "SearchConfig",
    "TopologyConfig",
    # odr.py
    "ArcCurve",
    "CubicRecord",
    "Geometry",
    "Lane",
    "LaneSection",
    "LineCurve",
    "OdrDocument",
    "OdrHeader",
    "ParamPoly3",
    "Segment",
    # reports.py
    "ContinuityEntry",
    "ContinuityReport",
    "LaneWidthStats",
    "MapDistanceReport",
    "PipelineReport",
    # road.py
    "CandidateLine",
    "Cluster",
    "GroundPlane",
    "RelationEntry",
    "RelativeLookup",
    "RoadModel",
    "Side",
    "Superline",
    # scene.py
    "CenterlinePrimitive",
    "GradeSegment",
    "GroundTruth",
    "SceneSpec",
    # stages.py
    "BuildResult",
    "ExportResult",
]
