"""Road model to OpenDRIVE document."""

import math
from typing import List, Optional

import numpy as np

from ..core.errors import ValidationError
from ..types import (
    CubicRecord,
    ExportConfig,
    Geometry,
    Lane,
    LaneSection,
    OdrDocument,
    OdrHeader,
    RoadModel,
)
from ..utils.logger import OdrLogger, null_logger
from .fitting import curve_length, eval_rot, fit_param_poly3, split_by_dist
from .profiles import fit_elevation, fit_superelevation
from .sampling import end_pose


def validate_model(model: RoadModel) -> np.ndarray:
    """
    Check a road model before export and return its polyline.

    Raises:
        ValidationError: Too few reference points, non-finite coordinates or
            lane widths that do not match the lane count
    """
    polyline = model.polyline_array()
    if len(polyline) < 2:
        raise ValidationError("road model needs at least two reference points")
    if not np.isfinite(polyline).all():
        raise ValidationError("reference polyline contains non-finite coordinates")
    if len(model.lane_widths) != model.lane_count:
        raise ValidationError(
            f"{len(model.lane_widths)} lane widths for {model.lane_count} lanes"
        )
    return polyline


def build_lane_section(model: RoadModel) -> LaneSection:
    """One section at s=0 with all driving lanes right of the center lane."""
    right = [
        Lane(id=-(k + 1), type="driving", width=CubicRecord(s=0.0, a=width))
        for k, width in enumerate(model.lane_widths)
    ]
    return LaneSection(s=0.0, right=right)


def export_road(
    model: RoadModel, cfg: ExportConfig, logger: Optional[OdrLogger] = None
) -> OdrDocument:
    """
    Fit the reference polyline and assemble a single-road document.

    Each segment's heading comes from its principal direction. Geometry k+1
    is placed at the evaluated end of geometry k, so consecutive geometries
    never leave a gap larger than the curve evaluation error. With
    constrain_start_heading the previous end heading is reused and bV is 0.

    Args:
        model: Validated road model
        cfg: Export configuration
        logger: Optional category logger

    Returns:
        Document with planView, elevation, superelevation and lanes
    """
    log = logger or null_logger()
    polyline = validate_model(model)
    segments = split_by_dist(polyline, cfg)

    plan_view: List[Geometry] = []
    elevation: List[CubicRecord] = []
    s = 0.0
    start = polyline[0, :2]
    previous_hdg: Optional[float] = None
    for segment in segments:
        constrained = cfg.constrain_start_heading and previous_hdg is not None
        hdg = previous_hdg if constrained else eval_rot(segment)
        curve = fit_param_poly3(segment, hdg, cfg, start=start, fix_start_heading=constrained)
        length = curve_length(curve)
        if not length > 0:
            raise ValidationError(f"segment {segment.index} fitted to a zero-length curve")
        geometry = Geometry(
            s=s, x=float(start[0]), y=float(start[1]), hdg=hdg, length=length, curve=curve
        )
        plan_view.append(geometry)
        elevation.append(fit_elevation(segment, s, length))
        x_end, y_end, hdg_end = end_pose(geometry)
        start = np.array([x_end, y_end])
        previous_hdg = hdg_end
        s += length

    superelevation = fit_superelevation(plan_view, model.plane_samples)
    doc = OdrDocument(
        header=OdrHeader(
            name=cfg.road_name, geo_reference=cfg.geo_reference, origin=model.origin
        ),
        road_name=cfg.road_name,
        plan_view=plan_view,
        elevation=elevation,
        superelevation=superelevation,
        lane_offset=[CubicRecord(s=0.0, a=model.lane_offset)],
        lane_sections=[build_lane_section(model)],
    )
    log.info(
        "odr",
        "exported road",
        geometries=len(plan_view),
        length=round(s, 3),
        lanes=model.lane_count,
        superelevation=bool(superelevation),
    )
    if superelevation:
        log.debug(
            "odr",
            "superelevation range",
            min_deg=round(math.degrees(min(r.a for r in superelevation)), 3),
            max_deg=round(math.degrees(max(r.a for r in superelevation)), 3),
        )
    return doc
