"""OpenDRIVE export: segmentation, paramPoly3 fitting, profiles and XML I/O."""

from .export import build_lane_section, export_road, validate_model
from .fitting import curve_length, eval_rot, fit_param_poly3, segment_parameters, split_by_dist
from .profiles import fit_elevation, fit_superelevation, plane_roll
from .reader import read_opendrive
from .sampling import (
    end_pose,
    evaluate_geometry,
    heading_at,
    poly3_length,
    sample_at,
    sample_reference_line,
    station_grid,
)
from .writer import check_document, to_xml, write_opendrive

__all__ = [
    "build_lane_section",
    "export_road",
    "validate_model",
    "curve_length",
    "eval_rot",
    "fit_param_poly3",
    "segment_parameters",
    "split_by_dist",
    "fit_elevation",
    "fit_superelevation",
    "plane_roll",
    "read_opendrive",
    "end_pose",
    "evaluate_geometry",
    "heading_at",
    "poly3_length",
    "sample_at",
    "sample_reference_line",
    "station_grid",
    "check_document",
    "to_xml",
    "write_opendrive",
]
