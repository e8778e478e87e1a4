"""Map comparison metric and acceptance statistics."""

from .metrics import continuity_report, lane_width_stats, map_distance
from .report import format_pipeline_report, format_report_table, report_to_json

__all__ = [
    "continuity_report",
    "lane_width_stats",
    "map_distance",
    "format_pipeline_report",
    "format_report_table",
    "report_to_json",
]
