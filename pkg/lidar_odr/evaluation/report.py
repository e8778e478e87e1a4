"""Plain-text and JSON renderings of evaluation results."""

from typing import List, Tuple, Union

from ..types import MapDistanceReport, PipelineReport


def _table(rows: List[Tuple[str, str]]) -> str:
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows) + "\n"


def format_report_table(report: MapDistanceReport) -> str:
    """Aligned two-column table of a map comparison."""
    return _table(
        [
            ("RMSE", f"{report.rmse:.3f} m"),
            ("avg. distance", f"{report.avg_distance:.3f} m"),
            ("std. deviation σ", f"{report.sigma:.3f} m"),
            ("max. distance", f"{report.max_distance:.3f} m"),
            ("eval. length", f"{report.eval_length / 1000.0:.3f} km"),
            ("samples", str(report.sample_count)),
        ]
    )


def format_pipeline_report(report: PipelineReport) -> str:
    """Summary table of one pipeline run, followed by the map comparison when present."""
    rows = [
        ("lanes", str(report.lane_count)),
        ("lane widths", ", ".join(f"{w:.3f}" for w in report.lane_widths) + " m"),
        ("geometries", str(report.geometry_count)),
        ("road length", f"{report.road_length:.3f} m"),
        ("max. gap", f"{report.continuity.max_gap:.6f} m"),
        ("max. kink", f"{report.continuity.max_kink_deg:.4f} deg"),
        ("continuity", "passed" if report.continuity.passed else "FAILED"),
    ]
    if report.lane_width is not None:
        rows.append(
            ("lane width", f"{report.lane_width.mean:.3f} m (σ {report.lane_width.sigma:.3f} m)")
        )
    rows.extend((stage, str(count)) for stage, count in report.stage_counts.items())
    text = _table(rows)
    if report.map_distance is not None:
        text += "\n" + format_report_table(report.map_distance)
    return text


def report_to_json(report: Union[MapDistanceReport, PipelineReport]) -> str:
    return report.model_dump_json(indent=2) + "\n"
