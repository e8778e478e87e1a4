"""Core LidarOdr class implementation."""

from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from ..evaluation import lane_width_stats, map_distance
from ..handlers import BuildStage, ExportStage, ExtractStage
from ..ingest import read_recordings
from ..types import (
    BuildResult,
    ExportResult,
    Frame,
    MapDistanceReport,
    MarkingCloud,
    OdrDocument,
    PipelineConfig,
    PipelineReport,
    RoadModel,
)
from ..utils.logger import OdrLogger, get_logger
from .config import validate_model
from .errors import EvaluationError


class LidarOdr:
    """
    Main pipeline class: recording in, OpenDRIVE road out.

    Each stage can run on its own from the previous stage's artifact, or
    all of them in sequence through `run`.
    """

    def __init__(
        self,
        config: Optional[Union[PipelineConfig, Dict[str, Any]]] = None,
        verbose: int = 0,
        seed: Optional[int] = None,
        threads: Optional[int] = None,
        logger: Optional[OdrLogger] = None,
    ):
        """
        Initialize the pipeline with a validated configuration.

        Args:
            config: Configuration model or mapping; defaults when omitted
            verbose: Logging verbosity (0-3)
            seed: Global seed overriding the configured one
            threads: Worker cap overriding the configured one

        Raises:
            ConfigurationError: Unknown keys or values out of range
        """
        if isinstance(config, PipelineConfig):
            config = config.model_dump()
        cfg = validate_model(PipelineConfig, config or {})
        if seed is not None:
            cfg = cfg.with_seed(seed)
        if threads is not None:
            cfg = validate_model(PipelineConfig, {**cfg.model_dump(), "threads": threads})
        self.config = cfg
        self.logger = logger or get_logger(verbose)

        self.extract_stage = ExtractStage(self.logger, cfg)
        self.build_stage = BuildStage(self.logger, cfg)
        self.export_stage = ExportStage(self.logger, cfg)
        self.logger.info(
            "pipeline:init",
            "LidarOdr initialized",
            seed=cfg.seed,
            threads=cfg.threads,
        )

    def read(self, recordings: Sequence[Union[str, Path]]) -> Sequence[Frame]:
        frames = read_recordings(recordings, self.config.threads)
        self.logger.info(
            "ingest", "read recordings", recordings=len(recordings), frames=len(frames)
        )
        return frames

    def extract(self, frames: Sequence[Frame]) -> MarkingCloud:
        return self.extract_stage.handle(frames)

    def build(self, markings: MarkingCloud) -> BuildResult:
        return self.build_stage.handle(markings)

    def export(self, model: RoadModel) -> ExportResult:
        return self.export_stage.handle(model)

    def evaluate(
        self, doc_a: OdrDocument, doc_b: OdrDocument, step: Optional[float] = None
    ) -> MapDistanceReport:
        cfg = self.config.evaluation
        report = map_distance(
            doc_a,
            doc_b,
            step if step is not None else cfg.step,
            cfg.oversample,
            workers=self.config.threads or 1,
        )
        self.logger.info(
            "evaluation",
            "map distance",
            rmse=round(report.rmse, 4),
            avg=round(report.avg_distance, 4),
            sigma=round(report.sigma, 4),
            samples=report.sample_count,
        )
        return report

    def report(
        self,
        markings: MarkingCloud,
        built: BuildResult,
        exported: ExportResult,
        truth: Optional[OdrDocument] = None,
    ) -> PipelineReport:
        """Self-validation summary, compared against a reference road when given."""
        try:
            widths = lane_width_stats(built.model)
        except EvaluationError:
            widths = None
        document = exported.document
        return PipelineReport(
            lane_count=built.model.lane_count,
            lane_widths=built.model.lane_widths,
            geometry_count=len(document.plan_view),
            road_length=document.length,
            continuity=exported.continuity,
            lane_width=widths,
            map_distance=self.evaluate(document, truth) if truth is not None else None,
            stage_counts={
                "frames": markings.frame_count,
                "marking_points": len(markings.cloud),
                "clusters": len(built.clusters),
                "candidates": len(built.lines),
                "superlines": len(built.superlines),
                "geometries": len(document.plan_view),
            },
        )

    def run(
        self, frames: Sequence[Frame], truth: Optional[OdrDocument] = None
    ) -> Tuple[BuildResult, ExportResult, PipelineReport]:
        """Extract, build and export, then validate the result."""
        with self.logger.timed("pipeline", "extract finished"):
            markings = self.extract(frames)
        with self.logger.timed("pipeline", "build finished"):
            built = self.build(markings)
        with self.logger.timed("pipeline", "export finished"):
            exported = self.export(built.model)
        return built, exported, self.report(markings, built, exported, truth)
