"""ExportStage: road model to OpenDRIVE document with a continuity check."""

from ..core.errors import ValidationError
from ..evaluation import continuity_report
from ..odr import export_road
from ..types import ExportResult, RoadModel
from .base import BaseStage


class ExportStage(BaseStage[ExportResult]):
    """Fit and assemble the document, then check every geometry joint."""

    def handle(self, model: RoadModel) -> ExportResult:
        cfg = self.config.export
        self._log_info("Starting export", reference_points=len(model.reference_polyline))

        document = export_road(model, cfg, self.logger)
        continuity = continuity_report(document, cfg)
        if not continuity.passed:
            self._log_warning(
                "Continuity tolerances exceeded",
                max_gap=continuity.max_gap,
                max_kink_deg=continuity.max_kink_deg,
                tolerance_gap=cfg.max_gap,
                tolerance_kink_deg=cfg.max_kink_deg,
            )
            if cfg.strict_continuity:
                raise ValidationError(
                    f"continuity check failed: gap {continuity.max_gap:.4f} m, "
                    f"kink {continuity.max_kink_deg:.3f} deg"
                )

        self._log_info(
            "Export completed",
            geometries=len(document.plan_view),
            length=round(document.length, 3),
            max_gap=continuity.max_gap,
            max_kink_deg=continuity.max_kink_deg,
        )
        return ExportResult(document=document, continuity=continuity)
