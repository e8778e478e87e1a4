"""ExtractStage: recording frames to the accumulated marking cloud."""

from typing import Sequence

from ..extraction import extract_markings
from ..types import Frame, MarkingCloud
from .base import BaseStage


class ExtractStage(BaseStage[MarkingCloud]):
    """Per-frame crop, ground plane and marking filter, then world accumulation."""

    def handle(self, frames: Sequence[Frame]) -> MarkingCloud:
        self._log_info("Starting extraction", frames=len(frames))
        markings = extract_markings(
            frames, self.config.extraction, workers=self.workers, logger=self.logger
        )
        if frames and not len(markings.cloud):
            self._log_warning("No marking points survived the filters")
        self._log_info(
            "Extraction completed",
            points=len(markings.cloud),
            planes=len(markings.planes),
        )
        return markings
