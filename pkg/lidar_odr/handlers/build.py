"""BuildStage: marking cloud to road model."""

import numpy as np

from ..clustering import build_clusters
from ..core.errors import StructuralError
from ..lane_builder import build_candidates
from ..topology import build_road_model, resolve_topology
from ..types import BuildResult, MarkingCloud
from .base import BaseStage


class BuildStage(BaseStage[BuildResult]):
    """
    Clustering, candidate line building and topology resolution.

    Raises StructuralError when the cloud yields no cluster at all; topology
    failures surface as TopologyError with the offending line ids.
    """

    def handle(self, markings: MarkingCloud) -> BuildResult:
        cfg = self.config
        self._log_info("Starting build", points=len(markings.cloud))

        clusters = build_clusters(markings.cloud, cfg.clustering, self.workers, self.logger)
        if not clusters:
            raise StructuralError("marking cloud contains no clusters", points=len(markings.cloud))
        lines = build_candidates(clusters, cfg.search, self.logger)
        superlines, lookups = resolve_topology(lines, cfg.topology, self.logger)
        model = build_road_model(
            superlines,
            lookups,
            cfg.topology,
            origin=markings.origin,
            planes=markings.planes,
            logger=self.logger,
        )

        self._log_info(
            "Build completed",
            clusters=len(clusters),
            candidates=len(lines),
            superlines=len(superlines),
            lanes=model.lane_count,
            reference_points=len(model.reference_polyline),
            mean_width=round(float(np.mean(model.lane_widths)), 3),
        )
        return BuildResult(
            model=model,
            clusters=clusters,
            lines=lines,
            superlines=superlines,
            lookups=lookups,
        )
