"""Per-frame extraction chain and accumulation into one marking cloud."""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import EstimationError
from ..ingest.transform import merge_world, to_world, world_origin
from ..types import (
    ExtractionConfig,
    Frame,
    FrameTag,
    MarkingCloud,
    PlaneSample,
    PointCloud,
)
from ..utils.geometry import rotation_z
from ..utils.logger import OdrLogger, null_logger
from .filters import crop, filter_markings, remove_radius_outliers
from .ground import fit_ground_plane


def extract_frame(
    frame: Frame, cfg: ExtractionConfig, origin: Optional[np.ndarray] = None
) -> Tuple[PointCloud, PlaneSample]:
    """
    Run crop, ground plane, marking filter and world transform on one frame.

    Args:
        frame: Vehicle-frame sweep with pose
        cfg: Extraction configuration
        origin: World origin subtracted after the pose transform

    Returns:
        World-frame marking points and the frame's ground plane in world terms

    Raises:
        EstimationError: The cropped frame cannot support a ground plane
    """
    cropped = crop(frame.cloud, cfg)
    plane = fit_ground_plane(cropped, cfg)
    markings = filter_markings(cropped, plane, cfg)
    kept = Frame.model_construct(cloud=markings, pose=frame.pose, timestamp=frame.timestamp)
    world = to_world(kept, origin)

    shift = np.zeros(3) if origin is None else np.asarray(origin, dtype=np.float64)
    position = np.asarray(frame.pose.translation) - shift
    normal = rotation_z(frame.pose.yaw) @ plane.normal
    sample = PlaneSample(
        position=(float(position[0]), float(position[1]), float(position[2])),
        normal=(float(normal[0]), float(normal[1]), float(normal[2])),
    )
    return world, sample


def extract_markings(
    frames: Sequence[Frame],
    cfg: ExtractionConfig,
    workers: Optional[int] = None,
    logger: Optional[OdrLogger] = None,
    origin: Optional[np.ndarray] = None,
) -> MarkingCloud:
    """
    Extract every frame and accumulate the results into one world cloud.

    Frames whose ground plane cannot be estimated are skipped with a warning.
    Radius outlier removal runs once on the merged cloud, so the result does
    not depend on how frames were distributed over workers.
    """
    log = logger or null_logger()
    origin = world_origin(frames) if origin is None else np.asarray(origin, dtype=np.float64)

    def _one(frame: Frame) -> Optional[Tuple[PointCloud, PlaneSample]]:
        try:
            return extract_frame(frame, cfg, origin)
        except EstimationError as e:
            log.warn("extraction", "skipping frame", timestamp=frame.timestamp, reason=e.message)
            return None

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_one, frames))

    clouds: List[PointCloud] = []
    planes: List[PlaneSample] = []
    for result in results:
        if result is None:
            continue
        clouds.append(result[0])
        planes.append(result[1])

    merged = merge_world(clouds)
    cleaned = remove_radius_outliers(merged, cfg, workers)
    log.info(
        "extraction",
        "extracted marking cloud",
        frames=len(frames),
        used_frames=len(clouds),
        points_in=int(sum(len(f.cloud) for f in frames)),
        markings=len(merged),
        after_outliers=len(cleaned),
    )
    if not frames:
        log.warn("extraction", "empty recording, marking cloud is empty")
    return MarkingCloud(
        cloud=cleaned if len(cleaned) else PointCloud.empty(FrameTag.WORLD),
        planes=planes,
        origin=(float(origin[0]), float(origin[1]), float(origin[2])),
        frame_count=len(frames),
    )
