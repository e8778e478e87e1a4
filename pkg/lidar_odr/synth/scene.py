"""Synthetic highway recordings with analytic ground truth."""

import math
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.errors import ConfigurationError
from ..ingest.reader import write_recording
from ..odr.writer import write_opendrive
from ..types import (
    CubicRecord,
    Frame,
    FrameTag,
    GroundTruth,
    Lane,
    LaneSection,
    OdrDocument,
    OdrHeader,
    PipelineConfig,
    PointCloud,
    Pose,
    SceneSpec,
    Vec3,
    normalize_yaw,
)
from ..utils.geometry import rotation_z
from ..utils.logger import OdrLogger, null_logger
from .centerline import Centerline, ElevationProfile

MARKING_REFLECTIVITY = (0.7, 1.0)
CLUTTER_REFLECTIVITY = (0.0, 0.3)
BRIGHT_CLUTTER_REFLECTIVITY = (0.6, 1.0)
ELEVATED_HEIGHT = (0.5, 1.8)
# Spacing of the ground-truth polylines.
TRUTH_STEP = 1.0


def line_offsets(spec: SceneSpec) -> List[float]:
    """Lateral offsets of the marking lines, leftmost first (positive is left)."""
    n = spec.lane_count
    return [(n / 2.0 - k) * spec.lane_width for k in range(n + 1)]


def _marking_points(
    spec: SceneSpec, line: int, offset: float, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """Stations and lateral offsets of one marking line's points."""
    solid = line in (0, spec.lane_count)
    s = np.arange(0.0, spec.total_length, spec.point_spacing)
    unit = np.floor(s / spec.dash_cycle).astype(int)
    units = int(unit.max()) + 1 if len(unit) else 0

    keep = np.ones(units, dtype=bool)
    if not solid:
        keep &= rng.random(units) >= spec.dropout_fraction
    fraction = spec.line_dropout.get(line, 0.0)
    if fraction > 0.0:
        keep &= rng.random(units) >= fraction

    mask = keep[unit]
    if not solid:
        mask &= np.mod(s, spec.dash_cycle) < spec.dash_length
    s = s[mask]

    width = spec.solid_width if solid else spec.dashed_width
    rows = np.zeros(1)
    if spec.marking_rows > 1:
        rows = np.linspace(-width / 2.0, width / 2.0, spec.marking_rows)
    stations = np.repeat(s, len(rows))
    lateral = offset + np.tile(rows, len(s))
    return stations, lateral


def _clutter_points(
    spec: SceneSpec, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Stations, lateral offsets, height offsets and reflectivities of clutter."""
    half = spec.lane_count * spec.lane_width / 2.0 + spec.clutter_margin
    area = spec.total_length * 2.0 * half
    count = int(rng.poisson(spec.clutter_density * area)) if spec.clutter_density > 0 else 0
    s = rng.uniform(0.0, spec.total_length, count)
    t = rng.uniform(-half, half, count)
    elevated = rng.random(count) < spec.elevated_fraction
    bright = elevated | (rng.random(count) < spec.high_reflectivity_fraction)
    refl = np.where(
        bright,
        rng.uniform(*BRIGHT_CLUTTER_REFLECTIVITY, count),
        rng.uniform(*CLUTTER_REFLECTIVITY, count),
    )
    lift = np.where(elevated, rng.uniform(*ELEVATED_HEIGHT, count), 0.0)
    return s, t, lift, refl


def truth_document(
    spec: SceneSpec,
    centerline: Centerline,
    profile: ElevationProfile,
    geo_reference: str = "",
) -> OdrDocument:
    """Ground-truth road: analytic planView, grade records, bank and right-side lanes."""
    superelevation = []
    if spec.bank_angle:
        superelevation = [CubicRecord(s=0.0, a=math.radians(spec.bank_angle))]
    lanes = [
        Lane(id=-(k + 1), width=CubicRecord(s=0.0, a=spec.lane_width))
        for k in range(spec.lane_count)
    ]
    return OdrDocument(
        header=OdrHeader(name="ground-truth", geo_reference=geo_reference),
        road_name="ground-truth",
        plan_view=centerline.geometries(),
        elevation=profile.records(),
        superelevation=superelevation,
        lane_offset=[CubicRecord(s=0.0, a=spec.lane_count * spec.lane_width / 2.0)],
        lane_sections=[LaneSection(s=0.0, right=lanes)],
    )


def _polyline(
    centerline: Centerline, profile: ElevationProfile, s: np.ndarray, t: float, bank: float
) -> List[Vec3]:
    xy = centerline.offset(s, np.full(len(s), t))
    z = profile(s) + t * bank
    return [(float(x), float(y), float(h)) for (x, y), h in zip(xy, z)]


def generate_scene(
    spec: SceneSpec,
    logger: Optional[OdrLogger] = None,
    config: Optional[PipelineConfig] = None,
) -> Tuple[List[Frame], GroundTruth]:
    """
    Synthesize a recording and its ground truth.

    Marking points are laid out along every line at point_spacing in rows
    across the marking width, inner lines dashed, outer lines solid. Dashes
    drop with dropout_fraction and any unit of a line with its line_dropout
    fraction. Clutter is uniform over the road plus a margin. Frames are cut
    every frame_spacing meters of centerline; each point belongs to its
    nearest frame, whose pose sits on the centerline at road height with the
    centerline heading as yaw. Output is a pure function of the spec; a
    pipeline config only lends its geo reference to the ground-truth header.

    Raises:
        ConfigurationError: Scene too short for a single frame
    """
    log = logger or null_logger()
    if spec.total_length < spec.point_spacing:
        raise ConfigurationError("scene is shorter than one point spacing")
    rng = np.random.default_rng(spec.seed)
    centerline = Centerline(spec.centerline)
    profile = ElevationProfile(spec.elevation_profile, centerline.length)
    bank = math.tan(math.radians(spec.bank_angle))
    offsets = line_offsets(spec)

    stations, lateral, lift, refl = [], [], [], []
    marking_count = 0
    for line, offset in enumerate(offsets):
        s, t = _marking_points(spec, line, offset, rng)
        stations.append(s)
        lateral.append(t)
        lift.append(np.zeros(len(s)))
        refl.append(rng.uniform(*MARKING_REFLECTIVITY, len(s)))
        marking_count += len(s)
    clutter = _clutter_points(spec, rng)
    for part, values in zip((stations, lateral, lift, refl), clutter):
        part.append(values)

    s_all = np.concatenate(stations)
    t_all = np.concatenate(lateral)
    xy = centerline.offset(s_all, t_all)
    z = profile(s_all) + t_all * bank + np.concatenate(lift)
    xyz = np.column_stack([xy, z])
    if spec.noise_sigma > 0:
        xyz += rng.normal(0.0, spec.noise_sigma, xyz.shape)
    refl_all = np.concatenate(refl)

    frame_s = np.arange(0.0, centerline.length + 1e-9, spec.frame_spacing)
    owner = np.clip(np.rint(s_all / spec.frame_spacing).astype(int), 0, len(frame_s) - 1)
    pose_xy, pose_hdg = centerline.evaluate(frame_s)
    pose_z = profile(frame_s)
    frames = []
    for k, s_frame in enumerate(frame_s):
        mask = owner == k
        translation = np.array([pose_xy[k, 0], pose_xy[k, 1], pose_z[k]])
        yaw = normalize_yaw(float(pose_hdg[k]))
        local = (xyz[mask] - translation) @ rotation_z(yaw)
        cloud = PointCloud(data=np.column_stack([local, refl_all[mask]]), frame=FrameTag.VEHICLE)
        frames.append(
            Frame(
                cloud=cloud,
                pose=Pose(translation=tuple(float(c) for c in translation), yaw=yaw),
                timestamp=float(s_frame / spec.speed),
            )
        )

    truth_s = np.append(np.arange(0.0, centerline.length, TRUTH_STEP), centerline.length)
    truth = GroundTruth(
        centerline=_polyline(centerline, profile, truth_s, 0.0, bank),
        marking_lines=[_polyline(centerline, profile, truth_s, t, bank) for t in offsets],
        line_offsets=offsets,
        lane_count=spec.lane_count,
        lane_widths=[spec.lane_width] * spec.lane_count,
        document=truth_document(
            spec, centerline, profile, config.export.geo_reference if config else ""
        ),
    )
    log.info(
        "synth",
        "generated scene",
        length=round(centerline.length, 3),
        frames=len(frames),
        marking_points=marking_count,
        clutter_points=len(s_all) - marking_count,
    )
    return frames, truth


def perturb_recording(
    frames: Sequence[Frame], seed: int, noise_sigma: float = 0.03
) -> List[Frame]:
    """Re-noise every point position with a fresh seed; poses, order and reflectivity stay."""
    rng = np.random.default_rng(seed)
    out = []
    for frame in frames:
        data = frame.cloud.data.copy()
        data[:, :3] += rng.normal(0.0, noise_sigma, (len(data), 3))
        out.append(
            frame.model_copy(update={"cloud": PointCloud(data=data, frame=FrameTag.VEHICLE)})
        )
    return out


def write_scene(
    frames: Sequence[Frame],
    truth: GroundTruth,
    out_dir: Union[str, Path],
    binary: bool = False,
) -> Path:
    """Write recording/, truth.xodr and truth.json below out_dir."""
    out = Path(out_dir)
    write_recording(frames, out / "recording", binary=binary)
    write_opendrive(truth.document, out / "truth.xodr")
    (out / "truth.json").write_text(
        truth.model_dump_json(indent=2, exclude={"document"}) + "\n", encoding="utf-8"
    )
    return out
