"""Versioned intermediate artifacts written between stages."""

from pathlib import Path
from typing import List, Tuple, Union

import numpy as np
from pydantic import TypeAdapter, ValidationError

from ..ingest.reader import POINT_HEADER, _parse_csv
from ..types import FrameTag, MarkingCloud, PlaneSample, PointCloud, RoadModel
from .errors import ParseError

PathLike = Union[str, Path]

CLOUD_MAGIC = "# lidar-odr world-cloud v1"
MARKINGS_FILE = "markings.csv"
PLANES_FILE = "planes.json"
ROAD_MODEL_FILE = "road_model.json"
ROAD_MODEL_VERSION = 1

_PLANES = TypeAdapter(List[PlaneSample])


def write_marking_cloud(markings: MarkingCloud, directory: PathLike) -> Tuple[Path, Path]:
    """Write markings.csv (header, origin, points) and planes.json."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    ox, oy, oz = markings.origin
    cloud_path = directory / MARKINGS_FILE
    with open(cloud_path, "w", encoding="utf-8") as fh:
        fh.write(f"{CLOUD_MAGIC}\n")
        fh.write(
            f"# origin {float(ox)!r} {float(oy)!r} {float(oz)!r} "
            f"frames {markings.frame_count}\n"
        )
        fh.write(POINT_HEADER + "\n")
        np.savetxt(fh, markings.cloud.data, fmt="%.17g", delimiter=",")
    planes_path = directory / PLANES_FILE
    planes_path.write_bytes(_PLANES.dump_json(markings.planes, indent=2))
    return cloud_path, planes_path


def _read_cloud_header(path: Path) -> Tuple[Tuple[float, float, float], int]:
    with open(path, "r", encoding="utf-8") as fh:
        magic = fh.readline().rstrip("\n")
        meta = fh.readline().rstrip("\n")
    if magic != CLOUD_MAGIC:
        raise ParseError(str(path), 1, f"expected header '{CLOUD_MAGIC}'")
    parts = meta.lstrip("# ").split()
    try:
        if len(parts) != 6 or parts[0] != "origin" or parts[4] != "frames":
            raise ValueError(meta)
        origin = (float(parts[1]), float(parts[2]), float(parts[3]))
        return origin, int(parts[5])
    except ValueError:
        raise ParseError(str(path), 2, "expected '# origin x y z frames n'")


def read_marking_cloud(directory: PathLike) -> MarkingCloud:
    """
    Read markings.csv and, when present, planes.json from a directory.

    Raises:
        ParseError: Missing or wrong header, malformed rows or plane samples
    """
    directory = Path(directory)
    cloud_path = directory if directory.is_file() else directory / MARKINGS_FILE
    if not cloud_path.exists():
        raise ParseError(str(cloud_path), None, "marking cloud file not found")
    origin, frames = _read_cloud_header(cloud_path)
    data = _parse_csv(cloud_path, 4, unit_column=3)

    planes: List[PlaneSample] = []
    planes_path = cloud_path.parent / PLANES_FILE
    if planes_path.exists():
        try:
            planes = _PLANES.validate_json(planes_path.read_bytes())
        except ValidationError as e:
            reason = f"invalid plane samples: {e.error_count()} errors"
            raise ParseError(str(planes_path), None, reason)
    return MarkingCloud(
        cloud=PointCloud(data=data, frame=FrameTag.WORLD),
        planes=planes,
        origin=origin,
        frame_count=frames,
    )


def write_road_model(model: RoadModel, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def read_road_model(path: PathLike) -> RoadModel:
    """
    Read a road model file; the format tag and version must match.

    Raises:
        ParseError: Missing file, wrong format/version or invalid fields
    """
    path = Path(path)
    if path.is_dir():
        path = path / ROAD_MODEL_FILE
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ParseError(str(path), None, f"cannot read road model: {e.strerror or e}")
    try:
        model = RoadModel.model_validate_json(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise ParseError(str(path), None, f"invalid road model at {where}: {first['msg']}")
    if model.version != ROAD_MODEL_VERSION:
        raise ParseError(str(path), None, f"unsupported road model version {model.version}")
    return model
