"""Recording reader and writer (per-frame CSV/binary clouds plus poses.csv)."""

import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from ..core.errors import ParseError, StructuralError
from ..types import Frame, FrameTag, PointCloud, Pose

POSES_FILE = "poses.csv"
POSE_HEADER = "timestamp,tx,ty,tz,yaw"
POINT_HEADER = "x,y,z,reflectivity"
FRAME_SUFFIXES = (".csv", ".bin")

PathLike = Union[str, Path]


def _parse_csv(path: Path, columns: int, unit_column: Optional[int] = None) -> np.ndarray:
    """
    Parse a numeric CSV file with an optional header line.

    Args:
        path: CSV file
        columns: Expected column count
        unit_column: Column whose values must lie in [0, 1]

    Raises:
        ParseError: On non-numeric values, wrong column counts or non-finite values
    """
    rows: List[List[float]] = []
    seen_content = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split(",")
            try:
                values = [float(p) for p in parts]
            except ValueError:
                if not seen_content:
                    seen_content = True  # header line
                    continue
                raise ParseError(str(path), lineno, f"non-numeric value in '{stripped}'")
            seen_content = True
            if len(values) != columns:
                raise ParseError(
                    str(path), lineno, f"expected {columns} columns, got {len(values)}"
                )
            if not all(math.isfinite(v) for v in values):
                raise ParseError(str(path), lineno, "non-finite value")
            if unit_column is not None and not 0.0 <= values[unit_column] <= 1.0:
                raise ParseError(
                    str(path), lineno, f"reflectivity {values[unit_column]} outside [0, 1]"
                )
            rows.append(values)
    return np.array(rows, dtype=np.float64).reshape(-1, columns)


def read_frame_cloud(path: PathLike) -> PointCloud:
    """Read one vehicle-frame cloud from CSV or packed little-endian float32."""
    path = Path(path)
    if path.suffix == ".bin":
        raw = np.fromfile(path, dtype="<f4")
        if raw.size % 4:
            raise ParseError(str(path), None, "binary size is not a multiple of 4 floats")
        data = raw.reshape(-1, 4).astype(np.float64)
        finite = np.isfinite(data).all(axis=1)
        if not finite.all():
            raise ParseError(str(path), int(np.flatnonzero(~finite)[0]) + 1, "non-finite value")
        bad = np.flatnonzero((data[:, 3] < 0.0) | (data[:, 3] > 1.0))
        if bad.size:
            row = int(bad[0])
            raise ParseError(str(path), row + 1, f"reflectivity {data[row, 3]} outside [0, 1]")
    else:
        data = _parse_csv(path, 4, unit_column=3)
    return PointCloud(data=data, frame=FrameTag.VEHICLE)


def read_poses(path: PathLike) -> np.ndarray:
    """Read poses.csv rows (timestamp, tx, ty, tz, yaw)."""
    return _parse_csv(Path(path), 5)


def frame_files(directory: Path) -> List[Path]:
    """Per-frame cloud files in name order."""
    return sorted(
        p
        for p in directory.iterdir()
        if p.is_file() and p.suffix in FRAME_SUFFIXES and p.name != POSES_FILE
    )


def read_recording(path: PathLike, threads: Optional[int] = None) -> List[Frame]:
    """
    Read a recording directory into timestamp-ordered frames.

    Args:
        path: Directory holding poses.csv and one cloud file per frame
        threads: Worker cap for parallel frame parsing

    Returns:
        Frames in timestamp order, every cloud tagged vehicle

    Raises:
        StructuralError: Missing directory/poses or pose and frame counts differ
        ParseError: A malformed row, with file and line
    """
    directory = Path(path)
    if not directory.is_dir():
        raise StructuralError("recording directory does not exist", path=str(directory))

    files = frame_files(directory)
    poses_path = directory / POSES_FILE
    if not poses_path.exists():
        if not files:
            return []
        raise StructuralError("missing poses file", path=str(poses_path))

    poses = read_poses(poses_path)
    if len(poses) != len(files):
        raise StructuralError(
            "pose and frame counts differ",
            poses=len(poses),
            frames=len(files),
            path=str(directory),
        )
    if len(poses) > 1 and np.any(np.diff(poses[:, 0]) <= 0):
        raise StructuralError("timestamps must be strictly increasing", path=str(poses_path))

    with ThreadPoolExecutor(max_workers=threads) as pool:
        clouds = list(pool.map(read_frame_cloud, files))

    frames = []
    for row, cloud in zip(poses, clouds):
        timestamp, tx, ty, tz, yaw = (float(v) for v in row)
        try:
            pose = Pose(translation=(tx, ty, tz), yaw=yaw)
        except ValueError as e:
            raise ParseError(str(poses_path), None, f"invalid pose: {e}")
        frames.append(Frame(cloud=cloud, pose=pose, timestamp=timestamp))
    return frames


def write_recording(frames: Sequence[Frame], path: PathLike, binary: bool = False) -> Path:
    """
    Write frames in the layout read_recording accepts.

    Values are written with 17 significant digits so a write/read cycle is
    lossless for CSV; binary frames are float32.
    """
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    pose_rows = np.array(
        [[f.timestamp, *f.pose.translation, f.pose.yaw] for f in frames], dtype=np.float64
    ).reshape(-1, 5)
    np.savetxt(
        directory / POSES_FILE, pose_rows, fmt="%.17g", delimiter=",",
        header=POSE_HEADER, comments="",
    )
    for i, frame in enumerate(frames):
        if binary:
            frame.cloud.data.astype("<f4").tofile(directory / f"frame_{i:06d}.bin")
        else:
            np.savetxt(
                directory / f"frame_{i:06d}.csv", frame.cloud.data, fmt="%.17g",
                delimiter=",", header=POINT_HEADER, comments="",
            )
    return directory


def read_recordings(paths: Sequence[PathLike], threads: Optional[int] = None) -> List[Frame]:
    """
    Read several recordings for accumulation into one world cloud.

    Frames keep their recording order; timestamps only need to increase
    within each recording. The first pose of the first recording becomes the
    world origin downstream.
    """
    frames: List[Frame] = []
    for path in paths:
        frames.extend(read_recording(path, threads))
    return frames
