"""Recording I/O and frame transforms."""

import math

import numpy as np
import pytest

from lidar_odr.core.errors import ParseError, StructuralError
from lidar_odr.ingest import (
    POSES_FILE,
    inverse_pose,
    merge_world,
    read_recording,
    read_recordings,
    to_vehicle,
    to_world,
    world_origin,
    write_recording,
)
from lidar_odr.types import Frame, FrameTag, MarkPoint, PointCloud, Pose


def _frame(data, translation=(0.0, 0.0, 0.0), yaw=0.0, timestamp=0.0) -> Frame:
    return Frame(
        cloud=PointCloud(data=data, frame=FrameTag.VEHICLE),
        pose=Pose(translation=translation, yaw=yaw),
        timestamp=timestamp,
    )


def _random_frames(count: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    frames = []
    for k in range(count):
        data = np.column_stack([rng.normal(0.0, 10.0, (50, 3)), rng.random(50)])
        frames.append(
            _frame(
                data,
                translation=tuple(rng.normal(0.0, 100.0, 3)),
                yaw=float(rng.uniform(-3.0, 3.0)),
                timestamp=0.1 * k,
            )
        )
    return frames


class TestPointTypes:
    def test_cloud_from_mark_points(self):
        points = [
            MarkPoint(x=1.0, y=2.0, z=0.1, reflectivity=0.8),
            MarkPoint(x=0.0, y=0.0, z=0.0, reflectivity=0.0),
        ]
        cloud = PointCloud.from_points(points, FrameTag.VEHICLE)
        assert len(cloud) == 2
        assert cloud.points == points
        assert cloud.point(0).reflectivity == 0.8

    def test_reflectivity_out_of_range(self):
        with pytest.raises(ValueError):
            MarkPoint(x=0.0, y=0.0, z=0.0, reflectivity=1.5)
        with pytest.raises(ValueError):
            PointCloud(data=[[0.0, 0.0, 0.0, 1.5]], frame=FrameTag.WORLD)


class TestTransforms:
    def test_quarter_turn_maps_x_to_y(self):
        world = to_world(_frame([[1.0, 0.0, 0.0, 0.5]], yaw=math.pi / 2))
        assert world.frame is FrameTag.WORLD
        np.testing.assert_allclose(world.xyz[0], [0.0, 1.0, 0.0], atol=1e-12)
        assert world.reflectivity[0] == 0.5

    def test_translation_and_origin(self):
        frame = _frame([[1.0, 2.0, 3.0, 0.1]], translation=(10.0, 20.0, 1.0))
        world = to_world(frame, origin=np.array([10.0, 20.0, 1.0]))
        np.testing.assert_allclose(world.xyz[0], [1.0, 2.0, 3.0], atol=1e-12)

    def test_to_vehicle_inverts_to_world(self):
        frame = _random_frames(1)[0]
        origin = np.array([5.0, -3.0, 0.5])
        back = to_vehicle(to_world(frame, origin), frame.pose, origin)
        np.testing.assert_allclose(back.data, frame.cloud.data, atol=1e-9)

    def test_inverse_pose_undoes_pose(self):
        pose = Pose(translation=(12.0, -4.0, 1.5), yaw=0.7)
        frame = _frame([[3.0, 1.0, 0.2, 0.9]], translation=pose.translation, yaw=pose.yaw)
        world = to_world(frame)
        restored = to_world(
            Frame(
                cloud=PointCloud(data=world.data, frame=FrameTag.VEHICLE),
                pose=inverse_pose(pose),
                timestamp=0.0,
            )
        )
        np.testing.assert_allclose(restored.xyz[0], [3.0, 1.0, 0.2], atol=1e-9)

    def test_to_world_rejects_world_cloud(self):
        frame = Frame.model_construct(
            cloud=PointCloud(data=[[0.0, 0.0, 0.0, 0.0]], frame=FrameTag.WORLD),
            pose=Pose(translation=(0.0, 0.0, 0.0)),
            timestamp=0.0,
        )
        with pytest.raises(StructuralError):
            to_world(frame)

    def test_merge_world_keeps_order(self):
        a = PointCloud(data=[[1.0, 0.0, 0.0, 0.1]], frame=FrameTag.WORLD)
        b = PointCloud(data=[[2.0, 0.0, 0.0, 0.2]], frame=FrameTag.WORLD)
        merged = merge_world([a, b])
        np.testing.assert_array_equal(merged.xyz[:, 0], [1.0, 2.0])

    def test_merge_world_rejects_vehicle_cloud(self):
        a = PointCloud(data=[[1.0, 0.0, 0.0, 0.1]], frame=FrameTag.WORLD)
        b = PointCloud(data=[[2.0, 0.0, 0.0, 0.2]], frame=FrameTag.VEHICLE)
        with pytest.raises(StructuralError):
            merge_world([a, b])

    def test_world_origin_is_first_translation(self):
        frames = _random_frames(3)
        np.testing.assert_array_equal(world_origin(frames), frames[0].pose.translation)
        np.testing.assert_array_equal(world_origin([]), np.zeros(3))


class TestRecordingIO:
    def test_csv_roundtrip_is_exact(self, tmp_path):
        frames = _random_frames(4)
        write_recording(frames, tmp_path / "rec")
        loaded = read_recording(tmp_path / "rec")
        assert len(loaded) == 4
        for original, read in zip(frames, loaded):
            np.testing.assert_array_equal(read.cloud.data, original.cloud.data)
            assert read.pose == original.pose
            assert read.timestamp == original.timestamp

    def test_binary_frames_are_float32(self, tmp_path):
        frames = _random_frames(2)
        write_recording(frames, tmp_path / "rec", binary=True)
        loaded = read_recording(tmp_path / "rec", threads=2)
        for original, read in zip(frames, loaded):
            np.testing.assert_allclose(read.cloud.data, original.cloud.data, rtol=1e-6, atol=1e-5)

    def test_frame_count_mismatch(self, tmp_path):
        write_recording(_random_frames(3), tmp_path / "rec")
        (tmp_path / "rec" / "frame_000002.csv").unlink()
        with pytest.raises(StructuralError) as exc:
            read_recording(tmp_path / "rec")
        assert exc.value.details["poses"] == 3
        assert exc.value.details["frames"] == 2

    def test_malformed_row_names_file_and_line(self, tmp_path):
        write_recording(_random_frames(1), tmp_path / "rec")
        (tmp_path / "rec" / "frame_000000.csv").write_text(
            "x,y,z,reflectivity\n1,2,3,0.5\n1,2,abc,0.5\n", encoding="utf-8"
        )
        with pytest.raises(ParseError) as exc:
            read_recording(tmp_path / "rec")
        assert exc.value.details["line"] == 3
        assert exc.value.exit_code == 3

    def test_reflectivity_out_of_range(self, tmp_path):
        write_recording(_random_frames(1), tmp_path / "rec")
        (tmp_path / "rec" / "frame_000000.csv").write_text("1,2,3,1.5\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_recording(tmp_path / "rec")

    def test_timestamps_must_increase(self, tmp_path):
        write_recording(_random_frames(2), tmp_path / "rec")
        poses = tmp_path / "rec" / POSES_FILE
        poses.write_text("timestamp,tx,ty,tz,yaw\n1,0,0,0,0\n1,0,0,0,0\n", encoding="utf-8")
        with pytest.raises(StructuralError):
            read_recording(tmp_path / "rec")

    def test_empty_directory_is_empty_recording(self, tmp_path):
        (tmp_path / "rec").mkdir()
        assert read_recording(tmp_path / "rec") == []

    def test_missing_directory(self, tmp_path):
        with pytest.raises(StructuralError):
            read_recording(tmp_path / "nope")

    def test_several_recordings_concatenate(self, tmp_path):
        write_recording(_random_frames(2, seed=1), tmp_path / "a")
        write_recording(_random_frames(3, seed=2), tmp_path / "b")
        frames = read_recordings([tmp_path / "a", tmp_path / "b"])
        assert len(frames) == 5
