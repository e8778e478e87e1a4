"""Crop, ground plane, marking filter and radius outlier removal."""

import numpy as np
import pytest
from scipy.spatial.distance import cdist

from lidar_odr.core.errors import EstimationError, StructuralError
from lidar_odr.extraction import (
    crop,
    extract_markings,
    filter_markings,
    fit_ground_plane,
    ground_inlier_mask,
    neighbor_counts,
    remove_radius_outliers,
)
from lidar_odr.synth import generate_scene
from lidar_odr.types import ExtractionConfig, FrameTag, GroundPlane, PointCloud


def _brute_force_counts(xyz: np.ndarray, radius: float) -> np.ndarray:
    return (cdist(xyz, xyz) <= radius).sum(axis=1) - 1


def _marking_field(seed: int, markings: int = 1000, clutter: int = 60) -> np.ndarray:
    rng = np.random.default_rng(seed)
    s = rng.uniform(0.0, 40.0, markings)
    lane = rng.integers(0, 3, markings) * 3.5
    dense = np.column_stack([s, lane + rng.normal(0.0, 0.05, markings), np.zeros(markings)])
    sparse = np.column_stack(
        [rng.uniform(0.0, 40.0, clutter), rng.uniform(-2.0, 9.0, clutter), np.zeros(clutter)]
    )
    xyz = np.vstack([dense, sparse])
    return np.column_stack([xyz, rng.random(len(xyz))])


def _tilted_plane(seed: int, count: int = 500, outlier_fraction: float = 0.2):
    rng = np.random.default_rng(seed)
    slope = rng.uniform(-0.08, 0.08, 2)
    xy = rng.uniform(-20.0, 20.0, (count, 2))
    z = xy @ slope
    outliers = rng.random(count) < outlier_fraction
    z[outliers] += rng.uniform(0.5, 2.0, int(outliers.sum()))
    data = np.column_stack([xy, z, rng.random(count)])
    normal = np.array([-slope[0], -slope[1], 1.0])
    return PointCloud(data=data, frame=FrameTag.VEHICLE), normal / np.linalg.norm(normal), ~outliers


class TestCrop:
    def test_range_and_height(self):
        cfg = ExtractionConfig(max_range=10.0, sensor_height=1.9)
        cloud = PointCloud(
            data=[[1.0, 0.0, 0.0, 0.5], [20.0, 0.0, 0.0, 0.5], [1.0, 0.0, 2.5, 0.5]],
            frame=FrameTag.VEHICLE,
        )
        kept = crop(cloud, cfg)
        np.testing.assert_array_equal(kept.xyz, [[1.0, 0.0, 0.0]])

    def test_inside_bounds_is_identity(self):
        cloud = PointCloud(
            data=[[1.0, 2.0, 0.0, 0.5], [3.0, -1.0, 0.1, 0.9]], frame=FrameTag.VEHICLE
        )
        np.testing.assert_array_equal(crop(cloud, ExtractionConfig()).data, cloud.data)

    def test_world_cloud_refused(self):
        cloud = PointCloud(data=[[1.0, 0.0, 0.0, 0.5]], frame=FrameTag.WORLD)
        with pytest.raises(StructuralError):
            crop(cloud, ExtractionConfig())


class TestGroundPlane:
    def test_flat_ground(self):
        rng = np.random.default_rng(3)
        data = np.column_stack([rng.uniform(-10, 10, (200, 2)), np.zeros(200), rng.random(200)])
        plane = fit_ground_plane(PointCloud(data=data, frame=FrameTag.VEHICLE), ExtractionConfig())
        np.testing.assert_allclose(plane.normal, [0.0, 0.0, 1.0], atol=1e-6)
        assert abs(plane.offset) < 1e-6
        assert plane.inlier_count == 200

    @pytest.mark.parametrize("seed", range(20))
    def test_inliers_match_true_plane(self, seed):
        cloud, normal, truth = _tilted_plane(seed)
        cfg = ExtractionConfig(rng_seed=seed)
        plane = fit_ground_plane(cloud, cfg)
        np.testing.assert_allclose(plane.normal, normal, atol=1e-6)
        assert abs(plane.offset) < 1e-6
        inliers = ground_inlier_mask(cloud, plane, cfg.ransac_inlier_tol)
        np.testing.assert_array_equal(inliers, truth)
        assert plane.inlier_count == int(truth.sum())

    def test_deterministic_for_seed(self):
        cloud, _, _ = _tilted_plane(11)
        a = fit_ground_plane(cloud, ExtractionConfig(rng_seed=5))
        b = fit_ground_plane(cloud, ExtractionConfig(rng_seed=5))
        np.testing.assert_array_equal(a.normal, b.normal)
        assert a.offset == b.offset

    def test_too_few_points(self):
        cloud = PointCloud(data=[[0, 0, 0, 0.5], [1, 0, 0, 0.5]], frame=FrameTag.VEHICLE)
        with pytest.raises(EstimationError):
            fit_ground_plane(cloud, ExtractionConfig())

    def test_collinear_points(self):
        data = np.column_stack([np.arange(10.0), np.zeros(10), np.zeros(10), np.full(10, 0.5)])
        with pytest.raises(EstimationError):
            fit_ground_plane(PointCloud(data=data, frame=FrameTag.VEHICLE), ExtractionConfig())


class TestFilters:
    def test_plane_and_reflectivity(self):
        plane = GroundPlane(normal=[0.0, 0.0, 1.0], offset=0.0)
        cloud = PointCloud(
            data=[
                [0.0, 0.0, 0.10, 0.9],  # bright, below raise
                [1.0, 0.0, 0.30, 0.9],  # above raise
                [2.0, 0.0, 0.00, 0.2],  # dark
                [3.0, 0.0, -0.05, 0.5],  # at the threshold
            ],
            frame=FrameTag.VEHICLE,
        )
        kept = filter_markings(cloud, plane, ExtractionConfig())
        np.testing.assert_array_equal(kept.xyz[:, 0], [0.0, 3.0])

    def test_neighbor_counts_match_brute_force(self):
        xyz = _marking_field(0)[:, :3]
        np.testing.assert_array_equal(neighbor_counts(xyz, 0.5), _brute_force_counts(xyz, 0.5))

    @pytest.mark.parametrize("seed", range(20))
    def test_outlier_removal_matches_brute_force(self, seed):
        data = _marking_field(seed, markings=int(200 + 80 * seed))
        cfg = ExtractionConfig()
        cloud = PointCloud(data=data, frame=FrameTag.WORLD)
        kept = remove_radius_outliers(cloud, cfg, workers=2)
        counts = _brute_force_counts(data[:, :3], cfg.outlier_radius)
        expected = counts >= cfg.outlier_min_neighbors
        np.testing.assert_array_equal(kept.data, data[expected])

    def test_outlier_removal_is_permutation_invariant(self):
        data = _marking_field(4)
        cfg = ExtractionConfig()
        perm = np.random.default_rng(9).permutation(len(data))
        a = remove_radius_outliers(PointCloud(data=data, frame=FrameTag.WORLD), cfg).data
        b = remove_radius_outliers(PointCloud(data=data[perm], frame=FrameTag.WORLD), cfg).data
        key = lambda rows: rows[np.lexsort(rows.T[::-1])]
        np.testing.assert_array_equal(key(a), key(b))

    def test_outlier_removal_needs_world_cloud(self):
        with pytest.raises(StructuralError):
            remove_radius_outliers(
                PointCloud(data=[[0, 0, 0, 0.5]], frame=FrameTag.VEHICLE), ExtractionConfig()
            )


class TestExtractMarkings:
    def test_synthetic_scene(self, tiny_scene, logger):
        frames, _ = generate_scene(tiny_scene)
        markings = extract_markings(frames, ExtractionConfig(), workers=2, logger=logger)
        assert markings.cloud.frame is FrameTag.WORLD
        assert markings.frame_count == len(frames)
        assert len(markings.planes) == len(frames)
        assert markings.origin == frames[0].pose.translation
        # every surviving point lies on one of the four marking lines
        y = markings.cloud.xyz[:, 1]
        offsets = np.array([5.25, 1.75, -1.75, -5.25])
        assert np.abs(y[:, None] - offsets[None, :]).min(axis=1).max() < 0.2
        for plane in markings.planes:
            assert plane.normal[2] == pytest.approx(1.0, abs=1e-6)

    def test_worker_count_does_not_change_result(self, tiny_scene):
        frames, _ = generate_scene(tiny_scene)
        a = extract_markings(frames, ExtractionConfig(), workers=1)
        b = extract_markings(frames, ExtractionConfig(), workers=4)
        np.testing.assert_array_equal(a.cloud.data, b.cloud.data)

    def test_empty_recording(self):
        markings = extract_markings([], ExtractionConfig())
        assert len(markings.cloud) == 0
        assert markings.frame_count == 0
