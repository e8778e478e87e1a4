"""Segmentation, paramPoly3 fitting, profiles and road export."""

import math

import numpy as np
import pytest

from lidar_odr.core.errors import ExportError, ValidationError
from lidar_odr.evaluation import continuity_report
from lidar_odr.odr import (
    curve_length,
    end_pose,
    eval_rot,
    export_road,
    fit_elevation,
    fit_param_poly3,
    fit_superelevation,
    plane_roll,
    poly3_length,
    sample_reference_line,
    split_by_dist,
)
from lidar_odr.odr.sampling import poly3_local, to_inertial
from lidar_odr.types import (
    ExportConfig,
    Geometry,
    LineCurve,
    PlaneSample,
    RoadModel,
    Segment,
)


def _straight(length: float, step: float = 1.0, heading: float = 0.0) -> np.ndarray:
    s = np.linspace(0.0, length, int(round(length / step)) + 1)
    return np.column_stack([s * math.cos(heading), s * math.sin(heading), np.zeros_like(s)])


def _arc(radius: float, length: float, step: float = 1.0) -> np.ndarray:
    theta = np.linspace(0.0, length, int(round(length / step)) + 1) / radius
    return np.column_stack(
        [radius * np.sin(theta), radius * (1.0 - np.cos(theta)), np.zeros_like(theta)]
    )


def _segment(points: np.ndarray) -> Segment:
    return Segment(index=0, points=points, before=np.zeros((0, 3)), after=np.zeros((0, 3)))


def _banked_normal(roll: float, heading: float = 0.0) -> tuple:
    left = np.array([-math.sin(heading), math.cos(heading), 0.0])
    normal = -math.sin(roll) * left + math.cos(roll) * np.array([0.0, 0.0, 1.0])
    return tuple(float(c) for c in normal)


def _model(polyline: np.ndarray, widths=(3.5, 3.5), planes=()) -> RoadModel:
    return RoadModel(
        reference_polyline=[tuple(p) for p in polyline],
        lane_count=len(widths),
        lane_widths=list(widths),
        lane_offset=sum(widths) / 2.0,
        plane_samples=list(planes),
    )


class TestSplitByDist:
    def test_remainder_becomes_segment(self):
        segments = split_by_dist(_straight(250.0), ExportConfig())
        assert [round(s.chord_length) for s in segments] == [100, 100, 50]
        for a, b in zip(segments[:-1], segments[1:]):
            np.testing.assert_array_equal(a.points[-1], b.points[0])

    def test_short_remainder_is_merged(self):
        segments = split_by_dist(_straight(240.0), ExportConfig())
        assert [round(s.chord_length) for s in segments] == [100, 140]

    def test_single_segment_has_no_extensions(self):
        (segment,) = split_by_dist(_straight(100.0), ExportConfig())
        assert len(segment.before) == 0 and len(segment.after) == 0
        assert len(segment.points) == 101

    def test_extensions_reach_lookahead_distance(self):
        cfg = ExportConfig()
        middle = split_by_dist(_straight(300.0), cfg)[1]
        assert middle.points[0, 0] - middle.before[0, 0] == pytest.approx(
            cfg.lookahead_distance, abs=1.0
        )
        assert middle.after[-1, 0] - middle.points[-1, 0] == pytest.approx(
            cfg.lookahead_distance, abs=1.0
        )
        assert np.all(middle.before[:, 0] < middle.points[0, 0])
        assert np.all(middle.after[:, 0] > middle.points[-1, 0])

    def test_too_short_polyline(self):
        with pytest.raises(ExportError):
            split_by_dist(np.array([[0.0, 0.0, 0.0], [0.5, 0.0, 0.0]]), ExportConfig())


class TestParamPoly3:
    @pytest.mark.parametrize("heading", [0.0, math.pi / 4, math.pi])
    def test_eval_rot_follows_chain(self, heading):
        rot = eval_rot(_segment(_straight(50.0, heading=heading)))
        assert abs(math.remainder(rot - heading, 2.0 * math.pi)) < 1e-9

    def test_straight_line(self):
        segment = _segment(_straight(100.0))
        curve = fit_param_poly3(segment, eval_rot(segment), ExportConfig())
        assert curve.bU == pytest.approx(100.0, abs=1e-6)
        for name in ("cU", "dU", "bV", "cV", "dV", "aU", "aV"):
            assert abs(getattr(curve, name)) < 1e-6
        assert curve.p_range == "normalized"

    def test_arc_is_reproduced(self):
        radius = 500.0
        segment = _segment(_arc(radius, 100.0))
        hdg = eval_rot(segment)
        curve = fit_param_poly3(segment, hdg, ExportConfig())
        length = curve_length(curve)
        assert length == pytest.approx(100.0, abs=0.01)

        geometry = Geometry(s=0.0, x=0.0, y=0.0, hdg=hdg, length=length, curve=curve)
        u, v = poly3_local(curve, np.linspace(0.0, 1.0, 200))
        xy = to_inertial(geometry, u, v)
        radial = np.linalg.norm(xy - np.array([0.0, radius]), axis=1) - radius
        assert np.abs(radial).max() <= 0.01

    def test_endpoints_are_held(self):
        rng = np.random.default_rng(4)
        points = _straight(100.0)
        points[1:-1, 1] += rng.normal(0.0, 0.05, len(points) - 2)
        segment = _segment(points)
        hdg = eval_rot(segment)
        curve = fit_param_poly3(segment, hdg, ExportConfig())
        geometry = Geometry(
            s=0.0, x=0.0, y=0.0, hdg=hdg, length=curve_length(curve), curve=curve
        )
        x_end, y_end, _ = end_pose(geometry)
        assert math.hypot(x_end - 100.0, y_end) < 0.01

    def test_fixed_start_heading(self):
        segment = _segment(_arc(500.0, 100.0))
        curve = fit_param_poly3(segment, 0.0, ExportConfig(), fix_start_heading=True)
        assert curve.bV == 0.0
        assert curve.bU > 0

    def test_quadrature_matches_table_length(self):
        segment = _segment(_arc(300.0, 100.0))
        curve = fit_param_poly3(segment, eval_rot(segment), ExportConfig())
        assert poly3_length(curve) == pytest.approx(curve_length(curve), rel=1e-4)


class TestProfiles:
    def test_flat(self):
        record = fit_elevation(_segment(_straight(100.0)), 0.0, 100.0)
        assert [record.a, record.b, record.c, record.d] == pytest.approx([0, 0, 0, 0], abs=1e-9)

    def test_constant_grade(self):
        points = _straight(100.0)
        points[:, 2] = 10.0 + 0.02 * points[:, 0]
        record = fit_elevation(_segment(points), 250.0, 100.0)
        assert record.s == 250.0
        assert record.a == pytest.approx(10.0, abs=1e-9)
        assert record.b == pytest.approx(0.02, abs=1e-9)

    def test_crest(self):
        points = _straight(100.0)
        points[:, 2] = 0.5 * np.sin(math.pi * points[:, 0] / 100.0)
        record = fit_elevation(_segment(points), 0.0, 100.0)
        fitted = np.array([record.value(float(x)) for x in points[:, 0]])
        assert np.abs(fitted - points[:, 2]).max() <= 0.05

    @pytest.mark.parametrize("heading", [0.0, 1.0, -2.5])
    def test_plane_roll(self, heading):
        roll = math.radians(2.0)
        assert plane_roll(_banked_normal(roll, heading), heading) == pytest.approx(roll)

    def test_constant_bank(self):
        roll = math.radians(2.0)
        geometry = Geometry(s=0.0, x=0.0, y=0.0, hdg=0.0, length=100.0, curve=LineCurve())
        planes = [
            PlaneSample(position=(x, 0.0, 0.0), normal=_banked_normal(roll))
            for x in np.arange(5.0, 100.0, 10.0)
        ]
        (record,) = fit_superelevation([geometry], planes)
        assert record.a == pytest.approx(roll, abs=1e-9)
        assert abs(record.b) < 1e-9

    def test_no_planes(self):
        geometry = Geometry(s=0.0, x=0.0, y=0.0, hdg=0.0, length=100.0, curve=LineCurve())
        assert fit_superelevation([geometry], []) == []

    def test_geometry_without_samples_takes_median(self):
        roll = math.radians(1.5)
        geometries = [
            Geometry(s=0.0, x=0.0, y=0.0, hdg=0.0, length=100.0, curve=LineCurve()),
            Geometry(s=100.0, x=100.0, y=0.0, hdg=0.0, length=100.0, curve=LineCurve()),
        ]
        planes = [PlaneSample(position=(x, 0.0, 0.0), normal=_banked_normal(roll))
                  for x in (10.0, 30.0, 50.0)]
        records = fit_superelevation(geometries, planes)
        assert records[1].s == 100.0
        assert records[1].a == pytest.approx(roll)


class TestExportRoad:
    def test_straight_road(self, logger):
        doc = export_road(_model(_straight(250.0)), ExportConfig(), logger)
        assert len(doc.plan_view) == 3
        assert doc.length == pytest.approx(250.0, abs=1e-6)
        assert doc.lane_offset[0].a == 3.5
        assert [l.id for l in doc.lane_sections[0].right] == [-1, -2]
        assert doc.lane_sections[0].left == []
        assert doc.superelevation == []
        points = sample_reference_line(doc, 1.0)
        assert np.abs(points[:, 1]).max() < 1e-6
        assert np.abs(points[:, 2]).max() < 1e-9

    def test_geometries_chain_without_gaps(self):
        doc = export_road(_model(_arc(600.0, 330.0)), ExportConfig())
        for prev, nxt in zip(doc.plan_view[:-1], doc.plan_view[1:]):
            x, y, _ = end_pose(prev)
            assert (x, y) == (nxt.x, nxt.y)
            assert nxt.s == pytest.approx(prev.s + prev.length)

    def test_default_chains_start_heading(self):
        doc = export_road(_model(_arc(600.0, 330.0)), ExportConfig())
        for prev, nxt in zip(doc.plan_view[:-1], doc.plan_view[1:]):
            assert nxt.hdg == end_pose(prev)[2]
            assert nxt.curve.bV == 0.0
        assert continuity_report(doc).max_kink_deg == pytest.approx(0.0, abs=1e-9)

    def test_free_start_heading(self):
        cfg = ExportConfig(constrain_start_heading=False)
        doc = export_road(_model(_arc(600.0, 330.0)), cfg)
        for prev, nxt in zip(doc.plan_view[:-1], doc.plan_view[1:]):
            x, y, _ = end_pose(prev)
            assert (x, y) == (nxt.x, nxt.y)

    def test_banked_road_gets_superelevation(self):
        roll = math.radians(2.0)
        planes = [PlaneSample(position=(x, 0.0, 0.0), normal=_banked_normal(roll))
                  for x in np.arange(0.0, 250.0, 20.0)]
        doc = export_road(_model(_straight(250.0), planes=planes), ExportConfig())
        assert len(doc.superelevation) == len(doc.plan_view)
        for record in doc.superelevation:
            assert record.a == pytest.approx(roll, abs=1e-6)

    def test_width_count_mismatch(self):
        model = _model(_straight(100.0), widths=(3.5,)).model_copy(update={"lane_count": 2})
        with pytest.raises(ValidationError):
            export_road(model, ExportConfig())

    def test_single_reference_point(self):
        with pytest.raises(ValidationError):
            export_road(_model(np.zeros((1, 3))), ExportConfig())
