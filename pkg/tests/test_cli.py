"""Command-line interface: subcommands, artifacts and exit codes."""

import json

import pytest

from lidar_odr.cli import main
from lidar_odr.core import write_road_model
from lidar_odr.odr import read_opendrive
from lidar_odr.types import RoadModel


@pytest.fixture
def workdir(tmp_path, isolated_env, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _write_scene_file(spec, path):
    path.write_text(spec.model_dump_json(), encoding="utf-8")
    return path


def _synth(spec, workdir, name="scene"):
    scene_file = _write_scene_file(spec, workdir / f"{name}.json")
    assert main(["synth", "--scene", str(scene_file), "--out", str(workdir / name)]) == 0
    return workdir / name


class TestSynthAndEval:
    def test_synth_writes_scene(self, tiny_scene, workdir):
        out = _synth(tiny_scene, workdir)
        assert (out / "truth.xodr").exists()
        assert (out / "truth.json").exists()
        assert (out / "recording").is_dir()

    def test_synth_uses_config(self, tiny_scene, workdir):
        config = {
            "seed": 3,
            "scene": tiny_scene.model_dump(mode="json"),
            "export": {"geo_reference": "+proj=utm +zone=32 +ellps=GRS80"},
        }
        path = workdir / "cfg.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        out = workdir / "from_config"
        assert main(["synth", "--config", str(path), "--out", str(out)]) == 0
        truth = read_opendrive(out / "truth.xodr")
        assert truth.header.geo_reference == "+proj=utm +zone=32 +ellps=GRS80"
        assert truth.length == pytest.approx(100.0)
        assert json.loads((out / "truth.json").read_text(encoding="utf-8"))["lane_count"] == 3

    def test_eval_against_itself(self, tiny_scene, workdir, capsys):
        truth = str(_synth(tiny_scene, workdir) / "truth.xodr")
        capsys.readouterr()
        assert main(["eval", truth, truth, "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["rmse"] == 0.0
        assert report["avg_distance"] == 0.0

    def test_eval_table(self, tiny_scene, workdir, capsys):
        truth = str(_synth(tiny_scene, workdir) / "truth.xodr")
        capsys.readouterr()
        assert main(["eval", truth, truth, "--step", "0.5"]) == 0
        assert "RMSE" in capsys.readouterr().out


class TestExitCodes:
    def test_missing_config(self, workdir):
        assert main(["build", str(workdir), "--config", str(workdir / "nope.toml")]) == 2

    @pytest.mark.parametrize("content", [None, "[export]\nkink = 1\n", "[scene]\nlane_count = 2\n"])
    def test_synth_bad_config(self, workdir, content):
        path = workdir / "cfg.toml"
        if content is not None:
            path.write_text(content, encoding="utf-8")
        assert main(["synth", "--config", str(path), "--out", str(workdir / "scene")]) == 2
        assert not (workdir / "scene").exists()

    def test_bad_environment(self, workdir, isolated_env):
        isolated_env["LIDAR_ODR_THREADS"] = "many"
        assert main(["build", str(workdir)]) == 2

    def test_missing_markings(self, workdir, capsys):
        assert main(["build", str(workdir / "markings"), "--out", str(workdir)]) == 3
        assert "error:" in capsys.readouterr().err

    def test_missing_recording(self, workdir):
        assert main(["extract", str(workdir / "recording"), "--out", str(workdir)]) == 3

    def test_missing_opendrive(self, workdir):
        missing = str(workdir / "missing.xodr")
        assert main(["eval", missing, missing]) == 5


class TestStages:
    def test_export_from_road_model(self, workdir):
        model = RoadModel(
            reference_polyline=[(float(x), 0.0, 0.0) for x in range(0, 151)],
            lane_count=2,
            lane_widths=[3.5, 3.5],
            lane_offset=3.5,
        )
        path = write_road_model(model, workdir / "model" / "road_model.json")
        assert main(["export", str(path.parent), "--out", str(workdir / "odr")]) == 0
        doc = read_opendrive(workdir / "odr" / "road.xodr")
        assert doc.length == pytest.approx(150.0, abs=1e-3)
        assert [l.id for l in doc.lane_sections[0].right] == [-1, -2]

    def test_extract_build_export_chain(self, tiny_scene, workdir):
        scene = _synth(tiny_scene, workdir)
        assert main(["extract", str(scene / "recording"), "--out", str(workdir / "x")]) == 0
        assert (workdir / "x" / "markings.csv").exists()
        args = ["build", str(workdir / "x"), "--out", str(workdir / "b"), "--dump"]
        assert main(args) == 0
        for name in ("road_model.json", "relations.csv", "clusters.csv", "candidates.csv"):
            assert (workdir / "b" / name).exists()
        assert main(["export", str(workdir / "b"), "--out", str(workdir / "e")]) == 0
        assert read_opendrive(workdir / "e" / "road.xodr").lane_sections[0].right


class TestRun:
    def test_end_to_end_with_truth(self, small_scene, workdir, capsys):
        scene = _synth(small_scene, workdir)
        args = [
            "run",
            str(scene / "recording"),
            "--truth",
            str(scene / "truth.xodr"),
            "--out",
            str(workdir / "out"),
            "--seed",
            "3",
        ]
        assert main(args) == 0
        assert "RMSE" in capsys.readouterr().out
        report = json.loads((workdir / "out" / "report.json").read_text(encoding="utf-8"))
        assert report["lane_count"] == 3
        assert report["continuity"]["passed"]
        assert report["map_distance"]["avg_distance"] <= 0.15
        for name in ("road.xodr", "road_model.json", "markings.csv", "report.txt"):
            assert (workdir / "out" / name).exists()

    def test_output_is_deterministic(self, tiny_scene, workdir):
        scene = _synth(tiny_scene, workdir)
        outputs = []
        for name in ("a", "b"):
            args = ["run", str(scene / "recording"), "--out", str(workdir / name), "--seed", "1"]
            assert main(args) == 0
            outputs.append((workdir / name / "road.xodr").read_bytes())
        assert outputs[0] == outputs[1]
