"""Configuration, artifacts, logging, stage handlers and the pipeline class."""

import os

import numpy as np
import pytest

from lidar_odr.core import (
    LidarOdr,
    env_defaults,
    load_config,
    read_marking_cloud,
    read_road_model,
    write_marking_cloud,
    write_road_model,
)
from lidar_odr.core.artifacts import ROAD_MODEL_FILE
from lidar_odr.core.errors import (
    ConfigurationError,
    ParseError,
    StructuralError,
    ValidationError,
)
from lidar_odr.handlers import BuildStage, ExportStage
from lidar_odr.synth import generate_scene
from lidar_odr.types import (
    FrameTag,
    MarkingCloud,
    PipelineConfig,
    PlaneSample,
    PointCloud,
    RoadModel,
)
from lidar_odr.utils.logger import LogLevel, OdrLogger, null_logger


class RecordingLogger:
    """Stand-in for a structlog logger that records calls."""

    def __init__(self, bound=None):
        self.calls = []
        self.bound = bound or {}

    def _record(self, level):
        def method(message, **kwargs):
            self.calls.append((level, message, {**self.bound, **kwargs}))
        return method

    def __getattr__(self, name):
        if name in ("error", "warning", "info", "debug"):
            return self._record(name)
        raise AttributeError(name)

    def bind(self, **kwargs):
        child = RecordingLogger({**self.bound, **kwargs})
        child.calls = self.calls
        return child


def _road_model(**overrides) -> RoadModel:
    data = dict(
        reference_polyline=[(0.0, 0.0, 0.0), (50.0, 0.0, 0.0), (100.0, 0.0, 0.5)],
        lane_count=2,
        lane_widths=[3.5, 3.25],
        width_samples=[[3.5, 3.5], [3.25]],
        lane_offset=3.375,
        superline_count=3,
        origin=(10.0, 20.0, 1.0),
        plane_samples=[PlaneSample(position=(1.0, 2.0, 0.0), normal=(0.0, 0.0, 1.0))],
    )
    data.update(overrides)
    return RoadModel(**data)


class TestConfig:
    def test_defaults_without_file(self):
        assert load_config() == PipelineConfig()

    def test_toml(self, tmp_path):
        path = tmp_path / "cfg.toml"
        path.write_text("seed = 4\n[clustering]\ndbscan_eps = 0.5\n", encoding="utf-8")
        cfg = load_config(path)
        assert cfg.seed == 4
        assert cfg.clustering.dbscan_eps == 0.5
        assert cfg.search == PipelineConfig().search

    def test_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"topology": {"quantization": "modulo"}}', encoding="utf-8")
        assert load_config(path).topology.quantization == "modulo"

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "cfg.toml"
        path.write_text("[clustering]\nepsilon = 0.5\n", encoding="utf-8")
        with pytest.raises(ConfigurationError) as exc:
            load_config(path)
        assert "clustering.epsilon" in exc.value.message
        assert exc.value.exit_code == 2

    def test_value_out_of_range(self, tmp_path):
        path = tmp_path / "cfg.toml"
        path.write_text("[search]\ngamma = 1.5\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_syntax_error(self, tmp_path):
        path = tmp_path / "cfg.toml"
        path.write_text("[clustering\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config(tmp_path / "nope.toml")

    def test_with_seed_reaches_estimators(self):
        cfg = PipelineConfig().with_seed(9)
        assert (cfg.seed, cfg.extraction.rng_seed, cfg.clustering.rng_seed) == (9, 9, 9)


class TestEnvironment:
    def test_dotenv_values(self, isolated_env, tmp_path):
        dotenv = tmp_path / ".env"
        dotenv.write_text("LIDAR_ODR_VERBOSE=2\nLIDAR_ODR_THREADS=4\n", encoding="utf-8")
        assert env_defaults(dotenv) == {"verbose": 2, "threads": 4}

    def test_environment_wins_over_dotenv(self, isolated_env, tmp_path):
        isolated_env["LIDAR_ODR_THREADS"] = "8"
        dotenv = tmp_path / ".env"
        dotenv.write_text("LIDAR_ODR_THREADS=4\n", encoding="utf-8")
        assert env_defaults(dotenv)["threads"] == 8

    def test_unset(self, isolated_env, tmp_path):
        assert env_defaults(tmp_path / "missing.env") == {"verbose": None, "threads": None}

    def test_not_an_integer(self, isolated_env, tmp_path):
        os.environ["LIDAR_ODR_VERBOSE"] = "loud"
        with pytest.raises(ConfigurationError):
            env_defaults(tmp_path / "missing.env")


class TestArtifacts:
    def test_marking_cloud_roundtrip(self, tmp_path):
        rng = np.random.default_rng(0)
        data = np.column_stack([rng.normal(0.0, 50.0, (40, 3)), rng.random(40)])
        markings = MarkingCloud(
            cloud=PointCloud(data=data, frame=FrameTag.WORLD),
            planes=[PlaneSample(position=(1.0, 2.0, 3.0), normal=(0.0, 0.1, 0.99))],
            origin=(1234.5, -0.25, 3.0),
            frame_count=7,
        )
        write_marking_cloud(markings, tmp_path)
        back = read_marking_cloud(tmp_path)
        np.testing.assert_array_equal(back.cloud.data, data)
        assert back.cloud.frame is FrameTag.WORLD
        assert back.planes == markings.planes
        assert back.origin == markings.origin
        assert back.frame_count == 7

    def test_bad_magic(self, tmp_path):
        (tmp_path / "markings.csv").write_text("x,y,z,reflectivity\n1,2,3,0.5\n", encoding="utf-8")
        with pytest.raises(ParseError) as exc:
            read_marking_cloud(tmp_path)
        assert exc.value.details["line"] == 1

    def test_missing_cloud(self, tmp_path):
        with pytest.raises(ParseError):
            read_marking_cloud(tmp_path)

    def test_road_model_roundtrip(self, tmp_path):
        model = _road_model()
        write_road_model(model, tmp_path / ROAD_MODEL_FILE)
        assert read_road_model(tmp_path) == model

    def test_road_model_version(self, tmp_path):
        path = write_road_model(_road_model(version=2), tmp_path / ROAD_MODEL_FILE)
        with pytest.raises(ParseError):
            read_road_model(path)

    def test_road_model_format_tag(self, tmp_path):
        path = tmp_path / ROAD_MODEL_FILE
        path.write_text('{"format": "other", "reference_polyline": []}', encoding="utf-8")
        with pytest.raises(ParseError):
            read_road_model(path)


class TestLogger:
    def test_levels_are_filtered(self):
        backend = RecordingLogger()
        logger = OdrLogger(backend, verbose=1)
        logger.error("ingest", "broken", path="a")
        logger.warn("topology", "dropped", source=1)
        logger.info("topology", "hidden")
        logger.debug("topology", "hidden")
        assert [c[0] for c in backend.calls] == ["error", "warning"]
        level, message, fields = backend.calls[1]
        assert message == "dropped"
        assert fields == {"category": "topology", "level": "WARN", "source": 1}

    def test_dict_log_lines(self):
        backend = RecordingLogger()
        logger = OdrLogger(backend, verbose=3)
        logger.log({"category": "odr", "message": "m", "level": "debug", "auxiliary": {"k": 1}})
        assert backend.calls == [("debug", "m", {"category": "odr", "level": "DEBUG", "k": 1})]

    def test_child_binds_context(self):
        backend = RecordingLogger()
        child = OdrLogger(backend, verbose=2).child(stage="build")
        child.info("clustering", "done")
        assert backend.calls[0][2]["stage"] == "build"
        assert child.verbose == 2

    def test_timed_block(self):
        backend = RecordingLogger()
        with OdrLogger(backend, verbose=2).timed("pipeline", "build finished", lanes=3):
            pass
        level, message, fields = backend.calls[0]
        assert (level, message) == ("info", "build finished")
        assert fields["lanes"] == 3
        assert fields["seconds"] >= 0.0

    def test_null_logger_drops_everything(self):
        logger = null_logger()
        assert logger.verbose < LogLevel.ERROR
        logger.error("any", "not shown")


class TestStages:
    def test_build_without_clusters(self, logger, config):
        empty = MarkingCloud(cloud=PointCloud.empty(FrameTag.WORLD))
        with pytest.raises(StructuralError):
            BuildStage(logger, config).handle(empty)

    def test_strict_continuity(self, logger):
        polyline = [(400.0 * np.sin(t), 400.0 * (1 - np.cos(t)), 0.0)
                    for t in np.linspace(0.0, 0.8, 321)]
        model = _road_model(reference_polyline=polyline)
        export = {"max_kink_deg": 1e-9, "constrain_start_heading": False}
        loose = PipelineConfig.model_validate({"export": export})
        result = ExportStage(logger, loose).handle(model)
        assert not result.continuity.passed
        strict = PipelineConfig.model_validate({"export": {**export, "strict_continuity": True}})
        with pytest.raises(ValidationError):
            ExportStage(logger, strict).handle(model)

    def test_default_export_is_continuous(self, logger):
        polyline = [(400.0 * np.sin(t), 400.0 * (1 - np.cos(t)), 0.0)
                    for t in np.linspace(0.0, 0.8, 321)]
        strict = PipelineConfig.model_validate({"export": {"strict_continuity": True}})
        result = ExportStage(logger, strict).handle(_road_model(reference_polyline=polyline))
        assert result.continuity.passed
        assert result.continuity.max_kink_deg == pytest.approx(0.0, abs=1e-9)


class TestPipeline:
    def test_invalid_config(self, logger):
        with pytest.raises(ConfigurationError):
            LidarOdr({"bogus": 1}, logger=logger)
        with pytest.raises(ConfigurationError):
            LidarOdr(threads=0, logger=logger)

    def test_overrides(self, logger):
        odr = LidarOdr(PipelineConfig(), seed=5, threads=2, logger=logger)
        assert odr.config.seed == 5
        assert odr.config.extraction.rng_seed == 5
        assert odr.config.threads == 2

    def test_run_on_synthetic_road(self, tiny_scene, logger):
        frames, truth = generate_scene(tiny_scene)
        odr = LidarOdr(seed=1, threads=2, logger=logger)
        built, exported, report = odr.run(frames, truth.document)
        assert built.model.lane_count == 3
        assert report.lane_count == 3
        assert report.continuity.passed
        assert report.map_distance.avg_distance <= 0.15
        assert report.stage_counts["frames"] == len(frames)
        assert exported.document.lane_offset[0].a == pytest.approx(5.25, abs=0.2)
