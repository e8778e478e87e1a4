"""Command-line interface: synth, extract, build, export, eval and run."""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

from .clustering import write_clusters_csv
from .core import (
    LidarOdr,
    LidarOdrError,
    env_defaults,
    load_config,
    read_mapping,
    read_marking_cloud,
    read_road_model,
    validate_model,
    write_marking_cloud,
    write_road_model,
)
from .core.artifacts import ROAD_MODEL_FILE
from .evaluation import format_pipeline_report, format_report_table, report_to_json
from .lane_builder import write_candidates_csv
from .odr import read_opendrive, write_opendrive
from .synth import generate_scene, perturb_recording, write_scene
from .topology import write_relations_csv
from .types import SceneSpec
from .utils.logger import OdrLogger, get_logger

ROAD_FILE = "road.xodr"
RELATIONS_FILE = "relations.csv"
REPORT_JSON = "report.json"
REPORT_TEXT = "report.txt"


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="pipeline configuration (TOML or JSON)")
    common.add_argument("--seed", type=int, help="global seed for every randomized step")
    common.add_argument("--threads", type=int, help="worker cap for parallel stages")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument(
        "-v", "--verbose", action="count", default=None, help="more log output (repeatable)"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="lidar-odr",
        description="Build OpenDRIVE roads from LiDAR lane-marking recordings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", parents=[common], help="generate a synthetic highway")
    synth.add_argument("--scene", type=Path, help="scene specification (TOML or JSON)")
    synth.add_argument("--binary", action="store_true", help="write float32 frame files")
    synth.add_argument(
        "--perturb", type=int, metavar="SEED", help="re-noise the recording with this seed"
    )

    extract = sub.add_parser("extract", parents=[common], help="recording to marking cloud")
    extract.add_argument("recordings", nargs="+", type=Path)

    build = sub.add_parser("build", parents=[common], help="marking cloud to road model")
    build.add_argument("markings", type=Path, help="markings.csv or its directory")
    build.add_argument("--dump", action="store_true", help="also write clusters and candidates")

    export = sub.add_parser("export", parents=[common], help="road model to OpenDRIVE")
    export.add_argument("model", type=Path, help="road_model.json or its directory")

    evaluate = sub.add_parser("eval", parents=[common], help="compare two OpenDRIVE roads")
    evaluate.add_argument("odr_a", type=Path)
    evaluate.add_argument("odr_b", type=Path)
    evaluate.add_argument("--step", type=float, help="sampling step along the first road")
    evaluate.add_argument("--json", action="store_true", help="print JSON instead of a table")

    run = sub.add_parser("run", parents=[common], help="recording to OpenDRIVE with a report")
    run.add_argument("recordings", nargs="+", type=Path)
    run.add_argument("--truth", type=Path, help="reference OpenDRIVE for the report")
    return parser


def _pipeline(args: argparse.Namespace, logger: OdrLogger) -> LidarOdr:
    config = load_config(args.config)
    return LidarOdr(config, seed=args.seed, threads=args.threads, logger=logger)


def cmd_synth(args: argparse.Namespace, logger: OdrLogger) -> int:
    config = load_config(args.config)
    if args.scene is not None:
        spec = validate_model(SceneSpec, read_mapping(args.scene), str(args.scene))
    elif config.scene is not None:
        spec = config.scene
    else:
        spec = SceneSpec.highway_default()
    # --seed first, then a seed set in the config file, else the scene's own
    seed = args.seed
    if seed is None and "seed" in config.model_fields_set:
        seed = config.seed
    if seed is not None:
        spec = spec.model_copy(update={"seed": seed})
    frames, truth = generate_scene(spec, logger, config)
    if args.perturb is not None:
        frames = perturb_recording(frames, args.perturb, spec.noise_sigma or 0.03)
    out = write_scene(frames, truth, args.out, binary=args.binary)
    logger.info("cli", "wrote scene", out=str(out), frames=len(frames))
    return 0


def cmd_extract(args: argparse.Namespace, logger: OdrLogger) -> int:
    pipeline = _pipeline(args, logger)
    markings = pipeline.extract(pipeline.read(args.recordings))
    cloud_path, _ = write_marking_cloud(markings, args.out)
    logger.info("cli", "wrote marking cloud", path=str(cloud_path), points=len(markings.cloud))
    return 0


def cmd_build(args: argparse.Namespace, logger: OdrLogger) -> int:
    pipeline = _pipeline(args, logger)
    built = pipeline.build(read_marking_cloud(args.markings))
    write_road_model(built.model, args.out / ROAD_MODEL_FILE)
    write_relations_csv(built.lookups, args.out / RELATIONS_FILE)
    if args.dump:
        write_clusters_csv(built.clusters, args.out / "clusters.csv")
        write_candidates_csv(built.lines, args.out / "candidates.csv")
    logger.info("cli", "wrote road model", lanes=built.model.lane_count, out=str(args.out))
    return 0


def cmd_export(args: argparse.Namespace, logger: OdrLogger) -> int:
    pipeline = _pipeline(args, logger)
    exported = pipeline.export(read_road_model(args.model))
    path = write_opendrive(exported.document, args.out / ROAD_FILE)
    logger.info("cli", "wrote OpenDRIVE", path=str(path), continuity=exported.continuity.passed)
    return 0


def cmd_eval(args: argparse.Namespace, logger: OdrLogger) -> int:
    pipeline = _pipeline(args, logger)
    report = pipeline.evaluate(
        read_opendrive(args.odr_a), read_opendrive(args.odr_b), step=args.step
    )
    sys.stdout.write(report_to_json(report) if args.json else format_report_table(report))
    return 0


def cmd_run(args: argparse.Namespace, logger: OdrLogger) -> int:
    pipeline = _pipeline(args, logger)
    truth = read_opendrive(args.truth) if args.truth is not None else None
    markings = pipeline.extract(pipeline.read(args.recordings))
    built = pipeline.build(markings)
    exported = pipeline.export(built.model)
    report = pipeline.report(markings, built, exported, truth)

    out: Path = args.out
    write_marking_cloud(markings, out)
    write_road_model(built.model, out / ROAD_MODEL_FILE)
    write_relations_csv(built.lookups, out / RELATIONS_FILE)
    write_opendrive(exported.document, out / ROAD_FILE)
    text = format_pipeline_report(report)
    (out / REPORT_JSON).write_text(report_to_json(report), encoding="utf-8")
    (out / REPORT_TEXT).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace, OdrLogger], int]] = {
    "synth": cmd_synth,
    "extract": cmd_extract,
    "build": cmd_build,
    "export": cmd_export,
    "eval": cmd_eval,
    "run": cmd_run,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    args = build_parser().parse_args(list(argv) if argv is not None else None)
    try:
        env = env_defaults()
    except LidarOdrError as e:
        sys.stderr.write(f"error: {e.message}\n")
        return e.exit_code
    if args.verbose is None:
        args.verbose = env["verbose"] if env["verbose"] is not None else 0
    if args.threads is None:
        args.threads = env["threads"]

    logger = get_logger(args.verbose)
    try:
        return COMMANDS[args.command](args, logger)
    except LidarOdrError as e:
        logger.error("cli", e.message, command=args.command, **e.details)
        sys.stderr.write(f"error: {e.message}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
