"""Shared fixtures for the lidar-odr test suite."""

import os
from typing import Callable, Optional, Sequence

import numpy as np
import pytest

from lidar_odr.types import (
    CenterlinePrimitive,
    Cluster,
    CubicRecord,
    FrameTag,
    Geometry,
    Lane,
    LaneSection,
    LineCurve,
    OdrDocument,
    OdrHeader,
    PipelineConfig,
    PointCloud,
    SceneSpec,
)
from lidar_odr.utils.logger import OdrLogger, null_logger


@pytest.fixture
def logger() -> OdrLogger:
    return null_logger()


@pytest.fixture
def config() -> PipelineConfig:
    return PipelineConfig()


@pytest.fixture
def isolated_env(monkeypatch: pytest.MonkeyPatch) -> dict:
    """os.environ replaced by a private copy without LIDAR_ODR_* variables."""
    env = {k: v for k, v in os.environ.items() if not k.startswith("LIDAR_ODR_")}
    monkeypatch.setattr(os, "environ", env)
    return env


@pytest.fixture
def document_factory() -> Callable[..., OdrDocument]:
    def _make(
        geometries: Sequence[Geometry],
        lane_widths: Sequence[float] = (3.5,),
        elevation: Optional[Sequence[CubicRecord]] = None,
        name: str = "test",
    ) -> OdrDocument:
        lanes = [
            Lane(id=-(k + 1), width=CubicRecord(s=0.0, a=w)) for k, w in enumerate(lane_widths)
        ]
        return OdrDocument(
            header=OdrHeader(name=name),
            road_name=name,
            plan_view=list(geometries),
            elevation=list(elevation) if elevation is not None else [CubicRecord(s=0.0)],
            lane_offset=[CubicRecord(s=0.0, a=sum(lane_widths) / 2.0)],
            lane_sections=[LaneSection(s=0.0, right=lanes)],
        )

    return _make


@pytest.fixture
def straight_document(document_factory: Callable[..., OdrDocument]) -> Callable[..., OdrDocument]:
    def _make(
        length: float = 100.0, x: float = 0.0, y: float = 0.0, hdg: float = 0.0
    ) -> OdrDocument:
        geometry = Geometry(s=0.0, x=x, y=y, hdg=hdg, length=length, curve=LineCurve())
        return document_factory([geometry])

    return _make


@pytest.fixture
def cluster_factory() -> Callable[..., Cluster]:
    def _make(
        cluster_id: int,
        center: Sequence[float],
        direction: Sequence[float] = (1.0, 0.0, 0.0),
        length: float = 6.0,
    ) -> Cluster:
        c = np.asarray(center, dtype=np.float64)
        d = np.asarray(direction, dtype=np.float64)
        return Cluster(
            id=cluster_id,
            points=PointCloud(data=[[c[0], c[1], c[2], 1.0]], frame=FrameTag.WORLD),
            center=c,
            raw_direction=d / np.linalg.norm(d),
            length=length,
        )

    return _make


@pytest.fixture
def small_scene() -> SceneSpec:
    """520 m three-lane road: straight, gentle left arc, straight."""
    return SceneSpec(
        centerline=[
            CenterlinePrimitive(kind="straight", length=200.0),
            CenterlinePrimitive(kind="arc", radius=800.0, angle=0.15),
            CenterlinePrimitive(kind="straight", length=200.0),
        ],
        lane_count=3,
        noise_sigma=0.02,
        clutter_density=0.02,
        seed=7,
    )


@pytest.fixture
def tiny_scene() -> SceneSpec:
    """100 m straight, noise-free and without clutter."""
    return SceneSpec(
        centerline=[CenterlinePrimitive(kind="straight", length=100.0)],
        lane_count=3,
        seed=1,
    )
