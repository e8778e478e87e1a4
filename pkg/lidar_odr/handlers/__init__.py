"""Stage handlers for the lidar-odr pipeline."""

from .base import BaseStage
from .build import BuildStage
from .export import ExportStage
from .extract import ExtractStage

__all__ = ["BaseStage", "BuildStage", "ExportStage", "ExtractStage"]
