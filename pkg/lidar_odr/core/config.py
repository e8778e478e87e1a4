"""Configuration file loading and environment defaults."""

import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar, Union

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, ValidationError

from ..types import PipelineConfig
from .errors import ConfigurationError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

M = TypeVar("M", bound=BaseModel)

ENV_VERBOSE = "LIDAR_ODR_VERBOSE"
ENV_THREADS = "LIDAR_ODR_THREADS"


def read_mapping(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a TOML or JSON file into a dict; the suffix decides the format.

    Raises:
        ConfigurationError: Unreadable file, syntax error or a non-table top level
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ConfigurationError(f"cannot read {path}: {e.strerror or e}")
    try:
        if path.suffix.lower() == ".json":
            data = json.loads(raw.decode("utf-8"))
        else:
            data = tomllib.loads(raw.decode("utf-8"))
    except (ValueError, tomllib.TOMLDecodeError) as e:
        raise ConfigurationError(f"{path} is not valid: {e}")
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path} must hold a table at the top level")
    return data


def validate_model(model: Type[M], data: Dict[str, Any], source: str = "configuration") -> M:
    """Validate a mapping, turning pydantic errors into ConfigurationError."""
    try:
        return model.model_validate(data)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
            for err in e.errors()
        )
        raise ConfigurationError(f"{source}: {problems}")


def load_config(path: Optional[Union[str, Path]] = None) -> PipelineConfig:
    """Pipeline configuration from a file, or the defaults without one."""
    if path is None:
        return PipelineConfig()
    return validate_model(PipelineConfig, read_mapping(path), str(path))


def _env_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return None
    try:
        return int(value)
    except ValueError:
        raise ConfigurationError(f"environment variable {name}={value!r} is not an integer")


def env_defaults(dotenv_path: Optional[Union[str, Path]] = None) -> Dict[str, Optional[int]]:
    """
    Load a .env file and read the verbosity and thread defaults.

    Returns:
        {"verbose": ..., "threads": ...}; unset variables map to None
    """
    load_dotenv(dotenv_path or find_dotenv(usecwd=True))
    return {"verbose": _env_int(ENV_VERBOSE), "threads": _env_int(ENV_THREADS)}
