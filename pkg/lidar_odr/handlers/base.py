"""Base stage class for all pipeline stages."""

from abc import ABC, abstractmethod
from typing import Any, Generic, Optional, TypeVar

from ..types import PipelineConfig
from ..utils.logger import OdrLogger

# Type variable for stage results
T = TypeVar("T")


class BaseStage(ABC, Generic[T]):
    """
    Abstract base class for pipeline stages.

    A stage owns one slice of the pipeline configuration and turns the
    previous stage's artifact into its own.
    """

    def __init__(self, logger: OdrLogger, config: PipelineConfig):
        """
        Initialize base stage.

        Args:
            logger: Logger instance
            config: Full pipeline configuration
        """
        self.logger = logger
        self.config = config

    @property
    def workers(self) -> Optional[int]:
        return self.config.threads

    @abstractmethod
    def handle(self, *args: Any, **kwargs: Any) -> T:
        """
        Run the stage.

        Returns:
            Stage-specific artifact
        """

    def _log_info(self, message: str, **kwargs: Any) -> None:
        self.logger.info(f"stage:{self.__class__.__name__}", message, **kwargs)

    def _log_warning(self, message: str, **kwargs: Any) -> None:
        self.logger.warn(f"stage:{self.__class__.__name__}", message, **kwargs)
