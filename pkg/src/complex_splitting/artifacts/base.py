"""Abstract base class for study artifacts."""

from abc import ABC, abstractmethod
from pathlib import Path

from ..models.study import StudyResult


class BaseArtifactWriter(ABC):
    """Abstract base class for writing a study result to disk."""

    @abstractmethod
    def write(self, result: StudyResult, stem: str) -> Path:
        """Write a study result.

        Args:
            result: Result to write.
            stem: File name without extension.

        Returns:
            Path of the written file.
        """
        pass

    @property
    @abstractmethod
    def name(self) -> str:
        """Get the artifact format name."""
        pass
