"""Base scheduler interface."""
from abc import ABC, abstractmethod

from src.model.types import Instance, Schedule


class BaseScheduler(ABC):
    """Base class for all scheduling algorithms."""

    def __init__(self, name: str, display_name: str):
        """Initialize scheduler.

        Args:
            name: Internal name (e.g., 'bicriteria', 'gang')
            display_name: Display name (e.g., 'Bicriteria')
        """
        self.name = name
        self.display_name = display_name

    @abstractmethod
    def schedule(self, instance: Instance) -> Schedule:
        """Build a schedule for the instance.

        Args:
            instance: Problem instance

        Returns:
            A valid schedule covering every task
        """
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"
