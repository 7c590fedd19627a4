"""Factory for creating scheduler instances."""
import logging
from typing import Dict, List, Type

from src.config import Config
from src.scheduling.algorithms.bicriteria import BicriteriaScheduler
from src.scheduling.algorithms.gang import GangScheduler
from src.scheduling.algorithms.list_graham import ListOrder, ListScheduler
from src.scheduling.algorithms.sequential import SequentialScheduler
from src.scheduling.base import BaseScheduler

logger = logging.getLogger(__name__)


class SchedulerFactory:
    """Factory for creating scheduler instances by name."""

    _schedulers: Dict[str, Type[BaseScheduler]] = {
        "bicriteria": BicriteriaScheduler,
        "gang": GangScheduler,
        "seq-lptf": SequentialScheduler,
        "list-shelf": ListScheduler,
        "list-wlptf": ListScheduler,
        "list-saf": ListScheduler,
    }

    _list_orders: Dict[str, ListOrder] = {
        "list-shelf": ListOrder.SHELF,
        "list-wlptf": ListOrder.WEIGHTED_LPTF,
        "list-saf": ListOrder.SMALLEST_AREA_FIRST,
    }

    @classmethod
    def create(cls, name: str, config: Config, seed: int = 0) -> BaseScheduler:
        """Create a scheduler.

        Args:
            name: Scheduler name (e.g., "bicriteria", "list-saf")
            config: Application configuration
            seed: Seed for randomized schedulers

        Returns:
            Scheduler instance

        Raises:
            ValueError: If the scheduler is not supported
        """
        name_lower = name.lower()

        if name_lower not in cls._schedulers:
            available = ", ".join(cls._schedulers.keys())
            raise ValueError(
                f"Unsupported scheduler: {name}. "
                f"Available schedulers: {available}"
            )

        scheduler_class = cls._schedulers[name_lower]
        logger.debug(f"Creating scheduler: {name_lower}")

        if scheduler_class is BicriteriaScheduler:
            return BicriteriaScheduler(
                shuffle_rounds=config.shuffle_rounds,
                cmax_scale=config.cmax_scale,
                seed=seed,
            )
        if scheduler_class is ListScheduler:
            return ListScheduler(
                order=cls._list_orders[name_lower],
                small_fraction=config.small_task_fraction,
            )
        return scheduler_class()

    @classmethod
    def get_default_scheduler(cls) -> str:
        """Get the default scheduler name."""
        return "bicriteria"

    @classmethod
    def get_available_schedulers(cls) -> List[str]:
        """Get list of available scheduler names."""
        return list(cls._schedulers.keys())

    @classmethod
    def register_scheduler(cls, name: str, scheduler_class: Type[BaseScheduler]):
        """Register a new scheduler.

        The class must be constructible without arguments.

        Args:
            name: Scheduler name
            scheduler_class: Scheduler class
        """
        cls._schedulers[name.lower()] = scheduler_class
        logger.info(f"Registered new scheduler: {name}")
