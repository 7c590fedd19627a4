"""Multiprocessor list scheduling over a fixed allotment."""
import logging
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Tuple

from src.bounds.cmax import canonical_allotment, cmax_lower_bound
from src.model.types import Instance, MoldableTask, Placement, Schedule
from src.scheduling.base import BaseScheduler
from src.scheduling.profile import ProcessorProfile

logger = logging.getLogger(__name__)


class ListOrder(Enum):
    """List orders of the list-scheduling baselines."""
    SHELF = "shelf"
    WEIGHTED_LPTF = "wlptf"
    SMALLEST_AREA_FIRST = "saf"


def graham_list(
    instance: Instance, allotments: Mapping[int, int], order: Sequence[int]
) -> Schedule:
    """Start each task, in list order, as early as its processors are free.

    Args:
        instance: Problem instance
        allotments: Processor count per task id
        order: Task ids in list order

    Returns:
        Schedule where each start is the earliest feasible given the prefix
    """
    tasks = instance.task_by_id
    if sorted(order) != sorted(tasks):
        raise ValueError("List order must contain every task exactly once")
    profile = ProcessorProfile(instance.m)
    placements = []
    for tid in order:
        allot = allotments[tid]
        (start,) = profile.place(allot, (tasks[tid].time(allot),))
        placements.append(Placement(task_id=tid, start=start, allot=allot))
    return Schedule.from_placements(placements)


def shelf_allotments(instance: Instance) -> Tuple[float, Dict[int, int]]:
    """Allot each task to fit the small shelf lambda/2, else the large shelf lambda.

    Returns:
        Tuple of lambda (the makespan lower bound) and allotment per task id
    """
    lam = cmax_lower_bound(instance).value
    allotments = {}
    for task in instance.tasks:
        allot = canonical_allotment(task, lam / 2)
        if allot is None:
            allot = canonical_allotment(task, lam)
        assert allot is not None
        allotments[task.id] = allot
    return lam, allotments


def _shelf_class(task: MoldableTask, allot: int, lam: float, small_fraction: float) -> int:
    if task.time(allot) > lam / 2:
        return 0
    if task.time(1) <= small_fraction * lam:
        return 2
    return 1


def list_order(
    instance: Instance,
    allotments: Mapping[int, int],
    order: ListOrder,
    lam: float,
    small_fraction: float = 0.25,
) -> List[int]:
    """Task ids sorted for the given list variant; ties break by id."""
    def time(t: MoldableTask) -> float:
        return t.time(allotments[t.id])

    if order is ListOrder.SHELF:
        # Large shelf, then small shelf, then small tasks; longest first in a class
        def key(t):
            return (_shelf_class(t, allotments[t.id], lam, small_fraction), -time(t), t.id)
    elif order is ListOrder.WEIGHTED_LPTF:
        def key(t):
            return (-t.weight / time(t), t.id)
    elif order is ListOrder.SMALLEST_AREA_FIRST:
        def key(t):
            return (t.area(allotments[t.id]), t.id)
    else:
        raise ValueError(f"Unknown list order: {order}")
    return [t.id for t in sorted(instance.tasks, key=key)]


def schedule_list_variant(
    instance: Instance, order: ListOrder, small_fraction: float = 0.25
) -> Schedule:
    """List-schedule with shelf allotments in the variant's order.

    Args:
        instance: Problem instance
        order: List variant
        small_fraction: ShelfOrder small-task threshold as a fraction of lambda

    Returns:
        Valid schedule
    """
    lam, allotments = shelf_allotments(instance)
    ids = list_order(instance, allotments, order, lam, small_fraction)
    return graham_list(instance, allotments, ids)


class ListScheduler(BaseScheduler):
    """List scheduling with shelf allotments and a configurable order."""

    _display_names = {
        ListOrder.SHELF: "List (shelf order)",
        ListOrder.WEIGHTED_LPTF: "List (weighted LPTF)",
        ListOrder.SMALLEST_AREA_FIRST: "List (SAF)",
    }

    def __init__(self, order: ListOrder, small_fraction: float = 0.25):
        """Initialize list scheduler.

        Args:
            order: List variant
            small_fraction: ShelfOrder small-task threshold as a fraction of lambda
        """
        super().__init__(name=f"list-{order.value}", display_name=self._display_names[order])
        self.order = order
        self.small_fraction = small_fraction

    def schedule(self, instance: Instance) -> Schedule:
        return schedule_list_variant(instance, self.order, self.small_fraction)
