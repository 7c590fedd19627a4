"""Sequential largest-processing-time-first list scheduling."""
from src.model.types import Instance, Schedule
from src.scheduling.algorithms.list_graham import graham_list
from src.scheduling.base import BaseScheduler


def schedule_sequential_lptf(instance: Instance) -> Schedule:
    """One processor per task, listed by decreasing p_i(1)."""
    allotments = {task.id: 1 for task in instance.tasks}
    order = [t.id for t in sorted(instance.tasks, key=lambda t: (-t.time(1), t.id))]
    return graham_list(instance, allotments, order)


class SequentialScheduler(BaseScheduler):
    """Sequential LPTF scheduler."""

    def __init__(self):
        super().__init__(name="seq-lptf", display_name="Sequential LPTF")

    def schedule(self, instance: Instance) -> Schedule:
        return schedule_sequential_lptf(instance)
