"""Gang scheduling: every task on all processors, one after another."""
from src.model.types import Instance, Placement, Schedule
from src.scheduling.base import BaseScheduler


def schedule_gang(instance: Instance) -> Schedule:
    """Run tasks back to back on m processors by decreasing w_i / p_i(m)."""
    m = instance.m
    order = sorted(instance.tasks, key=lambda t: (-t.weight / t.time(m), t.id))
    placements = []
    start = 0.0
    for task in order:
        placements.append(Placement(task_id=task.id, start=start, allot=m))
        start = start + task.time(m)
    return Schedule.from_placements(placements)


class GangScheduler(BaseScheduler):
    """Gang scheduler."""

    def __init__(self):
        super().__init__(name="gang", display_name="Gang")

    def schedule(self, instance: Instance) -> Schedule:
        return schedule_gang(instance)
