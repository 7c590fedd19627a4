"""Schedule validation and objective evaluation."""
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Tuple

from src.model.types import Instance, Schedule

logger = logging.getLogger(__name__)


@dataclass
class ValidationReport:
    """Outcome of a schedule check: ok when no violation was found."""
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class InvalidScheduleError(ValueError):
    """Raised when an objective is requested for an invalid schedule."""

    def __init__(self, violations: List[str]):
        self.violations = violations
        super().__init__("Invalid schedule: " + "; ".join(violations))


def validate_schedule(instance: Instance, schedule: Schedule) -> ValidationReport:
    """Check placement coverage and resource feasibility.

    Resource usage only changes at start and completion events, so the sweep
    visits the sorted events, releasing processors before acquiring them at
    equal times because execution intervals are half-open.

    Args:
        instance: Problem instance
        schedule: Schedule to check

    Returns:
        ValidationReport listing every violation found
    """
    report = ValidationReport()
    tasks = instance.task_by_id

    counts = Counter(p.task_id for p in schedule.placements)
    for task_id, count in sorted(counts.items()):
        if task_id not in tasks:
            report.violations.append(f"placement for unknown task {task_id}")
        elif count > 1:
            report.violations.append(f"task {task_id} placed {count} times")
    for task_id in sorted(tasks):
        if task_id not in counts:
            report.violations.append(f"task {task_id} has no placement")

    events: List[Tuple[float, int, int]] = []
    for p in schedule.placements:
        if p.task_id not in tasks:
            continue
        if not 1 <= p.allot <= instance.m:
            report.violations.append(
                f"task {p.task_id}: allotment {p.allot} outside [1, {instance.m}]"
            )
            continue
        if not math.isfinite(p.start) or p.start < 0:
            report.violations.append(f"task {p.task_id}: invalid start time {p.start}")
            continue
        end = p.start + tasks[p.task_id].time(p.allot)
        # Releases (0) sort before acquisitions (1) at equal times
        events.append((p.start, 1, p.allot))
        events.append((end, 0, -p.allot))

    usage = 0
    for time, _, delta in sorted(events):
        usage += delta
        if usage > instance.m:
            report.violations.append(
                f"resource overflow at t={time!r}: usage {usage} > m={instance.m}"
            )
            break

    if not report.ok:
        logger.debug(f"Schedule rejected with {len(report.violations)} violation(s)")
    return report


def evaluate(instance: Instance, schedule: Schedule) -> Tuple[float, float]:
    """Compute (makespan, weighted sum of completion times).

    Args:
        instance: Problem instance
        schedule: Valid schedule

    Returns:
        Tuple of makespan and minsum

    Raises:
        InvalidScheduleError: If the schedule is not valid
    """
    report = validate_schedule(instance, schedule)
    if not report.ok:
        raise InvalidScheduleError(report.violations)

    tasks = instance.task_by_id
    completions = schedule.completion_times(instance)
    makespan = max(completions.values())
    # fsum is exactly rounded, hence independent of placement order
    minsum = math.fsum(tasks[i].weight * c for i, c in completions.items())
    return makespan, minsum
