"""Type definitions and dataclasses for the scheduling model."""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

# Relative slack used when checking monotonicity of generated profiles
MONOTONIC_RTOL = 1e-12


@dataclass(frozen=True)
class MoldableTask:
    """A task with a weight and a processing time for every processor count.

    ``profile[k - 1]`` is the processing time on ``k`` processors.
    """
    id: int
    weight: float
    profile: Tuple[float, ...]

    def __post_init__(self):
        if not math.isfinite(self.weight) or self.weight < 0:
            raise ValueError(f"Task {self.id}: weight must be finite and >= 0, got {self.weight}")
        if len(self.profile) == 0:
            raise ValueError(f"Task {self.id}: empty processing-time profile")
        for k, p in enumerate(self.profile, start=1):
            if not math.isfinite(p) or p <= 0:
                raise ValueError(f"Task {self.id}: p({k}) must be finite and > 0, got {p}")

    def time(self, allot: int) -> float:
        """Processing time on ``allot`` processors."""
        return self.profile[allot - 1]

    def area(self, allot: int) -> float:
        """Processors times processing time on ``allot`` processors."""
        return allot * self.profile[allot - 1]

    @property
    def min_time(self) -> float:
        return min(self.profile)

    def is_monotonic(self) -> bool:
        """Check that time is nonincreasing and work nondecreasing in k."""
        for k in range(1, len(self.profile)):
            prev, cur = self.profile[k - 1], self.profile[k]
            if cur > prev * (1 + MONOTONIC_RTOL):
                return False
            if (k + 1) * cur < k * prev * (1 - MONOTONIC_RTOL):
                return False
        return True


@dataclass(frozen=True)
class Instance:
    """A processor count and the tasks to schedule on it."""
    m: int
    tasks: Tuple[MoldableTask, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"Processor count must be >= 1, got {self.m}")
        if len(self.tasks) < 1:
            raise ValueError("Instance must contain at least one task")
        seen = set()
        for task in self.tasks:
            if task.id in seen:
                raise ValueError(f"Duplicate task id: {task.id}")
            seen.add(task.id)
            if len(task.profile) != self.m:
                raise ValueError(
                    f"Task {task.id}: profile has {len(task.profile)} entries, expected m={self.m}"
                )

    @classmethod
    def from_profiles(
        cls,
        m: int,
        profiles: Sequence[Sequence[float]],
        weights: Optional[Sequence[float]] = None,
    ) -> "Instance":
        """Build an instance with dense ids 0..n-1.

        Args:
            m: Processor count
            profiles: One processing-time profile per task
            weights: Task weights (defaults to 1 for every task)

        Returns:
            Instance
        """
        if weights is None:
            weights = [1.0] * len(profiles)
        if len(weights) != len(profiles):
            raise ValueError("profiles and weights must have the same length")
        tasks = tuple(
            MoldableTask(id=i, weight=float(w), profile=tuple(float(p) for p in profile))
            for i, (w, profile) in enumerate(zip(weights, profiles))
        )
        return cls(m=m, tasks=tasks)

    @property
    def n(self) -> int:
        return len(self.tasks)

    @cached_property
    def task_by_id(self) -> Dict[int, MoldableTask]:
        return {task.id: task for task in self.tasks}

    @cached_property
    def times(self) -> np.ndarray:
        """Processing-time matrix of shape (n, m), rows in task order."""
        return np.array([task.profile for task in self.tasks], dtype=float)

    @cached_property
    def areas(self) -> np.ndarray:
        """Area matrix k * p_i(k) of shape (n, m)."""
        return self.times * np.arange(1, self.m + 1, dtype=float)

    @property
    def t_min(self) -> float:
        """Smallest processing time over all tasks and allotments."""
        return float(self.times.min())

    def is_monotonic(self) -> bool:
        return all(task.is_monotonic() for task in self.tasks)

    def scaled(self, factor: float) -> "Instance":
        """Copy of the instance with every processing time multiplied by factor."""
        return Instance(
            m=self.m,
            tasks=tuple(
                MoldableTask(id=t.id, weight=t.weight, profile=tuple(p * factor for p in t.profile))
                for t in self.tasks
            ),
        )


@dataclass(frozen=True)
class Placement:
    """Start time and processor count assigned to one task."""
    task_id: int
    start: float
    allot: int


@dataclass(frozen=True)
class Schedule:
    """One placement per task; completion times derive from the instance."""
    placements: Tuple[Placement, ...]

    @classmethod
    def from_placements(cls, placements: Sequence[Placement]) -> "Schedule":
        """Build a schedule with placements sorted by task id."""
        return cls(placements=tuple(sorted(placements, key=lambda p: p.task_id)))

    def by_task(self) -> Dict[int, Placement]:
        return {p.task_id: p for p in self.placements}

    def completion_times(self, instance: Instance) -> Dict[int, float]:
        """Completion time C_i = start + p_i(allot) for each placement."""
        tasks = instance.task_by_id
        return {p.task_id: p.start + tasks[p.task_id].time(p.allot) for p in self.placements}
