"""Doubling batches: grid, merging, knapsack selection, placement, compaction."""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.bounds.cmax import canonical_allotment
from src.model.types import Instance, MoldableTask, Placement, Schedule
from src.scheduling.profile import ProcessorProfile, chain_end

logger = logging.getLogger(__name__)

# Extra doubling steps allowed past t_K before giving up
MAX_EXTRA_BATCHES = 2048


@dataclass(frozen=True)
class BatchGrid:
    """Geometric time grid t_j = cmax_star / 2^(K - j)."""
    cmax_star: float
    t_min: float
    K: int
    boundaries: Tuple[float, ...]

    def horizon(self, j: int) -> float:
        """t_j for any j >= 0, doubling past t_{K+1}."""
        return math.ldexp(self.cmax_star, j - self.K)


@dataclass(frozen=True)
class SingleTask:
    """One task run on its canonical allotment."""
    task_id: int
    allot: int
    duration: float
    weight: float

    @property
    def task_ids(self) -> Tuple[int, ...]:
        return (self.task_id,)

    @property
    def durations(self) -> Tuple[float, ...]:
        return (self.duration,)


@dataclass(frozen=True)
class MergedStack:
    """Small sequential tasks run one after another on a single processor."""
    task_ids: Tuple[int, ...]
    durations: Tuple[float, ...]
    weight: float

    @property
    def allot(self) -> int:
        return 1

    @property
    def duration(self) -> float:
        return chain_end(0.0, self.durations)


BatchEntry = Union[SingleTask, MergedStack]


@dataclass(frozen=True)
class Batch:
    """Entries selected for the window [start, 2 * start)."""
    index: int
    start: float
    entries: Tuple[BatchEntry, ...]

    @property
    def end(self) -> float:
        return 2 * self.start

    @property
    def task_ids(self) -> List[int]:
        return [tid for entry in self.entries for tid in entry.task_ids]


@dataclass(frozen=True)
class KnapsackSelection:
    """Indices of the selected entries and their total weight."""
    indices: Tuple[int, ...]
    weight: float


def build_grid(instance: Instance, cmax_star: float) -> BatchGrid:
    """Build the doubling grid t_0..t_{K+1} for the instance.

    Args:
        instance: Problem instance
        cmax_star: Makespan reference value

    Returns:
        BatchGrid with t_K = cmax_star and t_0 in [t_min, 2 * t_min)

    Raises:
        ValueError: If cmax_star is smaller than the smallest processing time
    """
    t_min = instance.t_min
    if not cmax_star >= t_min:
        raise ValueError(f"cmax_star {cmax_star} is smaller than t_min {t_min}")

    K = max(0, math.floor(math.log2(cmax_star / t_min)))
    # log2 may be off by one near powers of two
    while K > 0 and math.ldexp(cmax_star, -K) < t_min:
        K -= 1
    while math.ldexp(cmax_star, -(K + 1)) >= t_min:
        K += 1

    boundaries = tuple(math.ldexp(cmax_star, j - K) for j in range(K + 2))
    return BatchGrid(cmax_star=cmax_star, t_min=t_min, K=K, boundaries=boundaries)


def merge_small_tasks(
    eligible: Sequence[MoldableTask], batch_length: float
) -> Tuple[List[MergedStack], List[MoldableTask]]:
    """Stack small sequential tasks first-fit by decreasing weight.

    Args:
        eligible: Tasks with p(1) <= batch_length / 2
        batch_length: Stack capacity t_j

    Returns:
        Tuple of stacks and leftover tasks that fit no stack

    Raises:
        ValueError: If a task is not eligible for merging
    """
    for task in eligible:
        if task.time(1) > batch_length / 2:
            raise ValueError(
                f"Task {task.id} is not mergeable: p(1)={task.time(1)} > {batch_length / 2}"
            )

    ordered = sorted(eligible, key=lambda t: (-t.weight, t.id))
    stacks: List[List[MoldableTask]] = []
    # Stack ends chained from batch_length exactly as place_batches computes them
    ends: List[float] = []
    window_end = 2 * batch_length
    leftovers: List[MoldableTask] = []
    for task in ordered:
        p = task.time(1)
        for k, end in enumerate(ends):
            if end + p <= window_end:
                stacks[k].append(task)
                ends[k] = end + p
                break
        else:
            if batch_length + p <= window_end:
                stacks.append([task])
                ends.append(batch_length + p)
            else:
                leftovers.append(task)

    merged = [
        MergedStack(
            task_ids=tuple(t.id for t in members),
            durations=tuple(t.time(1) for t in members),
            weight=math.fsum(t.weight for t in members),
        )
        for members in stacks
    ]
    return merged, leftovers


def knapsack_select(entries: Sequence[Tuple[int, float]], m: int) -> KnapsackSelection:
    """Pick entries of maximum total weight using at most m processors.

    W(i, c) = max(W(i-1, c), W(i-1, c - allot_i) + w_i), with W(0, c) = 0.
    Backtracking prefers leaving an entry out when both branches tie.

    Args:
        entries: (allot, weight) pairs
        m: Processor capacity

    Returns:
        KnapsackSelection with indices in increasing order
    """
    n = len(entries)
    table = np.zeros((n + 1, m + 1))
    for i, (allot, weight) in enumerate(entries, start=1):
        if not 1 <= allot <= m:
            raise ValueError(f"Entry {i - 1}: allotment {allot} outside [1, {m}]")
        prev = table[i - 1]
        row = prev.copy()
        row[allot:] = np.maximum(prev[allot:], prev[: m + 1 - allot] + weight)
        table[i] = row

    chosen = []
    c = m
    for i in range(n, 0, -1):
        if table[i, c] != table[i - 1, c]:
            chosen.append(i - 1)
            c -= entries[i - 1][0]
    chosen.reverse()
    return KnapsackSelection(indices=tuple(chosen), weight=float(table[n, m]))


def _select_batch(entries: List[BatchEntry], m: int) -> List[BatchEntry]:
    selection = knapsack_select([(e.allot, e.weight) for e in entries], m)
    chosen = set(selection.indices)
    used = sum(entries[i].allot for i in chosen)
    # Zero-weight entries never change the optimum; add those that still fit
    for i, entry in enumerate(entries):
        if i not in chosen and entry.weight == 0 and used + entry.allot <= m:
            chosen.add(i)
            used += entry.allot
    return [entries[i] for i in sorted(chosen)]


def build_batches(instance: Instance, grid: BatchGrid) -> List[Batch]:
    """Fill successive batches until every task is placed.

    Batch j admits unscheduled tasks fitting in t_j; small sequential tasks
    are stacked, and a knapsack picks the heaviest content using at most m
    processors. Batches continue doubling past t_K while tasks remain.
    Empty batches are skipped.

    Args:
        instance: Problem instance
        grid: Doubling grid built for the instance

    Returns:
        Nonempty batches in time order
    """
    remaining = {task.id: task for task in sorted(instance.tasks, key=lambda t: t.id)}
    batches: List[Batch] = []
    j = 0
    while remaining:
        if j > grid.K + instance.n + MAX_EXTRA_BATCHES:
            raise RuntimeError(f"{len(remaining)} task(s) could not be batched")
        t_j = grid.horizon(j)
        candidates = [task for task in remaining.values() if task.min_time <= t_j]
        mergeable = [task for task in candidates if task.time(1) <= t_j / 2]
        others = [task for task in candidates if task.time(1) > t_j / 2]

        stacks, leftovers = merge_small_tasks(mergeable, t_j)
        singles: List[BatchEntry] = []
        for task in sorted(others + leftovers, key=lambda t: t.id):
            allot = canonical_allotment(task, t_j)
            assert allot is not None
            singles.append(
                SingleTask(task_id=task.id, allot=allot, duration=task.time(allot), weight=task.weight)
            )

        entries: List[BatchEntry] = [*stacks, *singles]
        if entries:
            selected = _select_batch(entries, instance.m)
            batch = Batch(index=j, start=t_j, entries=tuple(selected))
            for tid in batch.task_ids:
                del remaining[tid]
            batches.append(batch)
            logger.debug(
                f"Batch {j} (t={t_j:.6g}): {len(selected)}/{len(entries)} entries, "
                f"{len(batch.task_ids)} task(s)"
            )
        j += 1

    if j > grid.K + 1:
        logger.debug(f"Batching needed {j - grid.K - 1} extension batch(es) past t_K+1")
    return batches


def place_batches(batches: Sequence[Batch]) -> Schedule:
    """Start every entry of batch j at t_j; stacks run back to back."""
    placements = []
    for batch in batches:
        for entry in batch.entries:
            start = batch.start
            for tid, duration in zip(entry.task_ids, entry.durations):
                placements.append(Placement(task_id=tid, start=start, allot=entry.allot))
                start = start + duration
    return Schedule.from_placements(placements)


def compact(
    instance: Instance, batches: Sequence[Batch], raw: Optional[Schedule] = None
) -> Schedule:
    """List-schedule entries in batch order, longest entry first within a batch.

    Each entry starts at the earliest time its processor count is free given
    the entries placed before it. Allotments are kept.

    Args:
        instance: Problem instance
        batches: Batches in the order to list them
        raw: Batch placement the result is compared against in the log

    Returns:
        Compacted schedule
    """
    profile = ProcessorProfile(instance.m)
    placements = []
    for batch in batches:
        for entry in sorted(batch.entries, key=lambda e: (-e.duration, e.task_ids[0])):
            starts = profile.place(entry.allot, entry.durations)
            placements.extend(
                Placement(task_id=tid, start=s, allot=entry.allot)
                for tid, s in zip(entry.task_ids, starts)
            )
    schedule = Schedule.from_placements(placements)

    if raw is not None and logger.isEnabledFor(logging.DEBUG):
        before = max(raw.completion_times(instance).values())
        after = max(schedule.completion_times(instance).values())
        logger.debug(f"Compaction: makespan {before:.6g} -> {after:.6g}")
    return schedule
