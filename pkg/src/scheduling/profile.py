"""Processor usage profile for count-based list scheduling."""
import logging
from bisect import bisect_left
from typing import List, Sequence

logger = logging.getLogger(__name__)


def chain_end(start: float, durations: Sequence[float]) -> float:
    """End of pieces run back to back from start.

    Summed piece by piece, the same way each piece's completion time is
    computed, so the end matches the last completion bit for bit.
    """
    end = start
    for d in durations:
        end = end + d
    return end


class ProcessorProfile:
    """Step function of busy processor counts over time.

    Segment ``k`` covers ``[times[k], times[k + 1])``; the last segment runs
    to infinity and is always idle.
    """

    def __init__(self, m: int):
        """Initialize an idle profile.

        Args:
            m: Number of processors
        """
        self.m = m
        self._times: List[float] = [0.0]
        self._usage: List[int] = [0]

    def earliest_start(self, allot: int, durations: Sequence[float]) -> float:
        """Earliest time allot processors stay free for the chained durations.

        Args:
            allot: Processor count required throughout
            durations: Pieces run back to back on those processors

        Returns:
            Earliest feasible start time
        """
        if not 1 <= allot <= self.m:
            raise ValueError(f"Allotment {allot} outside [1, {self.m}]")
        limit = self.m - allot
        times, usage = self._times, self._usage
        k = 0
        while True:
            if usage[k] > limit:
                k += 1
                continue
            start = times[k]
            end = chain_end(start, durations)
            j = k
            blocked = False
            while j + 1 < len(times) and times[j + 1] < end:
                j += 1
                if usage[j] > limit:
                    blocked = True
                    break
            if not blocked:
                return start
            k = j + 1

    def _split(self, t: float) -> int:
        i = bisect_left(self._times, t)
        if i < len(self._times) and self._times[i] == t:
            return i
        self._times.insert(i, t)
        self._usage.insert(i, self._usage[i - 1])
        return i

    def reserve(self, start: float, allot: int, durations: Sequence[float]) -> List[float]:
        """Occupy allot processors for the chained pieces starting at start.

        Returns:
            Start time of every piece
        """
        starts = []
        t = start
        for d in durations:
            starts.append(t)
            end = t + d
            i = self._split(t)
            j = self._split(end)
            for idx in range(i, j):
                self._usage[idx] += allot
                if self._usage[idx] > self.m:
                    raise RuntimeError(f"Processor overflow at t={self._times[idx]!r}")
            t = end
        return starts

    def place(self, allot: int, durations: Sequence[float]) -> List[float]:
        """Reserve at the earliest feasible start; returns the piece starts."""
        start = self.earliest_start(allot, durations)
        return self.reserve(start, allot, durations)
