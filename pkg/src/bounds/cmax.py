"""Certified makespan lower bound and canonical allotments."""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.model.types import Instance, MoldableTask

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CmaxBound:
    """Makespan lower bound with the canonical allotment of every task at it.

    ``canonical_allotments`` follows the task order of the instance.
    """
    value: float
    canonical_allotments: Tuple[int, ...]


def canonical_allotment(task: MoldableTask, deadline: float) -> Optional[int]:
    """Smallest processor count whose processing time fits in deadline.

    Args:
        task: Moldable task
        deadline: Positive length to fit into

    Returns:
        min{k : p(k) <= deadline}, or None if no allotment fits
    """
    for k, p in enumerate(task.profile, start=1):
        if p <= deadline:
            return k
    return None


def canonical_allotments(instance: Instance, deadline: float) -> np.ndarray:
    """Vectorised canonical_allotment over all tasks; 0 marks no fit."""
    fits = instance.times <= deadline
    allot = fits.argmax(axis=1) + 1
    allot[~fits.any(axis=1)] = 0
    return allot


def minimal_work(instance: Instance, deadline: float) -> float:
    """Sum over tasks of the smallest area among allotments fitting deadline.

    Returns +inf when some task has no allotment fitting the deadline.
    """
    areas = np.where(instance.times <= deadline, instance.areas, np.inf)
    return float(areas.min(axis=1).sum())


def is_feasible_deadline(instance: Instance, deadline: float) -> bool:
    """Necessary condition for a schedule of length deadline to exist."""
    return minimal_work(instance, deadline) <= instance.m * deadline


def cmax_lower_bound(instance: Instance) -> CmaxBound:
    """Smallest deadline passing both the length and the surface test.

    The minimal work is a step function changing only at profile values, so
    the smallest feasible deadline is either a profile value or the work
    ratio W/m reached between two consecutive values. A binary search over
    the sorted profile values finds the first feasible one; the ratio of the
    preceding step is then checked.

    Args:
        instance: Problem instance

    Returns:
        CmaxBound never larger than the optimal makespan
    """
    values = np.unique(instance.times)
    length_bound = float(instance.times.min(axis=1).max())
    lo = int(np.searchsorted(values, length_bound))
    hi = len(values) - 1
    m = instance.m

    if not is_feasible_deadline(instance, float(values[hi])):
        # Past the largest value the work is constant
        value = minimal_work(instance, float(values[hi])) / m
    else:
        while lo < hi:
            mid = (lo + hi) // 2
            if is_feasible_deadline(instance, float(values[mid])):
                hi = mid
            else:
                lo = mid + 1
        first = lo
        value = float(values[first])
        if first > 0 and values[first - 1] >= length_bound:
            ratio = minimal_work(instance, float(values[first - 1])) / m
            if ratio < value:
                value = max(ratio, float(values[first - 1]))

    allots = canonical_allotments(instance, value)
    if not math.isfinite(value) or (allots == 0).any():
        raise RuntimeError(f"Cmax bound computation produced an unusable value {value}")
    logger.debug(f"Cmax lower bound {value:.6g} (length bound {length_bound:.6g})")
    return CmaxBound(value=value, canonical_allotments=tuple(int(k) for k in allots))
