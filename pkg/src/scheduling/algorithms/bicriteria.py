"""Bicriteria doubling-batch scheduler."""
import logging
import math

from src.bounds.cmax import cmax_lower_bound
from src.model.types import Instance, Schedule
from src.model.validation import evaluate
from src.scheduling.base import BaseScheduler
from src.scheduling.batches import build_batches, build_grid, compact, place_batches
from src.workload.rng import RandomStream

logger = logging.getLogger(__name__)


def _ratio(value: float, base: float) -> float:
    if base == 0:
        return 1.0 if value == 0 else math.inf
    return value / base


def schedule_bicriteria(
    instance: Instance,
    shuffle_rounds: int = 10,
    seed: int = 0,
    cmax_scale: float = 1.0,
) -> Schedule:
    """Schedule with doubling batches, compaction and batch-order shuffling.

    The compacted schedule in natural batch order is the base. Each round
    lists the batches in a random order and recompacts; the schedule with
    the lowest makespan/base_makespan + minsum/base_minsum is kept, so the
    base itself scores 2.

    Args:
        instance: Problem instance
        shuffle_rounds: Number of random batch orders to try
        seed: Seed of the shuffling stream
        cmax_scale: Multiplier applied to the makespan lower bound

    Returns:
        Best compacted schedule found
    """
    if shuffle_rounds < 0:
        raise ValueError(f"shuffle_rounds must be >= 0, got {shuffle_rounds}")

    bound = cmax_lower_bound(instance)
    cmax_star = cmax_scale * bound.value
    if cmax_star < instance.t_min:
        logger.warning(
            f"Scaled cmax {cmax_star:.6g} below t_min {instance.t_min:.6g}; clamping"
        )
        cmax_star = instance.t_min

    grid = build_grid(instance, cmax_star)
    batches = build_batches(instance, grid)
    raw = place_batches(batches)
    best = compact(instance, batches, raw)
    if shuffle_rounds == 0 or len(batches) < 2:
        return best

    base_makespan, base_minsum = evaluate(instance, best)
    best_score = 2.0
    rng = RandomStream(seed)
    for round_no in range(shuffle_rounds):
        order = rng.permutation(len(batches))
        candidate = compact(instance, [batches[i] for i in order])
        makespan, minsum = evaluate(instance, candidate)
        score = _ratio(makespan, base_makespan) + _ratio(minsum, base_minsum)
        if score < best_score:
            logger.debug(f"Shuffle round {round_no}: score {score:.6f} improves {best_score:.6f}")
            best, best_score = candidate, score
    return best


class BicriteriaScheduler(BaseScheduler):
    """Doubling-batch scheduler targeting makespan and minsum together."""

    def __init__(self, shuffle_rounds: int = 10, cmax_scale: float = 1.0, seed: int = 0):
        """Initialize bicriteria scheduler.

        Args:
            shuffle_rounds: Random batch orders to try after compaction
            cmax_scale: Multiplier on the makespan lower bound sizing the grid
            seed: Seed of the shuffling stream
        """
        super().__init__(name="bicriteria", display_name="Bicriteria")
        self.shuffle_rounds = shuffle_rounds
        self.cmax_scale = cmax_scale
        self.seed = seed

    def schedule(self, instance: Instance) -> Schedule:
        return schedule_bicriteria(
            instance,
            shuffle_rounds=self.shuffle_rounds,
            seed=self.seed,
            cmax_scale=self.cmax_scale,
        )
