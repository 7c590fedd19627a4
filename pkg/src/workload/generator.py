"""Synthetic moldable workloads.

Sequential times follow a uniform or a two-component gaussian model; the
remaining profile entries follow the speedup recurrence

    p(j) = p(j - 1) * (X + j) / (1 + j),   X in [0, 1]

which keeps time nonincreasing and work nondecreasing in j.
"""
import logging
from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, Field

from src.model.types import Instance
from src.workload.rng import RandomStream

logger = logging.getLogger(__name__)

SMALL = "small"
LARGE = "large"

# Uniform model: p(1) in [1, 10], small below the midpoint
UNIFORM_LOW = 1.0
UNIFORM_HIGH = 10.0
UNIFORM_SMALL_BELOW = 5.5

# Mixed model components (mean, std) and small-task probability
SMALL_COMPONENT = (1.0, 0.5)
LARGE_COMPONENT = (10.0, 5.0)
SMALL_PROBABILITY = 0.7

# Speedup variable X per parallelism model (mean, std), truncated to [0, 1]
HIGHLY_X = (0.9, 0.2)
WEAKLY_X = (0.1, 0.2)

WEIGHT_LOW = 1.0
WEIGHT_HIGH = 10.0


class SequentialModel(str, Enum):
    """Distribution of sequential processing times."""
    UNIFORM = "uniform"
    MIXED = "mixed"


class ParallelismModel(str, Enum):
    """Distribution of the speedup variable."""
    HIGHLY = "high"
    WEAKLY = "weak"
    MIXED = "mixed"


class WeightModel(str, Enum):
    """Distribution of task weights."""
    UNIFORM = "uniform"
    UNIT = "unit"


class WorkloadSpec(BaseModel):
    """Parameters of one generated instance."""
    n: int = Field(ge=1)
    m: int = Field(ge=1)
    seq_model: SequentialModel
    par_model: ParallelismModel
    weight_model: WeightModel = WeightModel.UNIFORM
    seed: int = Field(ge=0)
    min_seq_time: float = Field(default=0.01, ge=0)


def gen_sequential(spec: WorkloadSpec, rng: RandomStream) -> List[Tuple[float, str]]:
    """Draw p(1) and a size class for each of spec.n tasks.

    Mixed draws at or below spec.min_seq_time are redrawn from the same
    component, so the class of a task is the component it came from.

    Args:
        spec: Workload parameters
        rng: Random stream

    Returns:
        List of (p1, class) pairs with class "small" or "large"
    """
    draws = []
    for _ in range(spec.n):
        if spec.seq_model == SequentialModel.UNIFORM:
            p1 = rng.uniform_range(UNIFORM_LOW, UNIFORM_HIGH)
            draws.append((p1, SMALL if p1 < UNIFORM_SMALL_BELOW else LARGE))
            continue
        size = SMALL if rng.uniform() < SMALL_PROBABILITY else LARGE
        mean, std = SMALL_COMPONENT if size == SMALL else LARGE_COMPONENT
        p1 = rng.gaussian(mean, std)
        while p1 <= spec.min_seq_time:
            p1 = rng.gaussian(mean, std)
        draws.append((p1, size))
    return draws


def draw_speedup(speedup: ParallelismModel, rng: RandomStream) -> float:
    """Truncated gaussian X in [0, 1] for the HIGHLY or WEAKLY model."""
    if speedup == ParallelismModel.HIGHLY:
        mean, std = HIGHLY_X
    elif speedup == ParallelismModel.WEAKLY:
        mean, std = WEAKLY_X
    else:
        raise ValueError(f"Speedup model must be high or weak, got {speedup.value}")
    x = rng.gaussian(mean, std)
    while x < 0.0 or x > 1.0:
        x = rng.gaussian(mean, std)
    return x


def extend_profile(
    p1: float, speedup: ParallelismModel, m: int, rng: RandomStream
) -> Tuple[float, ...]:
    """Extend a sequential time to a full profile p(1..m).

    Args:
        p1: Sequential processing time, > 0
        speedup: HIGHLY or WEAKLY
        m: Processor count
        rng: Random stream

    Returns:
        Tuple of m processing times
    """
    if not p1 > 0:
        raise ValueError(f"Sequential time must be positive, got {p1}")
    if m < 1:
        raise ValueError(f"Processor count must be >= 1, got {m}")
    profile = [p1]
    for j in range(2, m + 1):
        x = draw_speedup(speedup, rng)
        profile.append(profile[-1] * (x + j) / (1 + j))
    return tuple(profile)


def speedup_for(spec: WorkloadSpec, size: str) -> ParallelismModel:
    """Speedup model of a task; MIXED maps small to WEAKLY and large to HIGHLY."""
    if spec.par_model != ParallelismModel.MIXED:
        return spec.par_model
    return ParallelismModel.WEAKLY if size == SMALL else ParallelismModel.HIGHLY


def gen_instance(spec: WorkloadSpec) -> Instance:
    """Generate a weighted instance, deterministic in spec.seed.

    All sequential times are drawn first, then profiles in task order, then
    weights.
    """
    rng = RandomStream(spec.seed)
    sequential = gen_sequential(spec, rng)
    profiles = [extend_profile(p1, speedup_for(spec, size), spec.m, rng) for p1, size in sequential]
    if spec.weight_model == WeightModel.UNIT:
        weights = [1.0] * spec.n
    else:
        weights = [rng.uniform_range(WEIGHT_LOW, WEIGHT_HIGH) for _ in range(spec.n)]

    logger.debug(
        f"Generated {spec.seq_model.value}-{spec.par_model.value} instance "
        f"n={spec.n} m={spec.m} seed={spec.seed}"
    )
    return Instance.from_profiles(spec.m, profiles, weights)
