"""Application configuration."""
import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

LP_SOLVERS = ("simplex", "highs")


def check_log_level(name: str, value: str) -> str:
    """Return the upper-cased level, or raise ValueError naming its source."""
    level = value.upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ValueError(f"{name} must be a logging level such as INFO or DEBUG, got {value!r}")
    return level


def _env_int(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


@dataclass
class Config:
    """Application configuration."""

    log_level: str = "INFO"

    # Bicriteria scheduler
    shuffle_rounds: int = 10
    cmax_scale: float = 1.0

    # List baselines: ShelfOrder small class is p_i(1) <= fraction * lambda
    small_task_fraction: float = 0.25

    # Workload generator positivity floor
    min_seq_time: float = 0.01

    # LP lower bound
    lp_solver: str = "simplex"
    lp_tolerance: float = 1e-7
    lp_iteration_factor: int = 50

    # Bench worker processes
    jobs: int = 1

    @classmethod
    def from_env(cls) -> "Config":
        """Create config from environment variables.

        Returns:
            Config instance

        Raises:
            ValueError: If an environment variable holds an invalid value
        """
        log_level = check_log_level(
            "MOLDSCHED_LOG_LEVEL", os.getenv("MOLDSCHED_LOG_LEVEL") or "INFO"
        )

        lp_solver = os.getenv("MOLDSCHED_LP_SOLVER", "simplex").lower()
        if lp_solver not in LP_SOLVERS:
            available = ", ".join(LP_SOLVERS)
            raise ValueError(
                f"MOLDSCHED_LP_SOLVER must be one of: {available}, got {lp_solver!r}"
            )

        return cls(
            log_level=log_level,
            shuffle_rounds=_env_int("MOLDSCHED_SHUFFLES", 10, minimum=0),
            cmax_scale=_env_float("MOLDSCHED_CMAX_SCALE", 1.0),
            small_task_fraction=_env_float("MOLDSCHED_SMALL_TASK_FRACTION", 0.25),
            min_seq_time=_env_float("MOLDSCHED_MIN_SEQ_TIME", 0.01),
            lp_solver=lp_solver,
            lp_tolerance=_env_float("MOLDSCHED_LP_TOLERANCE", 1e-7),
            lp_iteration_factor=_env_int("MOLDSCHED_LP_ITERATION_FACTOR", 50, minimum=1),
            jobs=_env_int("MOLDSCHED_JOBS", 1, minimum=1),
        )
