"""DTO classes for experiments and their results."""
from pathlib import Path
from typing import List, Optional, Union

from dotenv import dotenv_values
from pydantic import BaseModel, Field, field_validator

from src.config import LP_SOLVERS


class ExperimentConfig(BaseModel):
    """Sweep over workloads, task counts and algorithms.

    File form (dotenv syntax, every key optional)::

        M=200
        TASK_COUNTS=25,50,100,200,400
        RUNS_PER_POINT=40
        WORKLOADS=uniform-weak,uniform-high,mixed-mixed,mixed-high
        ALGORITHMS=bicriteria,gang,seq-lptf,list-shelf,list-wlptf,list-saf
        BASE_SEED=0
        SHUFFLES=10
        LP_SOLVER=highs
        RECORD_TIMINGS=false
    """
    m: int = Field(default=200, ge=1)
    task_counts: List[int] = Field(default_factory=lambda: [25, 50, 100, 200, 400], min_length=1)
    runs_per_point: int = Field(default=40, ge=1)
    workloads: List[str] = Field(
        default_factory=lambda: ["uniform-weak", "uniform-high", "mixed-mixed", "mixed-high"],
        min_length=1,
    )
    algorithms: List[str] = Field(
        default_factory=lambda: [
            "bicriteria", "gang", "seq-lptf", "list-shelf", "list-wlptf", "list-saf",
        ],
        min_length=1,
    )
    base_seed: int = Field(default=0, ge=0)
    shuffles: int = Field(default=10, ge=0)
    lp_solver: str = "highs"
    record_timings: bool = False

    @field_validator("task_counts", "workloads", "algorithms", mode="before")
    @classmethod
    def split_lists(cls, value):
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @field_validator("task_counts")
    @classmethod
    def check_task_counts(cls, value: List[int]) -> List[int]:
        for n in value:
            if n < 1:
                raise ValueError(f"Task counts must be >= 1, got {n}")
        return value

    @field_validator("lp_solver")
    @classmethod
    def check_lp_solver(cls, value: str) -> str:
        value = value.lower()
        if value not in LP_SOLVERS:
            raise ValueError(f"LP solver must be one of: {', '.join(LP_SOLVERS)}")
        return value

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """Load a config file.

        Raises:
            ValueError: If the file is missing, has an unknown key or an invalid value
        """
        path = Path(path)
        if not path.is_file():
            raise ValueError(f"Experiment config not found: {path}")
        raw = dotenv_values(path)
        known = {name.upper(): name for name in cls.model_fields}
        values = {}
        for key, value in raw.items():
            if key.upper() not in known:
                raise ValueError(f"{path}: unknown key {key!r}")
            if value is not None:
                values[known[key.upper()]] = value
        return cls(**values)


class ResultRow(BaseModel):
    """Outcome of one algorithm on one generated instance."""
    workload: str
    n: int
    algorithm: str
    run: int
    seed: int
    makespan: Optional[float] = None
    minsum: Optional[float] = None
    cmax_bound: Optional[float] = None
    minsum_bound: Optional[float] = None
    runtime_seconds: float = 0.0
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class RatioSummary(BaseModel):
    """Per-run ratio extremes and ratio-of-sums average for one point."""
    workload: str
    n: int
    algorithm: str
    runs: int
    cmax_min: float
    cmax_avg: float
    cmax_max: float
    minsum_min: float
    minsum_avg: float
    minsum_max: float
    runtime_avg: float
