"""Workload sources addressed by tag."""
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List

from src.model.io import read_instance
from src.model.types import Instance
from src.workload.generator import (
    ParallelismModel,
    SequentialModel,
    WeightModel,
    WorkloadSpec,
    gen_instance,
)

logger = logging.getLogger(__name__)

FILE_PREFIX = "file:"
UNIT_SUFFIX = "+unit"


class BaseWorkloadSource(ABC):
    """Base class for instance sources used by the bench."""

    def __init__(self, tag: str):
        """Initialize the source.

        Args:
            tag: Tag the source was created from
        """
        self.tag = tag

    @abstractmethod
    def instance(self, n: int, m: int, seed: int, run: int) -> Instance:
        """Produce the instance of one experiment run.

        Args:
            n: Task count
            m: Processor count
            seed: Seed derived for this run
            run: Run index within the point

        Returns:
            Instance with n tasks on m processors
        """
        pass

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(tag='{self.tag}')"


class SyntheticWorkload(BaseWorkloadSource):
    """Generated workload for one sequential and one parallelism model."""

    def __init__(
        self,
        tag: str,
        seq_model: SequentialModel,
        par_model: ParallelismModel,
        weight_model: WeightModel = WeightModel.UNIFORM,
        min_seq_time: float = 0.01,
    ):
        super().__init__(tag)
        self.seq_model = seq_model
        self.par_model = par_model
        self.weight_model = weight_model
        self.min_seq_time = min_seq_time

    def instance(self, n: int, m: int, seed: int, run: int) -> Instance:
        spec = WorkloadSpec(
            n=n,
            m=m,
            seq_model=self.seq_model,
            par_model=self.par_model,
            weight_model=self.weight_model,
            seed=seed,
            min_seq_time=self.min_seq_time,
        )
        return gen_instance(spec)


class FileWorkload(BaseWorkloadSource):
    """Instance files from a directory, selected by task count.

    Run r of a point uses the r-th matching file in name order, cycling when
    there are fewer files than runs. The seed is ignored.
    """

    def __init__(self, tag: str, directory: Path):
        super().__init__(tag)
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise ValueError(f"Workload directory not found: {self.directory}")
        self._by_n: Dict[int, List[Path]] = {}

    def _files_for(self, n: int) -> List[Path]:
        if not self._by_n:
            for path in sorted(p for p in self.directory.iterdir() if p.is_file()):
                self._by_n.setdefault(read_instance(path).n, []).append(path)
            logger.info(f"Indexed {sum(map(len, self._by_n.values()))} instance files in {self.directory}")
        return self._by_n.get(n, [])

    def instance(self, n: int, m: int, seed: int, run: int) -> Instance:
        files = self._files_for(n)
        if not files:
            raise ValueError(f"No instance with n={n} in {self.directory}")
        path = files[run % len(files)]
        instance = read_instance(path)
        if instance.m != m:
            raise ValueError(f"{path}: instance has m={instance.m}, expected m={m}")
        return instance


class WorkloadFactory:
    """Factory for creating workload sources from tags.

    Tags are ``<seq>-<par>`` with an optional ``+unit`` suffix for unit
    weights (e.g. ``mixed-high``, ``uniform-weak+unit``) or ``file:<DIR>``.
    """

    @classmethod
    def create(cls, tag: str, min_seq_time: float = 0.01) -> BaseWorkloadSource:
        """Create a workload source.

        Args:
            tag: Workload tag
            min_seq_time: Positivity floor of the mixed sequential model

        Returns:
            Workload source

        Raises:
            ValueError: If the tag is not recognized
        """
        if tag.startswith(FILE_PREFIX):
            return FileWorkload(tag, Path(tag[len(FILE_PREFIX):]))

        body = tag.lower()
        weight_model = WeightModel.UNIFORM
        if body.endswith(UNIT_SUFFIX):
            body = body[: -len(UNIT_SUFFIX)]
            weight_model = WeightModel.UNIT

        seq_name, _, par_name = body.partition("-")
        try:
            seq_model = SequentialModel(seq_name)
            par_model = ParallelismModel(par_name)
        except ValueError:
            available = ", ".join(cls.get_available_workloads())
            raise ValueError(
                f"Unsupported workload: {tag}. "
                f"Available workloads: {available}, optionally with {UNIT_SUFFIX}, "
                f"or {FILE_PREFIX}<DIR>"
            )
        logger.debug(f"Creating workload source: {tag}")
        return SyntheticWorkload(tag, seq_model, par_model, weight_model, min_seq_time)

    @classmethod
    def get_default_workloads(cls) -> List[str]:
        """Workloads swept by a default experiment."""
        return ["uniform-weak", "uniform-high", "mixed-mixed", "mixed-high"]

    @classmethod
    def get_available_workloads(cls) -> List[str]:
        """Get list of synthetic workload tags."""
        return [f"{s.value}-{p.value}" for s in SequentialModel for p in ParallelismModel]
