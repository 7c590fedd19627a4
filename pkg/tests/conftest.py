"""Pytest configuration and fixtures."""
import numpy as np
import pytest

from src.config import Config
from src.model.types import Instance
from src.workload.generator import ParallelismModel, SequentialModel, WorkloadSpec, gen_instance

WORKLOAD_MODELS = [
    (SequentialModel.UNIFORM, ParallelismModel.WEAKLY),
    (SequentialModel.UNIFORM, ParallelismModel.HIGHLY),
    (SequentialModel.MIXED, ParallelismModel.MIXED),
    (SequentialModel.MIXED, ParallelismModel.HIGHLY),
]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running sweeps, deselect with -m \"not slow\"")


@pytest.fixture
def app_config():
    """Default configuration with the HiGHS backend for speed."""
    return Config(lp_solver="highs")


@pytest.fixture
def single_task_instance():
    """One task, one processor, p(1)=1, w=1."""
    return Instance.from_profiles(1, [[1.0]], [1.0])


@pytest.fixture
def small_instance():
    """Hand-made monotonic instance on four processors."""
    return Instance.from_profiles(
        4,
        [
            [8.0, 4.5, 3.2, 2.6],
            [3.0, 1.6, 1.2, 1.0],
            [1.0, 0.9, 0.8, 0.8],
            [6.0, 3.0, 2.0, 1.5],
            [0.5, 0.5, 0.5, 0.5],
        ],
        [3.0, 1.0, 7.0, 2.0, 5.0],
    )


def generated(count: int, n_range=(5, 30), m_range=(4, 32), seed: int = 0):
    """Monotonic instances cycling over the four bench workload models."""
    picker = np.random.default_rng(seed)
    instances = []
    for i in range(count):
        seq, par = WORKLOAD_MODELS[i % len(WORKLOAD_MODELS)]
        spec = WorkloadSpec(
            n=int(picker.integers(n_range[0], n_range[1] + 1)),
            m=int(picker.integers(m_range[0], m_range[1] + 1)),
            seq_model=seq,
            par_model=par,
            seed=seed * 100003 + i,
        )
        instances.append(gen_instance(spec))
    return instances


def arbitrary(count: int, n_range=(2, 12), m_range=(1, 8), seed: int = 0):
    """Instances with arbitrary, usually non-monotonic, profiles."""
    rng = np.random.default_rng(seed)
    instances = []
    for _ in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        profiles = rng.uniform(0.1, 10.0, size=(n, m))
        weights = rng.integers(0, 10, size=n).astype(float)
        instances.append(Instance.from_profiles(m, profiles.tolist(), weights.tolist()))
    return instances


@pytest.fixture
def generated_instances():
    return generated(40)


@pytest.fixture
def arbitrary_instances():
    return arbitrary(40)
