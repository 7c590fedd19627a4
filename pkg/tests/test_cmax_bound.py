"""Tests for the makespan lower bound."""
import numpy as np
import pytest

from src.bounds.cmax import (
    canonical_allotment,
    canonical_allotments,
    cmax_lower_bound,
    is_feasible_deadline,
    minimal_work,
)
from src.model.types import Instance, MoldableTask
from tests.conftest import arbitrary, generated


@pytest.mark.parametrize("profile, deadline, expected", [
    ((10.0, 6.0, 4.0), 6.0, 2),
    ((10.0, 6.0, 4.0), 3.0, None),
    ((5.0, 5.0, 5.0), 5.0, 1),
    ((4.0, 6.0, 3.0), 3.5, 3),
])
def test_canonical_allotment(profile, deadline, expected):
    """Test the canonical allotment of a task."""
    task = MoldableTask(id=0, weight=1.0, profile=profile)
    assert canonical_allotment(task, deadline) == expected


def test_canonical_allotments_vectorised(small_instance):
    """Test canonical allotments for a whole instance."""
    for deadline in [0.4, 0.5, 1.0, 2.0, 3.0, 9.0]:
        expected = [canonical_allotment(t, deadline) or 0 for t in small_instance.tasks]
        assert canonical_allotments(small_instance, deadline).tolist() == expected


@pytest.mark.parametrize("m, profiles, expected", [
    (1, [[4.0]], 4.0),
    (1, [[4.0], [4.0]], 8.0),
    (2, [[4.0, 2.0], [4.0, 2.0]], 4.0),
    # work bound between two profile values: W = 3 + 3 + 3 on 2 processors
    (2, [[3.0, 2.0], [3.0, 2.0], [3.0, 2.0]], 4.5),
])
def test_cmax_lower_bound_examples(m, profiles, expected):
    """Test the makespan bound on hand-checked instances."""
    bound = cmax_lower_bound(Instance.from_profiles(m, profiles))
    assert bound.value == pytest.approx(expected, rel=1e-12)


def test_bound_certificate(small_instance):
    """Test the certificate returned with the bound."""
    bound = cmax_lower_bound(small_instance)
    for task, allot in zip(small_instance.tasks, bound.canonical_allotments):
        assert allot == canonical_allotment(task, bound.value)
        assert task.time(allot) <= bound.value
    assert minimal_work(small_instance, bound.value) <= small_instance.m * bound.value * (1 + 1e-12)
    assert bound.value >= max(t.min_time for t in small_instance.tasks)


def oracle_bound(instance: Instance) -> float:
    """Smallest feasible deadline, step by step over the sorted profile values.

    On [v_i, v_{i+1}) the minimal work is constant, so the smallest feasible
    deadline in that step is max(v_i, W(v_i) / m) when it lies in the step.
    """
    values = sorted(set(instance.times.ravel().tolist()))
    best = np.inf
    for i, v in enumerate(values):
        work = minimal_work(instance, v)
        if not np.isfinite(work):
            continue
        upper = values[i + 1] if i + 1 < len(values) else np.inf
        candidate = max(v, work / instance.m)
        if candidate < upper:
            best = min(best, candidate)
    return best


def test_matches_candidate_scan():
    """Test the binary search against a scan of all candidates."""
    for instance in arbitrary(200, seed=3) + generated(40, seed=3):
        assert cmax_lower_bound(instance).value == pytest.approx(oracle_bound(instance), rel=1e-12)


def test_scale_equivariance():
    """Test that scaling times scales the bound."""
    for instance in arbitrary(50, seed=4):
        base = cmax_lower_bound(instance).value
        for factor in [0.5, 3.0, 1e3]:
            assert cmax_lower_bound(instance.scaled(factor)).value == pytest.approx(
                factor * base, rel=1e-9
            )


def test_feasibility_is_monotone():
    """Test that feasibility is monotone in the deadline."""
    rng = np.random.default_rng(8)
    for instance in arbitrary(50, seed=8):
        points = np.sort(rng.uniform(0.05, 40.0, size=30))
        flags = [is_feasible_deadline(instance, float(p)) for p in points]
        # once feasible, feasible for every larger deadline
        first = flags.index(True) if True in flags else len(flags)
        assert all(flags[first:])


def test_minimal_work_infinite_without_allotment():
    """Test infinite work when no allotment fits."""
    instance = Instance.from_profiles(2, [[4.0, 3.0], [1.0, 1.0]])
    assert minimal_work(instance, 2.0) == np.inf
    assert not is_feasible_deadline(instance, 2.0)
