"""Every scheduler yields a valid schedule no better than the lower bounds."""
import pytest

from src.bounds.cmax import cmax_lower_bound
from src.bounds.lp import minsum_lower_bound
from src.model.validation import evaluate, validate_schedule
from src.scheduling.factory import SchedulerFactory
from tests.conftest import arbitrary, generated

RTOL = 1e-9
SCHEDULERS = SchedulerFactory.get_available_schedulers()


def check_instance(instance, app_config, seed, solver):
    cmax_bound = cmax_lower_bound(instance).value
    minsum_bound = minsum_lower_bound(instance, solver=solver)
    for name in SCHEDULERS:
        schedule = SchedulerFactory.create(name, app_config, seed=seed).schedule(instance)
        report = validate_schedule(instance, schedule)
        assert report.ok, (name, report.violations)

        makespan, minsum = evaluate(instance, schedule)
        assert cmax_bound <= makespan * (1 + RTOL), name
        assert minsum_bound <= minsum * (1 + RTOL), name


def test_schedules_respect_simplex_bounds(app_config):
    """Test all schedulers against bounds from the built-in simplex."""
    instances = generated(20, n_range=(5, 40), m_range=(4, 64), seed=40) + arbitrary(20, seed=40)
    for i, instance in enumerate(instances):
        check_instance(instance, app_config, seed=i, solver="simplex")


@pytest.mark.slow
@pytest.mark.parametrize("chunk", range(4))
def test_schedules_respect_bounds_on_wide_sweep(chunk, app_config):
    """Test all schedulers on 1000 generated instances, n in 5..100 and m in 4..200."""
    instances = generated(250, n_range=(5, 100), m_range=(4, 200), seed=100 + chunk)
    for i, instance in enumerate(instances):
        check_instance(instance, app_config, seed=i, solver="highs")


def test_single_task_everywhere(single_task_instance, app_config):
    """Test that one unit task finishes at time 1 under every scheduler."""
    for name in SCHEDULERS:
        schedule = SchedulerFactory.create(name, app_config).schedule(single_task_instance)
        assert evaluate(single_task_instance, schedule) == (1.0, 1.0)
