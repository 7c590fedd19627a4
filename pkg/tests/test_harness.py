"""Tests for the experiment config, runner and ratio summaries."""
from pathlib import Path

import pytest
from pydantic import ValidationError

from src.bench.dto import ExperimentConfig, ResultRow
from src.bench.emit import write_results
from src.bench.harness import derive_seed, experiment_points, run_experiment, run_point
from src.bench.summary import summarize
from src.scheduling.algorithms.gang import GangScheduler


def tiny_config(**overrides):
    params = dict(
        m=4,
        task_counts=[5, 8],
        runs_per_point=2,
        workloads=["uniform-weak", "mixed-high"],
        algorithms=["bicriteria", "gang", "list-saf"],
        shuffles=2,
        lp_solver="highs",
        record_timings=False,
    )
    params.update(overrides)
    return ExperimentConfig(**params)


# ExperimentConfig

def test_experiment_config_defaults():
    """Test experiment config defaults."""
    config = ExperimentConfig()
    assert config.m == 200
    assert config.task_counts == [25, 50, 100, 200, 400]
    assert config.runs_per_point == 40
    assert config.workloads == ["uniform-weak", "uniform-high", "mixed-mixed", "mixed-high"]
    assert len(config.algorithms) == 6
    assert config.lp_solver == "highs"
    assert config.record_timings is False


def test_experiment_config_from_file(tmp_path):
    """Test loading an experiment config file."""
    path = tmp_path / "exp.env"
    path.write_text(
        "M=16\n"
        "TASK_COUNTS=10, 20\n"
        "runs_per_point=3\n"
        "WORKLOADS=mixed-mixed\n"
        "ALGORITHMS=gang,seq-lptf\n"
        "LP_SOLVER=Simplex\n"
        "RECORD_TIMINGS=true\n"
    )
    config = ExperimentConfig.from_file(path)
    assert config.m == 16
    assert config.task_counts == [10, 20]
    assert config.runs_per_point == 3
    assert config.workloads == ["mixed-mixed"]
    assert config.algorithms == ["gang", "seq-lptf"]
    assert config.lp_solver == "simplex"
    assert config.record_timings is True
    assert config.shuffles == 10


def test_experiment_config_unknown_key(tmp_path):
    """Test error for an unknown config key."""
    path = tmp_path / "exp.env"
    path.write_text("M=16\nPROCESSORS=8\n")
    with pytest.raises(ValueError, match="unknown key 'PROCESSORS'"):
        ExperimentConfig.from_file(path)


def test_experiment_config_missing_file(tmp_path):
    """Test error for a missing config file."""
    with pytest.raises(ValueError, match="Experiment config not found"):
        ExperimentConfig.from_file(tmp_path / "missing.env")


@pytest.mark.parametrize("overrides", [
    {"m": 0},
    {"task_counts": "10,0"},
    {"task_counts": []},
    {"runs_per_point": 0},
    {"lp_solver": "glpk"},
    {"shuffles": -1},
])
def test_experiment_config_validation(overrides):
    """Test experiment config validation."""
    with pytest.raises(ValidationError):
        ExperimentConfig(**overrides)


# Runner

def test_derive_seed_is_stable():
    """Test stable and distinct derived seeds."""
    seed = derive_seed(0, "mixed-high", 100, 3)
    assert seed == derive_seed(0, "mixed-high", 100, 3)
    assert 0 <= seed < 2 ** 64
    others = {
        derive_seed(1, "mixed-high", 100, 3),
        derive_seed(0, "mixed-mixed", 100, 3),
        derive_seed(0, "mixed-high", 101, 3),
        derive_seed(0, "mixed-high", 100, 4),
    }
    assert seed not in others and len(others) == 4


def test_experiment_points_order():
    """Test the canonical point order."""
    config = tiny_config()
    points = experiment_points(config)
    assert len(points) == 2 * 2 * 2
    assert points[:3] == [("uniform-weak", 5, 0), ("uniform-weak", 5, 1), ("uniform-weak", 8, 0)]


def test_one_point_shares_instance_and_bounds(app_config):
    """Test that algorithms of one point share instance and bounds."""
    config = tiny_config(algorithms=["bicriteria", "gang"])
    rows = run_point(config, app_config, "uniform-weak", 5, 0)
    assert [r.algorithm for r in rows] == ["bicriteria", "gang"]
    assert rows[0].seed == rows[1].seed == derive_seed(0, "uniform-weak", 5, 0)
    assert rows[0].cmax_bound == rows[1].cmax_bound
    assert rows[0].minsum_bound == rows[1].minsum_bound
    for row in rows:
        assert row.ok
        assert row.cmax_bound <= row.makespan * (1 + 1e-9)
        assert row.minsum_bound <= row.minsum * (1 + 1e-9)
        assert row.runtime_seconds == 0.0


def test_runtime_recorded_when_enabled(app_config):
    """Test that runtimes are recorded when enabled."""
    rows = run_point(tiny_config(record_timings=True), app_config, "mixed-high", 8, 0)
    assert all(row.runtime_seconds > 0.0 for row in rows)


def test_run_experiment_cardinality_and_order():
    """Test row count and order of a sweep."""
    config = tiny_config()
    rows = run_experiment(config)
    assert len(rows) == 2 * 2 * 2 * 3
    assert [(r.workload, r.n, r.run, r.algorithm) for r in rows[:4]] == [
        ("uniform-weak", 5, 0, "bicriteria"),
        ("uniform-weak", 5, 0, "gang"),
        ("uniform-weak", 5, 0, "list-saf"),
        ("uniform-weak", 5, 1, "bicriteria"),
    ]
    assert all(row.ok for row in rows)


def test_run_experiment_is_deterministic(tmp_path):
    """Test byte-identical results across reruns."""
    config = tiny_config()
    write_results(run_experiment(config), tmp_path / "first.csv")
    write_results(run_experiment(config), tmp_path / "second.csv")
    assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()


def test_parallel_jobs_give_identical_rows():
    """Test that worker processes do not change rows."""
    config = tiny_config(task_counts=[6], runs_per_point=3)
    assert run_experiment(config, jobs=2) == run_experiment(config, jobs=1)


def test_run_experiment_rejects_unknown_algorithm():
    """Test error for an unknown algorithm."""
    with pytest.raises(ValueError, match="Unsupported scheduler"):
        run_experiment(tiny_config(algorithms=["gang", "magic"]))


def test_bound_failure_marks_every_row(app_config, mocker):
    """Test that a bound failure marks all rows of the point."""
    mocker.patch("src.bench.harness.minsum_lower_bound", side_effect=RuntimeError("solver down"))
    rows = run_point(tiny_config(), app_config, "uniform-weak", 5, 0)
    assert len(rows) == 3
    assert all(row.error == "RuntimeError: solver down" for row in rows)
    assert all(row.makespan is None for row in rows)


def test_scheduler_failure_is_isolated(app_config, mocker):
    """Test that one failing scheduler leaves the others alone."""
    mocker.patch.object(GangScheduler, "schedule", side_effect=ValueError("bad allotment"))
    rows = run_point(tiny_config(), app_config, "uniform-weak", 5, 0)
    by_name = {row.algorithm: row for row in rows}
    assert by_name["gang"].error == "ValueError: bad allotment"
    assert by_name["bicriteria"].ok and by_name["list-saf"].ok


def test_unknown_workload_is_recorded(app_config):
    """Test that an unknown workload is recorded per row."""
    rows = run_point(tiny_config(), app_config, "bursty-high", 5, 0)
    assert all(row.error.startswith("ValueError: Unsupported workload") for row in rows)


# Summaries

def row(algorithm, run, makespan, minsum, cmax_bound, minsum_bound, **extra):
    return ResultRow(
        workload="w", n=10, algorithm=algorithm, run=run, seed=run,
        makespan=makespan, minsum=minsum, cmax_bound=cmax_bound, minsum_bound=minsum_bound,
        **extra,
    )


def test_summarize_ratios():
    """Test ratio extremes and ratio-of-sums averages."""
    rows = [
        row("a", 0, 4.0, 2.0, 2.0, 2.0, runtime_seconds=1.0),
        row("a", 1, 6.0, 9.0, 3.0, 3.0, runtime_seconds=3.0),
    ]
    (summary,) = summarize(rows)
    assert (summary.cmax_min, summary.cmax_avg, summary.cmax_max) == (2.0, 2.0, 2.0)
    assert summary.minsum_min == 1.0
    assert summary.minsum_avg == pytest.approx(2.2)
    assert summary.minsum_max == 3.0
    assert summary.runtime_avg == 2.0
    assert summary.runs == 2


def test_summarize_groups_in_order_and_skips_errors():
    """Test grouping order and skipped error rows."""
    rows = [
        row("b", 0, 2.0, 2.0, 1.0, 1.0),
        row("a", 0, 3.0, 3.0, 1.0, 1.0),
        row("b", 1, None, None, 1.0, 1.0, error="ValueError: x"),
    ]
    summaries = summarize(rows)
    assert [(s.algorithm, s.runs) for s in summaries] == [("b", 1), ("a", 1)]


def test_summarize_rejects_zero_bound():
    """Test error for a zero lower bound."""
    with pytest.raises(ValueError, match="Zero lower bound"):
        summarize([row("a", 0, 1.0, 0.0, 1.0, 0.0)])


def test_summarize_empty():
    """Test summarizing no rows."""
    assert summarize([]) == []


@pytest.mark.parametrize("name", ["quick.env", "full.env"])
def test_shipped_experiment_files_parse(name):
    """Test that the bundled experiment files load."""
    path = Path(__file__).resolve().parent.parent / "experiments" / name
    config = ExperimentConfig.from_file(path)
    assert len(config.algorithms) == 6
    assert len(config.workloads) == 4
