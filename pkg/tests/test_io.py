"""Tests for instance and schedule files."""
import pytest

from src.model.io import (
    format_instance,
    parse_instance,
    parse_schedule,
    read_instance,
    read_schedule,
    write_instance,
    write_schedule,
)
from src.model.types import Instance, Placement, Schedule


def test_parse_instance_with_comments():
    text = """# two tasks
2 2
0 1.5 4 2.5
# sequential only
1 3e0 1.0 1.0
"""
    instance = parse_instance(text)
    assert instance.m == 2
    assert instance.tasks[0].weight == 1.5
    assert instance.tasks[0].profile == (4.0, 2.5)
    assert instance.tasks[1].profile == (1.0, 1.0)


def test_instance_file_is_exact(tmp_path):
    """Test exact instance file round trip."""
    instance = Instance.from_profiles(
        3, [[0.1, 1 / 3, 2.0 / 7], [1e-5, 1e-5, 1e-5]], [0.7, 9.999999999]
    )
    path = tmp_path / "instance.txt"
    write_instance(instance, path)
    assert read_instance(path) == instance
    assert path.read_text() == format_instance(instance)


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("2\n", "expected 'm n'"),
    ("x 1\n0 1 1\n", "must be integers"),
    ("1 2\n0 1 1\n", "Expected 2 task lines"),
    ("2 1\n0 1 1\n", "expected 4 fields"),
    ("1 1\n3 1 1\n", "ids must be 0..n-1"),
    ("1 1\n0 heavy 1\n", "line 2"),
    ("1 1\n0 1 -2\n", "p\\(1\\)"),
])
def test_parse_instance_errors(text, message):
    """Test instance parsing errors."""
    with pytest.raises(ValueError, match=message):
        parse_instance(text)


def test_schedule_file(tmp_path):
    """Test schedule file round trip."""
    sched = Schedule.from_placements([Placement(1, 0.5, 2), Placement(0, 0.0, 1)])
    path = tmp_path / "schedule.txt"
    write_schedule(sched, path)
    assert path.read_text() == "2\n0 0.0 1\n1 0.5 2\n"
    assert read_schedule(path) == sched


@pytest.mark.parametrize("text, message", [
    ("", "empty"),
    ("two\n", "task count"),
    ("2\n0 0.0 1\n", "Expected 2 placement lines"),
    ("1\n0 0.0\n", "id start allot"),
])
def test_parse_schedule_errors(text, message):
    """Test schedule parsing errors."""
    with pytest.raises(ValueError, match=message):
        parse_schedule(text)
