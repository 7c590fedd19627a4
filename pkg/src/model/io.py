"""Plain-text instance and schedule files.

Instance file::

    # comment lines start with '#'
    m n
    id weight p(1) p(2) ... p(m)      (n lines, ids 0..n-1 in order)

Schedule file::

    n
    id start allot                    (n lines)

Floats are written with ``repr`` so reading a file back is exact.
"""
import logging
from pathlib import Path
from typing import Iterator, List, Tuple, Union

from src.model.types import Instance, MoldableTask, Placement, Schedule

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _data_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped.split()


def parse_instance(text: str) -> Instance:
    """Parse an instance from its text form.

    Raises:
        ValueError: If the text does not follow the instance format
    """
    lines = list(_data_lines(text))
    if not lines:
        raise ValueError("Instance file is empty")
    lineno, header = lines[0]
    if len(header) != 2:
        raise ValueError(f"line {lineno}: expected 'm n', got {' '.join(header)!r}")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise ValueError(f"line {lineno}: 'm n' must be integers")
    if len(lines) - 1 != n:
        raise ValueError(f"Expected {n} task lines, found {len(lines) - 1}")

    tasks = []
    for expected_id, (lineno, fields) in enumerate(lines[1:]):
        if len(fields) != m + 2:
            raise ValueError(f"line {lineno}: expected {m + 2} fields, got {len(fields)}")
        try:
            task_id = int(fields[0])
            weight = float(fields[1])
            profile = tuple(float(v) for v in fields[2:])
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}")
        if task_id != expected_id:
            raise ValueError(f"line {lineno}: task ids must be 0..n-1 in order, got {task_id}")
        tasks.append(MoldableTask(id=task_id, weight=weight, profile=profile))
    return Instance(m=m, tasks=tuple(tasks))


def format_instance(instance: Instance) -> str:
    lines = [f"{instance.m} {instance.n}"]
    for task in instance.tasks:
        values = " ".join(repr(p) for p in task.profile)
        lines.append(f"{task.id} {task.weight!r} {values}")
    return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> Schedule:
    """Parse a schedule from its text form.

    Raises:
        ValueError: If the text does not follow the schedule format
    """
    lines = list(_data_lines(text))
    if not lines:
        raise ValueError("Schedule file is empty")
    lineno, header = lines[0]
    try:
        n = int(header[0])
    except (ValueError, IndexError):
        raise ValueError(f"line {lineno}: expected task count")
    if len(lines) - 1 != n:
        raise ValueError(f"Expected {n} placement lines, found {len(lines) - 1}")

    placements = []
    for lineno, fields in lines[1:]:
        if len(fields) != 3:
            raise ValueError(f"line {lineno}: expected 'id start allot'")
        try:
            placements.append(
                Placement(task_id=int(fields[0]), start=float(fields[1]), allot=int(fields[2]))
            )
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}")
    return Schedule.from_placements(placements)


def format_schedule(schedule: Schedule) -> str:
    lines = [str(len(schedule.placements))]
    for p in schedule.placements:
        lines.append(f"{p.task_id} {p.start!r} {p.allot}")
    return "\n".join(lines) + "\n"


def read_instance(path: PathLike) -> Instance:
    """Read an instance file."""
    instance = parse_instance(Path(path).read_text())
    logger.info(f"Loaded instance {path}: n={instance.n}, m={instance.m}")
    return instance


def write_instance(instance: Instance, path: PathLike):
    Path(path).write_text(format_instance(instance))
    logger.info(f"Wrote instance {path}")


def read_schedule(path: PathLike) -> Schedule:
    return parse_schedule(Path(path).read_text())


def write_schedule(schedule: Schedule, path: PathLike):
    Path(path).write_text(format_schedule(schedule))
    logger.info(f"Wrote schedule {path}")
