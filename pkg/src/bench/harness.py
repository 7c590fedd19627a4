"""Experiment runner: generate, bound, schedule and record."""
import hashlib
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import List, Optional, Tuple

from src.bench.dto import ExperimentConfig, ResultRow
from src.bounds.cmax import cmax_lower_bound
from src.bounds.lp import minsum_lower_bound
from src.config import Config
from src.model.validation import evaluate
from src.scheduling.factory import SchedulerFactory
from src.workload.factory import WorkloadFactory

logger = logging.getLogger(__name__)

Point = Tuple[str, int, int]


def derive_seed(base_seed: int, workload: str, n: int, run: int) -> int:
    """Stable 64-bit seed from the point coordinates.

    The seed is the big-endian value of the 8-byte BLAKE2b digest of
    ``"{base_seed}:{workload}:{n}:{run}"``, so it does not depend on the
    algorithms being run.
    """
    key = f"{base_seed}:{workload}:{n}:{run}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def _describe(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


def run_point(
    config: ExperimentConfig, app_config: Config, workload: str, n: int, run: int
) -> List[ResultRow]:
    """Run every algorithm of the config on one generated instance.

    Errors are recorded in the affected rows and never propagate.
    """
    seed = derive_seed(config.base_seed, workload, n, run)
    base = dict(workload=workload, n=n, run=run, seed=seed)

    try:
        source = WorkloadFactory.create(workload, min_seq_time=app_config.min_seq_time)
        instance = source.instance(n, config.m, seed, run)
        cmax_bound = cmax_lower_bound(instance).value
        minsum_bound = minsum_lower_bound(
            instance,
            solver=app_config.lp_solver,
            tolerance=app_config.lp_tolerance,
            iteration_factor=app_config.lp_iteration_factor,
        )
    except Exception as e:
        logger.warning(f"Point {workload} n={n} run={run} failed: {e}", exc_info=True)
        return [ResultRow(algorithm=name, error=_describe(e), **base) for name in config.algorithms]

    rows = []
    for name in config.algorithms:
        row = ResultRow(algorithm=name, cmax_bound=cmax_bound, minsum_bound=minsum_bound, **base)
        try:
            scheduler = SchedulerFactory.create(name, app_config, seed=seed)
            started = time.perf_counter()
            schedule = scheduler.schedule(instance)
            elapsed = time.perf_counter() - started
            row.makespan, row.minsum = evaluate(instance, schedule)
            if config.record_timings:
                row.runtime_seconds = elapsed
        except Exception as e:
            logger.warning(f"{name} failed on {workload} n={n} run={run}: {e}", exc_info=True)
            row.error = _describe(e)
        rows.append(row)
    return rows


def _run_point_args(args) -> List[ResultRow]:
    return run_point(*args)


def experiment_points(config: ExperimentConfig) -> List[Point]:
    """All (workload, n, run) triples in canonical order."""
    return [
        (workload, n, run)
        for workload in config.workloads
        for n in config.task_counts
        for run in range(config.runs_per_point)
    ]


def run_experiment(
    config: ExperimentConfig,
    app_config: Optional[Config] = None,
    jobs: int = 1,
) -> List[ResultRow]:
    """Run the whole sweep.

    Args:
        config: Experiment description
        app_config: Application configuration; SHUFFLES and LP_SOLVER of the
            experiment override its fields
        jobs: Worker processes; rows are identical for any value

    Returns:
        Rows sorted by workload, n and run (in config order), then algorithm
    """
    app_config = replace(
        app_config or Config(),
        shuffle_rounds=config.shuffles,
        lp_solver=config.lp_solver,
    )
    for name in config.algorithms:
        if name.lower() not in SchedulerFactory.get_available_schedulers():
            available = ", ".join(SchedulerFactory.get_available_schedulers())
            raise ValueError(f"Unsupported scheduler: {name}. Available schedulers: {available}")

    points = experiment_points(config)
    logger.info(
        f"Running {len(points)} instances x {len(config.algorithms)} algorithms "
        f"on m={config.m} with {jobs} job(s)"
    )
    args = [(config, app_config, workload, n, run) for workload, n, run in points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            batches = list(executor.map(_run_point_args, args))
    else:
        batches = []
        for i, item in enumerate(args, start=1):
            batches.append(_run_point_args(item))
            if i % config.runs_per_point == 0:
                logger.info(f"Finished {item[2]} n={item[3]} ({i}/{len(args)})")

    workload_rank = {w: i for i, w in enumerate(config.workloads)}
    n_rank = {n: i for i, n in enumerate(config.task_counts)}
    algorithm_rank = {a: i for i, a in enumerate(config.algorithms)}
    rows = [row for batch in batches for row in batch]
    rows.sort(key=lambda r: (
        workload_rank[r.workload], n_rank[r.n], r.run, algorithm_rank[r.algorithm],
    ))

    failed = sum(1 for row in rows if not row.ok)
    if failed:
        logger.warning(f"{failed} of {len(rows)} rows recorded errors")
    return rows
