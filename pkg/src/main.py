"""Command-line entry point: gen, sched, bound and bench."""
import argparse
import logging
import sys
import time
from dataclasses import replace
from typing import List, Optional

from src.bench.dto import ExperimentConfig
from src.bench.emit import emit, ratio_table
from src.bench.harness import run_experiment
from src.bench.summary import summarize
from src.bounds.cmax import cmax_lower_bound
from src.bounds.lp import minsum_lower_bound
from src.config import LP_SOLVERS, Config, check_log_level
from src.model.io import read_instance, write_instance, write_schedule
from src.model.validation import evaluate
from src.scheduling.factory import SchedulerFactory
from src.workload.generator import (
    ParallelismModel,
    SequentialModel,
    WeightModel,
    WorkloadSpec,
    gen_instance,
)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moldsched",
        description="Bicriteria scheduling of moldable tasks",
    )
    parser.add_argument("--log-level", help="Override MOLDSCHED_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="Generate a synthetic instance")
    gen.add_argument("--n", type=int, required=True, help="Number of tasks")
    gen.add_argument("--m", type=int, required=True, help="Number of processors")
    gen.add_argument("--seq", choices=[s.value for s in SequentialModel], required=True)
    gen.add_argument("--par", choices=[p.value for p in ParallelismModel], required=True)
    gen.add_argument("--weights", choices=[w.value for w in WeightModel], default="uniform")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--min-seq-time", type=float, help="Positivity floor of mixed draws")
    gen.add_argument("--out", required=True, help="Instance file to write")

    sched = commands.add_parser("sched", help="Schedule an instance")
    sched.add_argument("--algo", default=SchedulerFactory.get_default_scheduler(),
                       choices=SchedulerFactory.get_available_schedulers())
    sched.add_argument("--instance", required=True, help="Instance file")
    sched.add_argument("--shuffles", type=int, help="Batch-order shuffle rounds")
    sched.add_argument("--seed", type=int, default=0, help="Shuffle seed")
    sched.add_argument("--cmax-scale", type=float, help="Multiplier on the makespan bound")
    sched.add_argument("--out", help="Schedule file to write")

    bound = commands.add_parser("bound", help="Print a lower bound")
    bound.add_argument("--criterion", choices=["makespan", "minsum"], required=True)
    bound.add_argument("--instance", required=True, help="Instance file")
    bound.add_argument("--lp-solver", choices=LP_SOLVERS)
    bound.add_argument("--dump-lp", help="Write the LP tableau to this file")

    bench = commands.add_parser("bench", help="Run an experiment sweep")
    bench.add_argument("--config", help="Experiment config file (defaults apply without one)")
    bench.add_argument("--out-dir", required=True)
    bench.add_argument("--jobs", type=int, help="Worker processes")
    bench.add_argument("--gnuplot", action="store_true", help="Also write gnuplot scripts")
    bench.add_argument("--figures", action="store_true", help="Also render PNG figures")
    return parser


def cmd_gen(args, config: Config):
    spec = WorkloadSpec(
        n=args.n,
        m=args.m,
        seq_model=SequentialModel(args.seq),
        par_model=ParallelismModel(args.par),
        weight_model=WeightModel(args.weights),
        seed=args.seed,
        min_seq_time=args.min_seq_time if args.min_seq_time is not None else config.min_seq_time,
    )
    instance = gen_instance(spec)
    write_instance(instance, args.out)
    logger.info(f"Wrote instance n={instance.n} m={instance.m} to {args.out}")


def cmd_sched(args, config: Config):
    if args.shuffles is not None:
        config = replace(config, shuffle_rounds=args.shuffles)
    if args.cmax_scale is not None:
        config = replace(config, cmax_scale=args.cmax_scale)
    instance = read_instance(args.instance)
    scheduler = SchedulerFactory.create(args.algo, config, seed=args.seed)

    started = time.perf_counter()
    schedule = scheduler.schedule(instance)
    runtime = time.perf_counter() - started

    # raises on an invalid schedule
    makespan, minsum = evaluate(instance, schedule)
    if args.out:
        write_schedule(schedule, args.out)
        logger.info(f"Wrote schedule to {args.out}")
    print(f"{makespan!r} {minsum!r} {runtime!r}")


def cmd_bound(args, config: Config):
    instance = read_instance(args.instance)
    if args.criterion == "makespan":
        if args.dump_lp:
            logger.warning("--dump-lp only applies to the minsum bound")
        value = cmax_lower_bound(instance).value
    else:
        value = minsum_lower_bound(
            instance,
            solver=args.lp_solver or config.lp_solver,
            tolerance=config.lp_tolerance,
            iteration_factor=config.lp_iteration_factor,
            dump_path=args.dump_lp,
        )
    print(repr(value))


def cmd_bench(args, config: Config):
    experiment = ExperimentConfig.from_file(args.config) if args.config else ExperimentConfig()
    jobs = args.jobs if args.jobs is not None else config.jobs
    if jobs < 1:
        raise ValueError(f"--jobs must be >= 1, got {jobs}")
    rows = run_experiment(experiment, config, jobs=jobs)
    summaries = summarize(rows)
    emit(rows, summaries, args.out_dir, gnuplot=args.gnuplot, figures=args.figures)
    print(ratio_table(summaries))


COMMANDS = {
    "gen": cmd_gen,
    "sched": cmd_sched,
    "bound": cmd_bound,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point."""
    args = build_parser().parse_args(argv)
    try:
        config = Config.from_env()
        if args.log_level:
            config = replace(config, log_level=check_log_level("--log-level", args.log_level))
    except ValueError as e:
        logging.basicConfig(level=logging.ERROR, stream=sys.stderr)
        logger.error(f"Invalid configuration: {e}")
        return 1

    logging.basicConfig(
        level=config.log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    logger.debug(f"Running {args.command}")

    try:
        COMMANDS[args.command](args, config)
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
