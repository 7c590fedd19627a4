"""Interval-indexed LP relaxation giving a minsum lower bound.

x[i, j] is the (relaxed) indicator that task i completes in interval j.
Intervals are the zero interval (0, t_0], the grid intervals (t_j, t_{j+1}]
for j = 0..K, and an open tail (t_{K+1}, inf). A completion in an interval
costs w_i times its left end, which never exceeds the completion time, and
occupies at least the smallest area among allotments finishing by the right
end. Tasks completing by t_{j+1} fit in the rectangle m * t_{j+1}:

    minimize    sum w_i * left_j * x[i, j]
    subject to  sum_j x[i, j] >= 1                          for every task
                sum_{l <= j} sum_i S[i, l] x[i, l] <= m t_{j+1}   for bounded j
                0 <= x <= 1
"""
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from src.bounds.cmax import cmax_lower_bound
from src.bounds.simplex import (
    BoundedSimplex,
    LpInfeasibleError,
    LpIterationLimitError,
    LpSolverError,
    LpUnboundedError,
)
from src.model.types import Instance
from src.scheduling.batches import BatchGrid, build_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LpInterval:
    """Completion window (left, right]; right is inf for the tail."""
    label: str
    left: float
    right: float


@dataclass(frozen=True)
class LpVariable:
    """x[task, interval] with its objective coefficient and minimal area."""
    task_id: int
    interval: int
    coefficient: float
    area: float


@dataclass(frozen=True)
class LpModel:
    """Relaxed interval-indexed formulation for one instance."""
    m: int
    task_ids: Tuple[int, ...]
    intervals: Tuple[LpInterval, ...]
    variables: Tuple[LpVariable, ...]

    def name(self, var: LpVariable) -> str:
        return f"x_{var.task_id}_{self.intervals[var.interval].label}"

    @property
    def bounded_intervals(self) -> Tuple[int, ...]:
        return tuple(j for j, iv in enumerate(self.intervals) if math.isfinite(iv.right))

    def matrices(self):
        """Objective, constraint rows, senses and right-hand sides.

        Rows are the coverage constraints in task order followed by one
        cumulative surface constraint per bounded interval.
        """
        n_vars = len(self.variables)
        row_of_task = {tid: r for r, tid in enumerate(self.task_ids)}
        bounded = self.bounded_intervals
        n_rows = len(self.task_ids) + len(bounded)
        A = np.zeros((n_rows, n_vars))
        c = np.zeros(n_vars)
        for col, var in enumerate(self.variables):
            c[col] = var.coefficient
            A[row_of_task[var.task_id], col] = 1.0
            for k, j in enumerate(bounded):
                if var.interval <= j:
                    A[len(self.task_ids) + k, col] = var.area
        senses = [">="] * len(self.task_ids) + ["<="] * len(bounded)
        b = np.concatenate([
            np.ones(len(self.task_ids)),
            np.array([self.m * self.intervals[j].right for j in bounded]),
        ])
        return c, A, senses, b

    def dump(self) -> str:
        """Plain-text tableau.

        Format::

            # comment lines
            COLUMNS <name> ...                  variable ids x_<task>_<interval>
            OBJ <c> ...                         minimize
            <row> <sense> <rhs> <a> ...         one line per constraint
            BOUNDS 0 1                          on every variable
        """
        c, A, senses, b = self.matrices()
        lines = [
            "# interval-indexed LP relaxation (minimize)",
            f"# m={self.m} tasks={len(self.task_ids)} variables={len(self.variables)} "
            f"constraints={A.shape[0]}",
        ]
        for j, iv in enumerate(self.intervals):
            lines.append(f"# interval {j} {iv.label} ({iv.left!r}, {iv.right!r}]")
        lines.append("COLUMNS " + " ".join(self.name(v) for v in self.variables))
        lines.append("OBJ " + " ".join(repr(float(v)) for v in c))
        row_names = [f"cover_{tid}" for tid in self.task_ids] + [
            f"surface_{self.intervals[j].label}" for j in self.bounded_intervals
        ]
        for name, sense, rhs, row in zip(row_names, senses, b, A):
            coefs = " ".join(repr(float(v)) for v in row)
            lines.append(f"{name} {sense} {float(rhs)!r} {coefs}")
        lines.append("BOUNDS 0 1")
        return "\n".join(lines) + "\n"


@dataclass
class LpSolution:
    """Optimal objective and variable values aligned with model.variables."""
    objective: float
    values: np.ndarray
    iterations: int


def build_lp(instance: Instance, grid: BatchGrid) -> LpModel:
    """Build the relaxed LP over the grid's intervals.

    Variables whose interval admits no allotment (infinite area) are omitted.

    Args:
        instance: Problem instance
        grid: Doubling grid for the instance

    Returns:
        LpModel
    """
    t = grid.boundaries
    intervals = [LpInterval(label="pre", left=0.0, right=t[0])]
    intervals += [LpInterval(label=str(j), left=t[j], right=t[j + 1]) for j in range(grid.K + 1)]
    intervals.append(LpInterval(label="tail", left=t[-1], right=math.inf))

    variables = []
    for j, iv in enumerate(intervals):
        areas = np.where(instance.times <= iv.right, instance.areas, np.inf).min(axis=1)
        for task, area in zip(instance.tasks, areas):
            if np.isfinite(area):
                variables.append(
                    LpVariable(
                        task_id=task.id,
                        interval=j,
                        coefficient=task.weight * iv.left,
                        area=float(area),
                    )
                )
    variables.sort(key=lambda v: (v.task_id, v.interval))
    model = LpModel(
        m=instance.m,
        task_ids=tuple(task.id for task in instance.tasks),
        intervals=tuple(intervals),
        variables=tuple(variables),
    )
    logger.debug(
        f"Built LP: {len(variables)} variables, {len(intervals)} intervals, K={grid.K}"
    )
    return model


def _solve_highs(c, A, senses, b):
    from scipy.optimize import linprog

    sign = np.array([-1.0 if s == ">=" else 1.0 for s in senses])
    result = linprog(c, A_ub=A * sign[:, None], b_ub=b * sign, bounds=(0, 1), method="highs")
    if result.status == 2:
        raise LpInfeasibleError(f"LP infeasible: {result.message}")
    if result.status == 3:
        raise LpUnboundedError(f"LP unbounded: {result.message}")
    if result.status == 1:
        raise LpIterationLimitError(f"HiGHS iteration limit: {result.message}")
    if result.status != 0:
        raise LpSolverError(f"HiGHS failed: {result.message}")
    return np.asarray(result.x), float(result.fun), int(result.nit)


def solve_lp(
    model: LpModel,
    solver: str = "simplex",
    tolerance: float = 1e-7,
    iteration_factor: int = 50,
) -> LpSolution:
    """Solve the relaxation and audit the returned point.

    Args:
        model: LP model
        solver: "simplex" (built-in) or "highs" (scipy)
        tolerance: Absolute feasibility tolerance of the audit
        iteration_factor: Simplex budget per variable and constraint

    Returns:
        LpSolution

    Raises:
        LpSolverError: If the solver fails or the point violates a constraint
    """
    c, A, senses, b = model.matrices()
    if solver == "simplex":
        budget = iteration_factor * (A.shape[0] + A.shape[1])
        result = BoundedSimplex(c, A, senses, b, np.ones(c.size), max_iterations=budget).solve()
        x, objective, iterations = result.x, result.objective, result.iterations
    elif solver == "highs":
        x, objective, iterations = _solve_highs(c, A, senses, b)
    else:
        raise ValueError(f"Unknown LP solver: {solver}")

    lhs = A @ x
    is_ge = np.array([s == ">=" for s in senses])
    violation = np.where(is_ge, b - lhs, lhs - b).max(initial=0.0)
    if violation > tolerance or (x < -tolerance).any() or (x > 1 + tolerance).any():
        raise LpSolverError(f"LP solution violates constraints by {violation:.3g}")

    logger.debug(f"LP solved with {solver}: objective {objective:.9g} in {iterations} iterations")
    return LpSolution(objective=objective, values=x, iterations=iterations)


def trivial_minsum_bound(instance: Instance) -> float:
    """Sum of w_i times the fastest processing time of task i."""
    return math.fsum(task.weight * task.min_time for task in instance.tasks)


def minsum_lower_bound(
    instance: Instance,
    solver: str = "simplex",
    tolerance: float = 1e-7,
    iteration_factor: int = 50,
    dump_path: Optional[Union[str, Path]] = None,
) -> float:
    """Lower bound on the weighted sum of completion times.

    Args:
        instance: Problem instance
        solver: LP backend, "simplex" or "highs"
        tolerance: LP feasibility tolerance
        iteration_factor: Simplex budget per variable and constraint
        dump_path: Optional file receiving the LP tableau

    Returns:
        max(LP optimum, sum of w_i * min_k p_i(k))
    """
    grid = build_grid(instance, cmax_lower_bound(instance).value)
    model = build_lp(instance, grid)
    if dump_path is not None:
        Path(dump_path).write_text(model.dump())
        logger.info(f"Wrote LP model to {dump_path}")
    solution = solve_lp(model, solver=solver, tolerance=tolerance, iteration_factor=iteration_factor)
    return max(solution.objective, trivial_minsum_bound(instance))
