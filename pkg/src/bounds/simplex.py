"""Bounded-variable primal simplex with Bland's anti-cycling rule.

Solves::

    minimize    c x
    subject to  A[i] x <= b[i]   or   A[i] x >= b[i]
                0 <= x <= upper

Nonbasic variables sit at their lower or upper bound, so the upper bounds
never become explicit rows. Each row gets a slack (or surplus) column.
A row starts with a basic column when its slack or some structural column
is the unit vector of the row and its right-hand side lies within that
column's bounds; the remaining rows get artificial columns and go through
phase 1.

Pricing picks the most negative reduced cost. After STALL_LIMIT degenerate
pivots in a row it switches to Bland's rule (lowest index enters and
leaves) until a pivot makes progress again, which rules out cycling.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
COST_TOL = 1e-9
REFRESH_EVERY = 50
STALL_LIMIT = 20


class LpSolverError(RuntimeError):
    """Raised when the LP cannot be solved."""


class LpInfeasibleError(LpSolverError):
    """Raised when the LP has no feasible point."""


class LpUnboundedError(LpSolverError):
    """Raised when the objective decreases without bound."""


class LpIterationLimitError(LpSolverError):
    """Raised when the pivot budget is exhausted."""


@dataclass
class SimplexResult:
    """Optimal point, its objective and the number of iterations used."""
    x: np.ndarray
    objective: float
    iterations: int


class BoundedSimplex:
    """Dense-tableau primal simplex over box-bounded variables."""

    def __init__(
        self,
        c: np.ndarray,
        A: np.ndarray,
        senses: Sequence[str],
        b: np.ndarray,
        upper: np.ndarray,
        max_iterations: Optional[int] = None,
    ):
        """Initialize the solver.

        Args:
            c: Objective coefficients, shape (n,)
            A: Constraint matrix, shape (r, n)
            senses: '<=' or '>=' per row
            b: Right-hand sides, shape (r,)
            upper: Upper bounds per variable, np.inf for none
            max_iterations: Pivot and bound-flip budget over both phases
        """
        self.c = np.asarray(c, dtype=float)
        self.A = np.asarray(A, dtype=float)
        self.b = np.asarray(b, dtype=float)
        self.upper_struct = np.asarray(upper, dtype=float)
        self.senses = list(senses)
        rows, cols = self.A.shape
        if self.c.shape != (cols,) or self.upper_struct.shape != (cols,):
            raise ValueError("c and upper must have one entry per column of A")
        if self.b.shape != (rows,) or len(self.senses) != rows:
            raise ValueError("b and senses must have one entry per row of A")
        for sense in self.senses:
            if sense not in ("<=", ">="):
                raise ValueError(f"Unknown constraint sense: {sense!r}")
        if (self.upper_struct < 0).any():
            raise ValueError("Upper bounds must be nonnegative")
        if max_iterations is None:
            max_iterations = 50 * (rows + cols)
        self.max_iterations = max_iterations
        self.iterations = 0

    def _standard_form(self):
        rows, cols = self.A.shape
        slack = np.diag([1.0 if s == "<=" else -1.0 for s in self.senses])
        T = np.hstack([self.A, slack])
        b = self.b.copy()
        negative = b < 0
        T[negative] *= -1
        b[negative] *= -1
        upper = np.concatenate([self.upper_struct, np.full(rows, np.inf)])

        basis = np.full(rows, -1, dtype=int)
        is_unit = (np.count_nonzero(T, axis=0) == 1)
        for i in range(rows):
            slack_col = cols + i
            if T[i, slack_col] == 1.0:
                basis[i] = slack_col
                continue
            for j in np.flatnonzero(is_unit[:cols] & (T[i, :cols] == 1.0)):
                if b[i] <= upper[j] and j not in basis:
                    basis[i] = j
                    break

        missing = np.flatnonzero(basis < 0)
        if missing.size:
            artificial = np.zeros((rows, missing.size))
            artificial[missing, np.arange(missing.size)] = 1.0
            T = np.hstack([T, artificial])
            upper = np.concatenate([upper, np.full(missing.size, np.inf)])
            basis[missing] = cols + rows + np.arange(missing.size)
        return T, b, upper, basis, cols + rows

    def solve(self) -> SimplexResult:
        """Run both phases.

        Returns:
            SimplexResult for the structural variables

        Raises:
            LpInfeasibleError: If phase 1 ends with positive infeasibility
            LpUnboundedError: If a ratio test finds no blocking bound
            LpIterationLimitError: If max_iterations is exceeded
        """
        T, beta, upper, basis, n_real = self._standard_form()
        self._T, self._beta, self._upper, self._basis = T, beta, upper, basis
        total = T.shape[1]
        self._is_basic = np.zeros(total, dtype=bool)
        self._is_basic[basis] = True
        self._at_upper = np.zeros(total, dtype=bool)
        allowed = np.ones(total, dtype=bool)

        if total > n_real:
            phase1 = np.zeros(total)
            phase1[n_real:] = 1.0
            self._iterate(phase1, allowed)
            infeasibility = float(phase1 @ self._values())
            if infeasibility > 1e-7 * max(1.0, float(np.abs(self.b).max(initial=0.0))):
                raise LpInfeasibleError(f"LP infeasible (phase 1 residual {infeasibility:.3g})")
            # Artificials are pinned to zero and never re-enter
            self._upper[n_real:] = 0.0
            allowed[n_real:] = False
            logger.debug(f"Phase 1 done after {self.iterations} iterations")

        cost = np.zeros(total)
        cost[: self.c.size] = self.c
        self._iterate(cost, allowed)

        x = self._values()[: self.c.size]
        objective = float(self.c @ x)
        logger.debug(f"Simplex optimal: objective {objective:.9g}, {self.iterations} iterations")
        return SimplexResult(x=x, objective=objective, iterations=self.iterations)

    def _values(self) -> np.ndarray:
        x = np.where(self._at_upper, self._upper, 0.0)
        x[self._basis] = self._beta
        return x

    def _iterate(self, cost: np.ndarray, allowed: np.ndarray):
        T, beta, upper, basis = self._T, self._beta, self._upper, self._basis
        at_upper, is_basic = self._at_upper, self._is_basic
        d = cost - cost[basis] @ T
        since_refresh = 0
        stalled = 0

        while True:
            if since_refresh >= REFRESH_EVERY:
                d = cost - cost[basis] @ T
                since_refresh = 0
            eligible = allowed & ~is_basic & (
                (~at_upper & (d < -COST_TOL)) | (at_upper & (d > COST_TOL))
            )
            candidates = np.flatnonzero(eligible)
            if candidates.size == 0:
                return
            if self.iterations >= self.max_iterations:
                raise LpIterationLimitError(
                    f"Simplex exceeded {self.max_iterations} iterations"
                )
            self.iterations += 1
            since_refresh += 1

            bland = stalled >= STALL_LIMIT
            if bland:
                q = int(candidates[0])
            else:
                q = int(candidates[np.argmax(np.abs(d[candidates]))])
            direction = -1.0 if at_upper[q] else 1.0
            alpha = T[:, q]
            step = direction * alpha

            theta = upper[q]
            leave_row = -1
            leave_to_upper = False

            ub_basic = upper[basis]
            with np.errstate(divide="ignore", invalid="ignore"):
                dec = step > PIVOT_TOL
                inc = (step < -PIVOT_TOL) & np.isfinite(ub_basic)
                ratios = np.full(step.shape, np.inf)
                ratios[dec] = np.maximum(beta[dec], 0.0) / step[dec]
                ratios[inc] = np.maximum(ub_basic[inc] - beta[inc], 0.0) / -step[inc]
            best = float(ratios.min(initial=np.inf))
            if best < theta:
                ties = np.flatnonzero(ratios <= best + PIVOT_TOL * max(1.0, best))
                if bland:
                    leave_row = int(ties[np.argmin(basis[ties])])
                else:
                    leave_row = int(ties[np.argmax(np.abs(step[ties]))])
                leave_to_upper = bool(inc[leave_row])
                theta = best

            if not np.isfinite(theta):
                raise LpUnboundedError(f"LP unbounded along column {q}")

            stalled = stalled + 1 if theta <= PIVOT_TOL else 0
            beta -= theta * step
            if leave_row < 0:
                at_upper[q] = not at_upper[q]
                continue

            r = leave_row
            leaving = basis[r]
            is_basic[leaving] = False
            at_upper[leaving] = leave_to_upper
            entering_value = upper[q] - theta if direction < 0 else theta

            pivot = alpha[r]
            T[r] /= pivot
            col = alpha.copy()
            col[r] = 0.0
            T -= np.outer(col, T[r])
            d = d - d[q] * T[r]
            beta[r] = entering_value
            basis[r] = q
            is_basic[q] = True
            at_upper[q] = False
