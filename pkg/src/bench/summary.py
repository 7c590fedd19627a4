"""Performance ratios per experiment point."""
import logging
import math
from typing import Dict, List, Sequence, Tuple

from src.bench.dto import RatioSummary, ResultRow

logger = logging.getLogger(__name__)


def _ratios(objectives: Sequence[float], bounds: Sequence[float]) -> Tuple[float, float, float]:
    """(min per-run ratio, ratio of sums, max per-run ratio)."""
    per_run = [obj / bound for obj, bound in zip(objectives, bounds)]
    average = math.fsum(objectives) / math.fsum(bounds)
    return min(per_run), average, max(per_run)


def summarize(rows: Sequence[ResultRow]) -> List[RatioSummary]:
    """Aggregate rows per (workload, n, algorithm), in order of first appearance.

    Rows with errors are left out of their point.

    Raises:
        ValueError: If a row has a zero or missing bound
    """
    groups: Dict[Tuple[str, int, str], List[ResultRow]] = {}
    skipped = 0
    for row in rows:
        if not row.ok:
            skipped += 1
            continue
        groups.setdefault((row.workload, row.n, row.algorithm), []).append(row)
    if skipped:
        logger.warning(f"Skipped {skipped} row(s) with errors")

    summaries = []
    for (workload, n, algorithm), group in groups.items():
        for row in group:
            if not row.cmax_bound or not row.minsum_bound:
                raise ValueError(
                    f"Zero lower bound for {workload} n={n} run={row.run}; ratios undefined"
                )
        cmax = _ratios([r.makespan for r in group], [r.cmax_bound for r in group])
        minsum = _ratios([r.minsum for r in group], [r.minsum_bound for r in group])
        summaries.append(
            RatioSummary(
                workload=workload,
                n=n,
                algorithm=algorithm,
                runs=len(group),
                cmax_min=cmax[0],
                cmax_avg=cmax[1],
                cmax_max=cmax[2],
                minsum_min=minsum[0],
                minsum_avg=minsum[1],
                minsum_max=minsum[2],
                runtime_avg=math.fsum(r.runtime_seconds for r in group) / len(group),
            )
        )
    return summaries
