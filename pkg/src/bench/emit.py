"""Result files, plot data and optional figures.

``results.csv`` has one line per ResultRow with the columns of
RESULT_COLUMNS; floats are written with ``repr`` and missing values as
empty fields. ``summary.csv`` has one line per RatioSummary.

``plots/<workload>_<criterion>.dat`` holds, per task count, the min, average
and max ratio of every algorithm::

    # n <alg>_min <alg>_avg <alg>_max ...
    25 1.02 1.31 1.77 ...

``plots/runtime.dat`` holds the mean bicriteria runtime per task count and
workload.
"""
import csv
import logging
import re
from pathlib import Path
from typing import Dict, List, Sequence, Union

from src.bench.dto import RatioSummary, ResultRow

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

RESULT_COLUMNS = list(ResultRow.model_fields)
SUMMARY_COLUMNS = list(RatioSummary.model_fields)
CRITERIA = ("cmax", "minsum")
RUNTIME_ALGORITHM = "bicriteria"

_INT_COLUMNS = {"n", "run", "seed", "runs"}
_STR_COLUMNS = {"workload", "algorithm", "error"}


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_cell(column: str, text: str):
    if text == "":
        return None
    if column in _STR_COLUMNS:
        return text
    if column in _INT_COLUMNS:
        return int(text)
    return float(text)


def _write_text(path: Path, text: str):
    try:
        path.write_text(text)
    except OSError as e:
        raise OSError(f"Cannot write {path}: {e}") from e


def _write_csv(path: Path, columns: List[str], records: Sequence[dict]):
    try:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for record in records:
                writer.writerow([_cell(record[c]) for c in columns])
    except OSError as e:
        raise OSError(f"Cannot write {path}: {e}") from e


def write_results(rows: Sequence[ResultRow], path: PathLike):
    _write_csv(Path(path), RESULT_COLUMNS, [row.model_dump() for row in rows])


def read_results(path: PathLike) -> List[ResultRow]:
    """Read rows written by write_results.

    Raises:
        OSError: If the file cannot be read
        ValueError: If the header does not match RESULT_COLUMNS
    """
    path = Path(path)
    try:
        with open(path, newline="") as f:
            reader = csv.reader(f)
            header = next(reader, None)
            if header != RESULT_COLUMNS:
                raise ValueError(f"{path}: unexpected header {header}")
            rows = []
            for record in reader:
                values = {c: _parse_cell(c, t) for c, t in zip(RESULT_COLUMNS, record)}
                if values["runtime_seconds"] is None:
                    values["runtime_seconds"] = 0.0
                rows.append(ResultRow(**values))
    except OSError as e:
        raise OSError(f"Cannot read {path}: {e}") from e
    return rows


def write_summary(summaries: Sequence[RatioSummary], path: PathLike):
    _write_csv(Path(path), SUMMARY_COLUMNS, [s.model_dump() for s in summaries])


def plot_name(workload: str) -> str:
    """File-name-safe form of a workload tag."""
    return re.sub(r"[^A-Za-z0-9_.+-]", "_", workload)


def plot_tables(summaries: Sequence[RatioSummary]) -> Dict[str, str]:
    """Plot-data files by name: one per (workload, criterion) plus runtime.dat."""
    workloads: List[str] = []
    algorithms: List[str] = []
    counts: List[int] = []
    cell: Dict[tuple, RatioSummary] = {}
    for s in summaries:
        for seen, value in ((workloads, s.workload), (algorithms, s.algorithm), (counts, s.n)):
            if value not in seen:
                seen.append(value)
        cell[(s.workload, s.n, s.algorithm)] = s
    counts.sort()

    tables = {}
    for workload in workloads:
        for criterion in CRITERIA:
            header = ["n"] + [f"{a}_{stat}" for a in algorithms for stat in ("min", "avg", "max")]
            lines = ["# " + " ".join(header)]
            for n in counts:
                fields = [str(n)]
                for algorithm in algorithms:
                    s = cell.get((workload, n, algorithm))
                    if s is None:
                        fields += ["nan"] * 3
                        continue
                    fields += [
                        repr(getattr(s, f"{criterion}_{stat}")) for stat in ("min", "avg", "max")
                    ]
                lines.append(" ".join(fields))
            tables[f"{plot_name(workload)}_{criterion}.dat"] = "\n".join(lines) + "\n"

    if RUNTIME_ALGORITHM in algorithms:
        lines = ["# n " + " ".join(plot_name(w) for w in workloads)]
        for n in counts:
            fields = [str(n)]
            for workload in workloads:
                s = cell.get((workload, n, RUNTIME_ALGORITHM))
                fields.append("nan" if s is None else repr(s.runtime_avg))
            lines.append(" ".join(fields))
        tables["runtime.dat"] = "\n".join(lines) + "\n"
    return tables


def gnuplot_script(dat_name: str, columns: List[str]) -> str:
    """gnuplot script plotting every *_avg column (or every column) against n."""
    stem = dat_name[: -len(".dat")]
    series = [
        (i, name) for i, name in enumerate(columns[1:], start=2)
        if name.endswith("_avg") or stem == "runtime"
    ]
    ylabel = "seconds" if stem == "runtime" else "performance ratio"
    plots = ", ".join(
        f"'{dat_name}' using 1:{i} with linespoints title '{name.removesuffix('_avg')}'"
        for i, name in series
    )
    return "\n".join([
        "set terminal pngcairo size 800,600",
        f"set output '{stem}.png'",
        f"set title '{stem}'",
        "set xlabel 'number of tasks'",
        f"set ylabel '{ylabel}'",
        "set key left top",
        f"plot {plots}",
        "",
    ])


def render_figure(dat_path: Path, columns: List[str]) -> Path:
    """Render a plot-data file to a PNG next to it with matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = [
        [float(v) for v in line.split()]
        for line in dat_path.read_text().splitlines()
        if line and not line.startswith("#")
    ]
    stem = dat_path.stem
    xs = [r[0] for r in rows]

    fig, ax = plt.subplots(figsize=(8, 6))
    ax.grid(True, color="#D3D3D3")
    if stem == "runtime":
        for i, name in enumerate(columns[1:], start=1):
            ax.plot(xs, [r[i] for r in rows], marker="o", label=name)
        ax.set_ylabel("seconds")
    else:
        for i in range(1, len(columns), 3):
            name = columns[i].removesuffix("_min")
            low = [r[i] for r in rows]
            avg = [r[i + 1] for r in rows]
            high = [r[i + 2] for r in rows]
            line, = ax.plot(xs, avg, marker="o", label=name)
            ax.fill_between(xs, low, high, color=line.get_color(), alpha=0.15)
        ax.set_ylabel("performance ratio")
    ax.set_xlabel("number of tasks")
    ax.set_title(stem)
    ax.legend(frameon=False)
    png = dat_path.with_suffix(".png")
    try:
        fig.savefig(png)
    except OSError as e:
        raise OSError(f"Cannot write {png}: {e}") from e
    finally:
        plt.close(fig)
    return png


def emit(
    rows: Sequence[ResultRow],
    summaries: Sequence[RatioSummary],
    out_dir: PathLike,
    gnuplot: bool = False,
    figures: bool = False,
) -> List[Path]:
    """Write results.csv, summary.csv and plots/ under out_dir.

    Args:
        rows: Result rows
        summaries: Output of summarize(rows)
        out_dir: Output directory, created if missing
        gnuplot: Also write a .gp script per plot-data file
        figures: Also render a .png per plot-data file

    Returns:
        Paths of all files written

    Raises:
        OSError: If a file or directory cannot be written; the message names the path
    """
    out_dir = Path(out_dir)
    plots_dir = out_dir / "plots"
    try:
        plots_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OSError(f"Cannot create {plots_dir}: {e}") from e

    written = [out_dir / "results.csv", out_dir / "summary.csv"]
    write_results(rows, written[0])
    write_summary(summaries, written[1])

    for name, text in plot_tables(summaries).items():
        dat_path = plots_dir / name
        _write_text(dat_path, text)
        written.append(dat_path)
        columns = text.splitlines()[0][2:].split()
        if gnuplot:
            gp_path = dat_path.with_suffix(".gp")
            _write_text(gp_path, gnuplot_script(name, columns))
            written.append(gp_path)
        if figures:
            written.append(render_figure(dat_path, columns))

    logger.info(f"Wrote {len(written)} files to {out_dir}")
    return written


def ratio_table(summaries: Sequence[RatioSummary]) -> str:
    """Average ratios of both criteria, one line per point and algorithm."""
    lines = [f"{'workload':<16} {'n':>5} {'algorithm':<12} {'cmax':>8} {'minsum':>8}"]
    for s in summaries:
        lines.append(
            f"{s.workload:<16} {s.n:>5} {s.algorithm:<12} {s.cmax_avg:>8.4f} {s.minsum_avg:>8.4f}"
        )
    return "\n".join(lines)
