"""Run scenarios, emit trajectory CSVs and summarize entropy verdicts."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analysis import DEFAULT_TOLERANCE, Trend, Verdict, endpoint_verdict, monotonicity_verdict
from .dynamics import COLUMNS, Scenario, Trajectory, run_dynamics
from .errors import FileError

CSV_HEADER = ",".join(COLUMNS)


def _fmt(x: float) -> str:
    return f"{x + 0.0:.15g}"


def render_csv(trajectory: Trajectory, sample_every: int = 1) -> str:
    """CSV text; rows are thinned by ``sample_every`` but the final row is always kept."""
    data = trajectory.columns()
    keep = list(range(0, len(data), sample_every))
    if keep[-1] != len(data) - 1:
        keep.append(len(data) - 1)
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for i in keep:
        buf.write(",".join(_fmt(x) for x in data[i]) + "\n")
    return buf.getvalue()


def write_csv(trajectory: Trajectory, path, sample_every: int = 1) -> Path:
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_csv(trajectory, sample_every))
    except OSError as exc:
        raise FileError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_csv(path) -> tuple:
    """Return (header, rows) from a trajectory CSV."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc.strerror or exc}") from exc
    header, *lines = text.rstrip("\n").split("\n")
    rows = np.array([[float(v) for v in line.split(",")] for line in lines])
    return header, rows


@dataclass
class RunReport:
    scenario_name: str
    verdict: Verdict
    trend: Trend
    s_initial: float
    s_final: float
    n_initial: float
    n_final: float
    copies: int
    total: Verdict
    csv_path: Path | None = None
    warnings: list = field(default_factory=list)

    def format(self) -> str:
        lines = [
            f"scenario {self.scenario_name}: entropy {self.verdict.kind.value} ({self.trend.value} along the run)",
            f"  S_initial = {self.s_initial:.10f}   S_final = {self.s_final:.10f}",
            f"  <N>_initial = {self.n_initial:.10f}   <N>_final = {self.n_final:.10f}",
        ]
        if self.copies != 1:
            lines.append(
                f"  {self.copies} copies: S_initial = {self.total.s_initial:.10f}   S_final = {self.total.s_final:.10f}"
            )
        if self.csv_path is not None:
            lines.append(f"  samples written to {self.csv_path}")
        lines += [f"  warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def summarize(trajectory: Trajectory, tolerance: float = DEFAULT_TOLERANCE) -> RunReport:
    scenario = trajectory.scenario
    verdict = endpoint_verdict(trajectory, tolerance)
    return RunReport(
        scenario_name=scenario.name,
        verdict=verdict,
        trend=monotonicity_verdict(trajectory.entropy, tolerance),
        s_initial=verdict.s_initial,
        s_final=verdict.s_final,
        n_initial=float(trajectory.n_expect[0]),
        n_final=float(trajectory.n_expect[-1]),
        copies=scenario.copies,
        total=verdict.scaled(scenario.copies),
        warnings=list(trajectory.warnings),
    )


def run_scenario(scenario: Scenario, out_path=None, strict: bool = True) -> RunReport:
    """Integrate ``scenario``, write its CSV to ``out_path`` (if given) and report.

    Verdicts use every integrator step; ``sample_every`` only thins the CSV.
    """
    trajectory = run_dynamics(scenario, strict=strict)
    report = summarize(trajectory)
    if out_path is not None:
        report.csv_path = write_csv(trajectory, out_path, scenario.sample_every)
    return report
