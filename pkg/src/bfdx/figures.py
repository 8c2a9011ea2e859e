"""Plot data for the log point-alternative Bayes factor against mu.

Figure 1 shows a single curve at ``n = 5000``. Figure 2 overlays ``n = 5000``
and ``n = 10000`` at the same sample mean. Each curve has 1001 evenly spaced
``mu`` values on ``[-0.02, 0.10]``. The ``log_q`` and ``log_inv_q`` columns
carry the two horizontal reference levels.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .bayes_factors import GaussianSummary, check_threshold, log_point_bf, robert_required_mean
from .errors import DomainError
from .output import format_number

__all__ = ["FigureScenario", "MU_GRID", "default_scenario", "figure_rows", "emit_figure_data"]

MU_GRID = np.linspace(-0.02, 0.10, 1001)


@dataclass(frozen=True)
class FigureScenario:
    """Threshold, curve sample sizes and the shared sample mean.

    ``mean=None`` means the Robert-threshold mean at the first sample size,
    i.e. the sample mean where the Robert factor equals ``q``.
    """

    q: float = 3.0
    ns: tuple[int, ...] = (5000,)
    mean: float | None = None

    def resolved_mean(self) -> float:
        if self.mean is not None:
            return self.mean
        return robert_required_mean(self.q, self.ns[0])


def default_scenario(figure: int, q: float = 3.0) -> FigureScenario:
    if figure == 1:
        return FigureScenario(q=q, ns=(5000,))
    if figure == 2:
        return FigureScenario(q=q, ns=(5000, 10000))
    raise DomainError(f"figure must be 1 or 2, got {figure!r}")


def figure_rows(figure: int, scenario: FigureScenario) -> tuple[list[str], list[list[float]]]:
    if figure not in (1, 2):
        raise DomainError(f"figure must be 1 or 2, got {figure!r}")
    q = check_threshold(scenario.q)
    if not scenario.ns:
        raise DomainError("scenario needs at least one sample size")
    mean = scenario.resolved_mean()
    log_q = math.log(q)
    header = ["mu", "log_bf", "log_q", "log_inv_q"]
    if figure == 2:
        header.insert(2, "n")
    rows = []
    for n in scenario.ns:
        s = GaussianSummary(n, mean)
        for mu in MU_GRID:
            row = [float(mu), log_point_bf(0.0, float(mu), s), log_q, -log_q]
            if figure == 2:
                row.insert(2, n)
            rows.append(row)
    return header, rows


def emit_figure_data(figure: int, scenario: FigureScenario, out: TextIO) -> int:
    """Write the figure's curves as CSV to ``out`` and return the row count."""
    header, rows = figure_rows(figure, scenario)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(format_number(v) for v in row)
    return len(rows)
