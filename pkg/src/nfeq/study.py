"""Mesh-refinement studies and empirical convergence orders."""
from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .collocation import CollocationError, solve_collocation
from .functions import FunctionHandle, eval_on
from .linalg import SingularMatrixError
from .oracles import ManufacturedProblem
from .problem import ProblemSpec

#: default number of sup-error sample points
DEFAULT_ERROR_SAMPLES = 4097
#: rungs below this N are recorded but excluded from the fit by default
DEFAULT_FIT_MIN_N = 16


class FitError(ValueError):
    """Too few usable (h, error) points to fit a convergence order."""


def error_sample_points(m: int) -> np.ndarray:
    """m uniform midpoint samples (j+1/2)/m.

    For odd m at most the single point 1/2 can land on a dyadic grid node,
    so nodal super-accuracy cannot fake the measured order."""
    if m < 1:
        raise ValueError(f"need at least 1 sample, got {m}")
    return (np.arange(m) + 0.5) / m


@dataclass(frozen=True)
class LadderRung:
    n: int
    h: float
    sup_error: float
    runtime: float


@dataclass(frozen=True)
class ConvergenceReport:
    problem_label: str
    gamma: float
    ladder: list
    fitted_order: float
    fit_residual: float
    theory_order: float
    notes: list = field(default_factory=list)
    failure: Optional[str] = None


def fit_order(points) -> tuple[float, float]:
    """Ordinary least squares of log(error) on log(h); returns (slope, RMS residual)."""
    usable = [(h, e) for h, e in points if e > 0.0]
    if len(usable) < 2:
        raise FitError(f"need at least 2 positive-error points, got {len(usable)}")
    logs_h = np.log([h for h, _ in usable])
    logs_e = np.log([e for _, e in usable])
    slope, intercept = np.polyfit(logs_h, logs_e, 1)
    resid = logs_e - (slope * logs_h + intercept)
    return float(slope), float(np.sqrt(np.mean(resid ** 2)))


def run_study(problem, exact: FunctionHandle | None = None,
              n_ladder=None, m: int = DEFAULT_ERROR_SAMPLES,
              fit_min_n: int = DEFAULT_FIT_MIN_N,
              smoothness_k: int = 0,
              label: str | None = None) -> ConvergenceReport:
    """Solve across the refinement ladder, measure sup errors, fit the order.

    ``problem`` may be a ProblemSpec (with ``exact`` supplied) or a
    ManufacturedProblem (its own exact solution is used). A solver failure
    on a rung leaves a partial ladder with the failure recorded.
    """
    if isinstance(problem, ManufacturedProblem):
        spec = problem.problem
        exact = exact or problem.exact
        label = label or problem.description
    else:
        spec = problem
        label = label or "problem"
    if exact is None:
        raise ValueError("an exact solution is required to measure errors")
    ladder = sorted(int(n) for n in (n_ladder or []))
    if len(ladder) < 4:
        raise ValueError(f"ladder needs at least 4 entries, got {len(ladder)}")
    if ladder[0] < 2:
        raise ValueError(f"every rung needs N >= 2, got {ladder[0]}")

    ts = error_sample_points(m)
    exact_vals = eval_on(exact, ts)

    rungs: list[LadderRung] = []
    notes: list[str] = []
    failure = None
    for n in ladder:
        t0 = time.perf_counter()
        try:
            sol = solve_collocation(spec, n)
        except (CollocationError, SingularMatrixError) as exc:
            failure = f"N={n}: {exc}"
            break
        err = float(np.abs(sol.solution.evaluate(ts) - exact_vals).max())
        rungs.append(LadderRung(n=n, h=1.0 / n, sup_error=err,
                                runtime=time.perf_counter() - t0))

    fit_points = [(r.h, r.sup_error) for r in rungs if r.n >= fit_min_n]
    excluded = [r for r in rungs if r.n < fit_min_n]
    if excluded:
        notes.append(f"excluded {len(excluded)} pre-asymptotic rungs (N < {fit_min_n})")
    zero_rungs = [r for r in rungs if r.n >= fit_min_n and r.sup_error <= 0.0]
    if zero_rungs:
        notes.append(f"excluded {len(zero_rungs)} zero-error rungs from the fit")
    try:
        fitted, resid = fit_order(fit_points)
    except FitError as exc:
        fitted, resid = math.nan, math.nan
        notes.append(str(exc))

    return ConvergenceReport(problem_label=label, gamma=spec.gamma, ladder=rungs,
                             fitted_order=fitted, fit_residual=resid,
                             theory_order=smoothness_k + spec.gamma,
                             notes=notes, failure=failure)


def write_report_csv(report: ConvergenceReport, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["N", "h", "error", "runtime"])
        for r in report.ladder:
            writer.writerow([r.n, f"{r.h:.17g}", f"{r.sup_error:.17g}",
                             f"{r.runtime:.17g}"])


def summary_line(report: ConvergenceReport) -> str:
    line = (f"{report.problem_label}: fitted_order={report.fitted_order:.4f} "
            f"theory_order={report.theory_order:.4f} "
            f"fit_residual={report.fit_residual:.3e}")
    if report.failure:
        line += f" [partial: {report.failure}]"
    return line
