"""Solver configuration and result containers shared by all solvers."""

import csv
import math
import warnings
from dataclasses import dataclass, field

import numpy as np


@dataclass
class SolverConfig:
    lam: float | str = "auto"        # regularizer; "auto" -> sqrt(max(m, n))
    d: int = 10                      # initial rank bound
    rho: float = 1.1                 # penalty growth factor, (1.0, 1.1] advised
    alpha0: float | str = "auto"     # initial penalty; "auto" is solver-specific
    alpha_max: float = 1e10
    tol: float = 1e-4                # relative stopping tolerance
    max_iter: int = 500
    adjust_rank: bool = False
    seed: int = 0

    def validate(self):
        if self.d < 1:
            raise ValueError(f"rank bound d must be >= 1, got {self.d}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.lam != "auto" and self.lam < 0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")
        if self.alpha0 != "auto":
            if self.alpha0 <= 0:
                raise ValueError(f"alpha0 must be positive, got {self.alpha0}")
            if self.alpha_max < self.alpha0:
                raise ValueError(
                    f"alpha_max {self.alpha_max} < alpha0 {self.alpha0}"
                )
        if not 1.0 < self.rho <= 1.1:
            # Guideline from the penalty-schedule heuristic, not a hard bound.
            warnings.warn(
                f"rho={self.rho} outside (1.0, 1.1]; the penalty schedule is "
                "usually run with a growth factor in that range",
                stacklevel=2,
            )

    def resolve_lambda(self, m, n):
        return math.sqrt(max(m, n)) if self.lam == "auto" else float(self.lam)


@dataclass
class IterationRecord:
    iteration: int
    residual: float
    objective: float
    alpha: float
    d: int
    stop_ratio: float | None = None


@dataclass
class SolveResult:
    u: np.ndarray
    v: np.ndarray
    s: np.ndarray
    y: np.ndarray                    # matrix (RMC/MC) or vector (CPCP) multiplier
    trace: list[IterationRecord] = field(default_factory=list)
    termination: str = "max_iter_reached"   # "converged" | "max_iter_reached"

    @property
    def iterations(self):
        return len(self.trace)

    def low_rank(self):
        return self.u @ self.v.T


def write_trace_csv(path, trace, include_ratio=False):
    cols = ["iter", "residual", "objective", "alpha", "d"]
    if include_ratio:
        cols.append("stop_ratio")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for rec in trace:
            row = [
                rec.iteration,
                f"{rec.residual:.17g}",
                f"{rec.objective:.17g}",
                f"{rec.alpha:.17g}",
                rec.d,
            ]
            if include_ratio:
                ratio = rec.stop_ratio
                row.append("" if ratio is None else f"{ratio:.17g}")
            writer.writerow(row)
