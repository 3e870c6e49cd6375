"""Linearized ADMM for low-rank plus sparse recovery from subspace measurements.

The data-fit quadratic couples all matrix entries through the measurement
operator, so the factor and sparse updates each linearize it at the current
point and take a gradient step scaled by the reciprocal operator norm of the
measurement Gram operator, followed by the matching proximal map. The
multiplier lives in measurement space.
"""

from dataclasses import dataclass

import numpy as np

from .config import IterationRecord, SolveResult
from .linalg import spectral_norm
from .prox import soft_threshold, svt
from .rmc import nuclear_norm, orthonormal_factor

# Denominators below this are treated as zero in the stopping ratio.
_RATIO_FLOOR = 1e-30


@dataclass
class CpcpState:
    """Per-iteration snapshot handed to the diagnostics callback."""

    iteration: int
    u: np.ndarray
    v: np.ndarray
    s: np.ndarray
    t: np.ndarray          # cached u @ v.T
    y: np.ndarray          # measurement-space multiplier, length p
    alpha: float
    tau: float
    grad_t: np.ndarray     # data-fit gradient at the previous product
    grad_s: np.ndarray     # data-fit gradient at the previous sparse part
    t_prev: np.ndarray     # product before this iteration's update
    s_prev: np.ndarray     # sparse part before this iteration's update
    dual_prev: np.ndarray  # multiplier the gradients were evaluated with


def solve_cpcp(y_meas, q, cfg, iter_callback=None):
    """Recover a low-rank plus sparse matrix from p linear measurements."""
    cfg.validate()
    y_meas = np.asarray(y_meas, dtype=np.float64)
    if y_meas.ndim != 1 or y_meas.shape[0] != q.dim:
        raise ValueError(
            f"measurement vector of length {y_meas.shape} does not match "
            f"operator dimension {q.dim}"
        )
    if not np.all(np.isfinite(y_meas)):
        raise ValueError("measurements contain non-finite values")
    m, n = q.ambient_rows, q.ambient_cols
    if cfg.d > min(m, n):
        raise ValueError(f"rank bound d={cfg.d} exceeds min(m, n)={min(m, n)}")

    lam = cfg.resolve_lambda(m, n)
    y_norm = float(np.linalg.norm(y_meas))
    alpha = (1.0 / y_norm if y_norm > 0 else 1.0) \
        if cfg.alpha0 == "auto" else float(cfg.alpha0)
    # For an orthonormal basis the measurement Gram operator is an orthogonal
    # projection with unit norm; computed anyway so arbitrary operators work.
    gram_norm = spectral_norm(q.project, (m, n), seed=cfg.seed)
    tau = 1.0 / gram_norm

    d = cfg.d
    u = np.eye(m, d)
    v = np.zeros((n, d))
    s = np.zeros((m, n))
    t = u @ v.T
    dual = np.zeros(q.dim)
    trace = []
    termination = "max_iter_reached"

    for k in range(1, cfg.max_iter + 1):
        t_prev, s_prev, dual_prev = t, s, dual
        # The data-fit gradient carries a factor alpha, so the stable step
        # length is tau / alpha (reciprocal of the quadratic's Lipschitz
        # constant alpha * ||gram||); the raw 1/tau step diverges once the
        # penalty grows past the operator norm.
        step = tau / alpha
        grad_t = data_fit_gradient(t, s, y_meas, dual, alpha, q)
        b = t - step * grad_t
        u = orthonormal_factor(b @ v, u, "qr")
        # SVT of the d x n step target, applied in its n x d orientation
        # (unitarily equivalent) so the small side carries the thresholding.
        v = svt((u.T @ b).T, lam / alpha)
        t = u @ v.T
        grad_s = data_fit_gradient(s, t, y_meas, dual, alpha, q)
        s = soft_threshold(s - step * grad_s, 1.0 / alpha)
        dual = dual + alpha * (y_meas - q.forward(t + s))

        residual = float(np.linalg.norm(y_meas - q.forward(t + s)))
        objective = float(np.abs(s).sum()) + lam * nuclear_norm(v)
        denom = float(np.linalg.norm(t_prev) ** 2 + np.linalg.norm(s_prev) ** 2)
        numer = float(
            np.linalg.norm(t - t_prev) ** 2 + np.linalg.norm(s - s_prev) ** 2
        )
        ratio = numer / denom if denom >= _RATIO_FLOOR else None
        trace.append(IterationRecord(k, residual, objective, alpha, d, ratio))
        if iter_callback is not None:
            iter_callback(
                CpcpState(k, u, v, s, t, dual, alpha, tau, grad_t, grad_s,
                          t_prev, s_prev, dual_prev)
            )
        if k > 1 and ratio is not None and ratio < cfg.tol:
            termination = "converged"
            break
        alpha = min(cfg.rho * alpha, cfg.alpha_max)

    return SolveResult(u=u, v=v, s=s, y=dual, trace=trace, termination=termination)


def data_fit_gradient(point, other, y_meas, dual, alpha, q):
    """Gradient of the linearized data-fit quadratic at ``point``.

    The quadratic is (alpha/2) * || y - P(point + other) + dual/alpha ||^2
    with P the measurement forward map; used by the solver for both the
    product and the sparse blocks, and exposed for finite-difference checks.
    """
    return alpha * q.adjoint(q.forward(point + other) - y_meas - dual / alpha)
