"""ADMM solvers for robust matrix completion, RPCA, and plain matrix completion.

The robust solver alternates an orthogonality-constrained factor update (thin
QR of the current target times the right factor), singular value thresholding
of the small factor-side matrix, elementwise shrinkage of the sparse part on
the observed entries (exact fill-in off them), then dual ascent with a
geometric penalty schedule. A once-only rank-shrinking heuristic watches the
eigenvalue quotients of V^T V for a dominant spectral jump.
"""

import numpy as np

from .config import IterationRecord, SolveResult
from .linalg import check_matrix, qr_thin, svd_thin
from .measurements import ObservationMask, mask_project
from .prox import soft_threshold, svt

# Threshold below which the factor-update input is considered all-zero and
# the orthonormal factor is carried over unchanged (both update schemes must
# handle this degenerate case identically for their iterates to match).
_DEGENERATE = 1e-300

# The once-only rank adjustment is first evaluated at this iteration.
RANK_ADJUST_START = 3

# A spectral jump must dominate the mean quotient by this factor to fire.
RANK_ADJUST_GAP = 10.0


def nuclear_norm(a):
    return float(np.linalg.svd(a, compute_uv=False).sum())


def orthonormal_factor(p_times_v, previous, scheme):
    """Update the orthonormal factor from the m x d product target.

    scheme "qr": orthonormal basis of the column span via thin QR.
    scheme "svd": the polar factor (closest orthonormal matrix). Both give
    identical products with the subsequent thresholded right factor.
    """
    if np.max(np.abs(p_times_v), initial=0.0) < _DEGENERATE:
        return previous
    if scheme == "qr":
        return qr_thin(p_times_v).q
    if scheme == "svd":
        f = svd_thin(p_times_v)
        d = p_times_v.shape[1]
        if f.rank < d:
            # Rank-deficient polar factor is not unique; keep the carried
            # basis so both schemes stay comparable.
            return previous
        return f.u @ f.v.T
    raise ValueError(f"unknown factor update scheme {scheme!r}")


def adjust_rank_once(v, current_d):
    """Detect a dominant jump in the spectrum of V^T V and return the new rank.

    Eigenvalues of the d x d Gram matrix are sorted nonincreasing, the
    quotient sequence formed over the positive part of the spectrum, and the
    working rank cut at the largest quotient when it dominates the rest by
    RANK_ADJUST_GAP. The exactly zero tail left behind by the thresholded
    factor update is excluded: it marks the current numerical rank, not the
    spectral jump this heuristic looks for, and keeping it would make the
    detector fire on the first iteration with any rank-deficient factor.
    """
    if current_d < 2:
        return current_d
    eigvals = np.linalg.eigvalsh(v.T @ v)[::-1]
    positive = eigvals[eigvals > max(eigvals[0], 0.0) * 1e-12]
    if positive.size < 2:
        return current_d
    quotients = positive[:-1] / positive[1:]
    r_hat = int(np.argmax(quotients))
    others = quotients.sum() - quotients[r_hat]
    if others == 0.0:
        return r_hat + 1
    gap = (positive.size - 1) * quotients[r_hat] / others
    if gap >= RANK_ADJUST_GAP:
        return r_hat + 1
    return current_d


def _rank_truncation_basis(v, new_d):
    """Orthonormal d x new_d basis of the top eigendirections of V^T V."""
    eigvals, eigvecs = np.linalg.eigh(v.T @ v)
    order = np.argsort(eigvals)[::-1]
    return eigvecs[:, order[:new_d]]


def solve_rmc(d_obs, mask, cfg, u_scheme="qr", iter_callback=None):
    """Robust matrix completion: sparse errors plus trace-norm factor penalty.

    ``d_obs`` is the observed data with unknown entries zero (enforced by
    masking). ``u_scheme`` selects the QR or the SVD (polar) factor update;
    the two produce identical products. ``iter_callback(k, u, v, s, y)`` is
    invoked after each iteration's dual update, for diagnostics.
    """
    cfg.validate()
    d_full = check_matrix(d_obs, "observed data")
    m, n = d_full.shape
    if mask.marker.shape != (m, n):
        raise ValueError(f"mask shape {mask.marker.shape} != data shape {(m, n)}")
    if mask.num_observed == 0:
        raise ValueError("observation mask is empty")
    if cfg.d > min(m, n):
        raise ValueError(f"rank bound d={cfg.d} exceeds min(m, n)={min(m, n)}")

    data = mask_project(d_full, mask)
    marker = mask.marker
    lam = cfg.resolve_lambda(m, n)
    obs_norm = float(np.linalg.norm(data))
    alpha = (1.0 / obs_norm if obs_norm > 0 else 1.0) \
        if cfg.alpha0 == "auto" else float(cfg.alpha0)
    threshold = cfg.tol * obs_norm if obs_norm > 0 else cfg.tol

    d = cfg.d
    u = np.eye(m, d)
    v = np.zeros((n, d))
    s = np.zeros((m, n))
    y = np.zeros((m, n))
    adjusted = False
    trace = []
    termination = "max_iter_reached"

    for k in range(1, cfg.max_iter + 1):
        p = data - s + y / alpha
        u = orthonormal_factor(p @ v, u, u_scheme)
        pt_u = p.T @ u
        assert pt_u.shape == (n, d)  # thresholding stays on the small factor side
        v = svt(pt_u, lam / alpha)
        low_rank = u @ v.T
        a = data - low_rank + y / alpha
        s = np.where(marker, soft_threshold(a, 1.0 / alpha), a)
        residual_mat = data - low_rank - s
        y = y + alpha * residual_mat
        residual = float(np.linalg.norm(residual_mat))
        objective = float(np.abs(s[marker]).sum()) + lam * nuclear_norm(v)
        trace.append(IterationRecord(k, residual, objective, alpha, d))
        if iter_callback is not None:
            iter_callback(k, u, v, s, y)
        if residual < threshold:
            termination = "converged"
            break
        alpha = min(cfg.rho * alpha, cfg.alpha_max)
        if cfg.adjust_rank and not adjusted and k >= RANK_ADJUST_START and d >= 2:
            new_d = adjust_rank_once(v, d)
            if new_d != d:
                basis = _rank_truncation_basis(v, new_d)
                v = v @ basis
                u = u @ basis
                d = new_d
                adjusted = True

    s = mask_project(s, mask)  # expected output has S zero off the mask
    return SolveResult(u=u, v=v, s=s, y=y, trace=trace, termination=termination)


def solve_rpca(d_obs, cfg, u_scheme="qr", iter_callback=None):
    """RPCA: the fully observed special case of robust matrix completion."""
    d_obs = check_matrix(d_obs, "observed data")
    full = ObservationMask.full(*d_obs.shape)
    return solve_rmc(d_obs, full, cfg, u_scheme=u_scheme, iter_callback=iter_callback)


def solve_mc(d_obs, mask, cfg, iter_callback=None):
    """Matrix completion without a sparse term: least-squares data fit plus
    trace-norm factor penalty, split via an auxiliary full matrix constrained
    to equal the factor product.

    The auxiliary matrix has a closed-form update: a convex blend of data and
    product on observed entries, the product minus the scaled multiplier off
    them. Stops on small relative change of the product or near-exact
    feasibility of the auxiliary constraint.
    """
    cfg.validate()
    d_full = check_matrix(d_obs, "observed data")
    m, n = d_full.shape
    if mask.marker.shape != (m, n):
        raise ValueError(f"mask shape {mask.marker.shape} != data shape {(m, n)}")
    if mask.num_observed == 0:
        raise ValueError("observation mask is empty")
    if cfg.d > min(m, n):
        raise ValueError(f"rank bound d={cfg.d} exceeds min(m, n)={min(m, n)}")

    data = mask_project(d_full, mask)
    marker = mask.marker
    lam = cfg.resolve_lambda(m, n)
    obs_norm = float(np.linalg.norm(data))
    alpha = (1.0 / obs_norm if obs_norm > 0 else 1.0) \
        if cfg.alpha0 == "auto" else float(cfg.alpha0)
    threshold = cfg.tol * obs_norm if obs_norm > 0 else cfg.tol

    d = cfg.d
    u = np.eye(m, d)
    v = np.zeros((n, d))
    aux = data.copy()
    y = np.zeros((m, n))
    low_rank = u @ v.T
    adjusted = False
    trace = []
    termination = "max_iter_reached"

    for k in range(1, cfg.max_iter + 1):
        prev_low_rank = low_rank
        p = aux + y / alpha
        u = orthonormal_factor(p @ v, u, "qr")
        v = svt(p.T @ u, lam / alpha)
        low_rank = u @ v.T
        aux = np.where(
            marker,
            (data + alpha * low_rank - y) / (1.0 + alpha),
            low_rank - y / alpha,
        )
        residual_mat = aux - low_rank
        y = y + alpha * residual_mat
        residual = float(np.linalg.norm(residual_mat))
        objective = 0.5 * float(
            np.sum((data[marker] - low_rank[marker]) ** 2)
        ) + lam * nuclear_norm(v)
        trace.append(IterationRecord(k, residual, objective, alpha, d))
        if iter_callback is not None:
            iter_callback(k, u, v, aux, y)
        change = float(np.linalg.norm(low_rank - prev_low_rank))
        base = float(np.linalg.norm(prev_low_rank))
        if (base > 0 and change < cfg.tol * base) or residual < threshold:
            termination = "converged"
            break
        alpha = min(cfg.rho * alpha, cfg.alpha_max)
        if cfg.adjust_rank and not adjusted and k >= RANK_ADJUST_START and d >= 2:
            new_d = adjust_rank_once(v, d)
            if new_d != d:
                basis = _rank_truncation_basis(v, new_d)
                v = v @ basis
                u = u @ basis
                d = new_d
                adjusted = True

    s = np.zeros((m, n))
    return SolveResult(u=u, v=v, s=s, y=y, trace=trace, termination=termination)
