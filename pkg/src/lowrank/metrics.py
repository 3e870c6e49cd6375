"""Evaluation metrics: relative recovery error, RMSE on held-out ratings, AUC."""

import numpy as np
from scipy.stats import rankdata


def relative_error(l_hat, l_ref):
    """Frobenius distance normalized by the reference norm."""
    l_hat = np.asarray(l_hat, dtype=np.float64)
    l_ref = np.asarray(l_ref, dtype=np.float64)
    if l_hat.shape != l_ref.shape:
        raise ValueError(f"shape mismatch: {l_hat.shape} vs {l_ref.shape}")
    ref_norm = np.linalg.norm(l_ref)
    if ref_norm == 0:
        raise ValueError("reference matrix has zero norm")
    return float(np.linalg.norm(l_hat - l_ref) / ref_norm)


def rmse(predicted, test_triplets):
    """Root mean squared error of a prediction matrix over test triplets."""
    predicted = np.asarray(predicted, dtype=np.float64)
    if len(test_triplets) == 0:
        raise ValueError("empty test set")
    sq = 0.0
    for u, i, value in test_triplets:
        sq += (value - predicted[u, i]) ** 2
    return float(np.sqrt(sq / len(test_triplets)))


def auc(scores, labels):
    """Area under the ROC curve, Mann-Whitney form with ties counted half.

    Equals the fraction of (positive, negative) pairs whose positive score
    is the larger, computed from average ranks in O(n log n).
    """
    scores = np.asarray(scores, dtype=np.float64).ravel()
    labels = np.asarray(labels, dtype=bool).ravel()
    if scores.shape != labels.shape:
        raise ValueError("scores and labels must have equal length")
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("both classes must be present")
    ranks = rankdata(scores)
    u_stat = ranks[labels].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u_stat / (n_pos * n_neg))
