"""
Exact learner for the linked stump parameters (polarity and threshold).

A stump predicts ``polarity`` when the feature value exceeds the threshold
and ``-polarity`` otherwise. Candidate thresholds are ``min - 1``, the
midpoints between consecutive distinct sorted values and ``max + 1``; among
equal errors the smallest threshold wins, then polarity +1.
"""
from typing import Tuple

import numpy as np

from app.core.errors import LengthMismatchError
from app.models.classifier import StumpParams


def stump_predict(value: float, params: StumpParams) -> int:
    """
    Classify one feature value. Ties at the threshold go to -polarity.
    """
    return params.polarity if value > params.threshold else -params.polarity


def stump_predictions(values: np.ndarray, polarity: int, threshold: float) -> np.ndarray:
    """Vectorised stump_predict."""
    values = np.asarray(values)
    return np.where(values > threshold, polarity, -polarity).astype(np.int64)


def learn_stump(values, labels, weights) -> Tuple[StumpParams, float]:
    """
    Find the polarity and threshold with minimum weighted error.

    Args:
        values: Feature value per sample
        labels: Labels in {-1, +1}
        weights: Normalised sample weights

    Returns:
        (StumpParams, weighted error)
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError("values must be one-dimensional")
    polarity, threshold, error = learn_stumps(values[:, np.newaxis], labels, weights)
    return StumpParams(polarity=int(polarity[0]), threshold=float(threshold[0])), float(error[0])


def learn_stumps(values, labels, weights) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Solve one stump problem per column of ``values`` in O(m log m) each.

    Args:
        values: Array of shape (m, k), one feature per column
        labels: Labels in {-1, +1}, length m
        weights: Normalised sample weights, length m

    Returns:
        (polarities, thresholds, errors), each of shape (k,)
    """
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels)
    weights = np.asarray(weights, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError("values must have shape (samples, features)")
    m, k = values.shape
    if m == 0:
        raise LengthMismatchError("stump learning needs at least one sample")
    if labels.shape != (m,) or weights.shape != (m,):
        raise LengthMismatchError(
            f"got {m} values, {labels.size} labels and {weights.size} weights"
        )

    order = np.argsort(values, axis=0, kind="stable")
    sorted_values = np.take_along_axis(values, order, axis=0)
    positive = np.where(labels > 0, weights, 0.0)[order]
    negative = np.where(labels < 0, weights, 0.0)[order]

    # cum_*[i] is the mass of the i smallest values, i = 0..m
    zeros = np.zeros((1, k))
    cum_pos = np.concatenate([zeros, np.cumsum(positive, axis=0)])
    cum_neg = np.concatenate([zeros, np.cumsum(negative, axis=0)])
    total_pos = cum_pos[-1]
    total_neg = cum_neg[-1]

    err_plus = cum_pos + (total_neg - cum_neg)
    err_minus = cum_neg + (total_pos - cum_pos)

    # a cut between equal values is not a threshold
    boundary = np.ones((m + 1, k), dtype=bool)
    boundary[1:m] = sorted_values[:-1] != sorted_values[1:]
    err_plus[~boundary] = np.inf
    err_minus[~boundary] = np.inf

    # candidate order: threshold ascending, then polarity +1 before -1
    errors = np.stack([err_plus, err_minus], axis=1).reshape(2 * (m + 1), k)
    best = np.argmin(errors, axis=0)
    cut = best // 2
    polarity = np.where(best % 2 == 0, 1, -1)
    columns = np.arange(k)

    lower = sorted_values[np.maximum(cut - 1, 0), columns]
    upper = sorted_values[np.minimum(cut, m - 1), columns]
    threshold = np.where(
        cut == 0, sorted_values[0] - 1.0,
        np.where(cut == m, sorted_values[-1] + 1.0, (lower + upper) / 2.0),
    )
    return polarity, threshold, errors[best, columns]
