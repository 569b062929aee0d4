"""
Sample weights and error measures shared by all learners.
"""
import numpy as np

from app.core.errors import DegenerateWeightsError, LengthMismatchError, WindowMismatchError
from app.core.predict import strong_predictions
from app.models.classifier import StrongClassifier
from app.models.dataset import Dataset


def normalize_weights(weights) -> np.ndarray:
    """
    Scale non-negative weights so they sum to one.

    Raises:
        DegenerateWeightsError: if no entry is positive
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.size and weights.min() < 0:
        raise ValueError("weights must be non-negative")
    total = weights.sum()
    if not total > 0:
        raise DegenerateWeightsError()
    return weights / total


def uniform_weights(count: int) -> np.ndarray:
    """Uniform normalised weights for ``count`` samples."""
    return np.full(count, 1.0 / count)


def weighted_error(predictions, labels, weights) -> float:
    """
    Total weight of the samples whose prediction differs from the label.
    """
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    weights = np.asarray(weights, dtype=np.float64)
    if not (predictions.shape == labels.shape == weights.shape):
        raise LengthMismatchError(
            f"got {predictions.size} predictions, {labels.size} labels and {weights.size} weights"
        )
    return float(np.sum(weights[predictions != labels]))


def classification_error(strong: StrongClassifier, data: Dataset) -> float:
    """
    Unweighted fraction of misclassified samples.

    Raises:
        WindowMismatchError: if the model and dataset windows differ
    """
    if (strong.window_w, strong.window_h) != (data.window_w, data.window_h):
        raise WindowMismatchError(
            f"model window {strong.window_w}x{strong.window_h} does not match "
            f"dataset window {data.window_w}x{data.window_h}"
        )
    predictions = strong_predictions(strong, data.integral_images())
    return float(np.mean(predictions != data.labels))
