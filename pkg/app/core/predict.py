"""
Prediction with weak and strong haar classifiers.
"""
import numpy as np

from app.core.errors import WindowMismatchError
from app.core.haar import haar_value, haar_values, window_of
from app.core.stump import stump_predict, stump_predictions
from app.models.classifier import StrongClassifier, WeakClassifier


def weak_predict(weak: WeakClassifier, integral: np.ndarray) -> int:
    """
    Label one window with a weak classifier.

    Raises:
        WindowMismatchError: if the geometry does not fit the image window
    """
    window_w, window_h = window_of(integral)
    if not weak.fits(window_w, window_h):
        raise WindowMismatchError(
            f"weak classifier {weak.geometry.as_row()} does not fit a {window_w}x{window_h} window"
        )
    return stump_predict(haar_value(integral, weak.geometry, weak.haar_type), weak.stump)


def weak_predictions(weak: WeakClassifier, integrals: np.ndarray) -> np.ndarray:
    """
    Label every window of an integral stack with one weak classifier.
    """
    window_w, window_h = window_of(integrals)
    if not weak.fits(window_w, window_h):
        raise WindowMismatchError(
            f"weak classifier {weak.geometry.as_row()} does not fit a {window_w}x{window_h} window"
        )
    values = haar_values(integrals, [weak.geometry.as_row()], weak.haar_type)[..., 0]
    return stump_predictions(values, weak.polarity, weak.threshold)


def strong_scores(strong: StrongClassifier, integrals: np.ndarray) -> np.ndarray:
    """
    Real-valued margin sum_i alpha_i * w_i(y) for a table or a stack.
    """
    _check_window(strong, integrals)
    scores = np.zeros(integrals.shape[:-2], dtype=np.float64)
    for stage in strong.stages:
        scores = scores + stage.alpha * weak_predictions(stage.weak, integrals)
    return scores


def strong_predict(strong: StrongClassifier, integral: np.ndarray) -> int:
    """
    Label one window; a margin of exactly zero counts as +1.
    """
    return 1 if float(strong_scores(strong, integral)) >= 0 else -1


def strong_predictions(strong: StrongClassifier, integrals: np.ndarray) -> np.ndarray:
    """Vectorised strong_predict over an integral stack."""
    return np.where(strong_scores(strong, integrals) >= 0, 1, -1).astype(np.int64)


def _check_window(strong: StrongClassifier, integrals: np.ndarray) -> None:
    window_w, window_h = window_of(integrals)
    if (window_w, window_h) != (strong.window_w, strong.window_h):
        raise WindowMismatchError(
            f"model window {strong.window_w}x{strong.window_h} does not match "
            f"image window {window_w}x{window_h}"
        )
