"""
Exhaustive weak learner: every (type, geometry) candidate with an exact stump.
"""
import logging
from typing import Tuple

import numpy as np

from app.core.errors import NoValidClassifierError
from app.core.haar import enumerate_geometries, haar_values
from app.core.stump import learn_stumps
from app.models.classifier import WeakClassifier
from app.models.dataset import Dataset
from app.models.geometry import HaarGeometry, HaarType
from app.models.learning import LearnerOutcome

logger = logging.getLogger(__name__)

# Candidates scored per vectorised batch; memory is O(CHUNK_SIZE * samples)
CHUNK_SIZE = 2048


def exhaustive_search(data: Dataset, weights, chunk_size: int = CHUNK_SIZE) -> Tuple[WeakClassifier, float, int]:
    """
    Score every candidate and keep the global minimum weighted error.

    Ties go to the lower type index, then the earlier enumeration position.

    Returns:
        (classifier, weighted error, candidates evaluated)
    """
    weights = np.asarray(weights, dtype=np.float64)
    integrals = data.integral_images()
    labels = data.labels

    # Scan types in index order so ties keep the earlier candidate
    best_error = np.inf
    best = None
    evaluated = 0
    for haar_type in HaarType:
        rows = enumerate_geometries(haar_type, data.window_w, data.window_h)
        type_best = np.inf
        for start in range(0, len(rows), chunk_size):
            chunk = rows[start:start + chunk_size]
            # Evaluate the chunk on every window and solve all its stumps at once
            values = haar_values(integrals, chunk, haar_type)
            polarity, threshold, errors = learn_stumps(values, labels, weights)
            evaluated += len(chunk)
            index = int(np.argmin(errors))
            type_best = min(type_best, float(errors[index]))
            # Strict improvement only
            if errors[index] < best_error:
                best_error = float(errors[index])
                best = (haar_type, chunk[index], int(polarity[index]), float(threshold[index]))
        logger.debug("exhaustive type=%s candidates=%d best_error=%.6g",
                     haar_type.tag, len(rows), type_best)

    if best is None:
        raise NoValidClassifierError(
            f"no haar geometry fits a {data.window_w}x{data.window_h} window"
        )
    haar_type, row, polarity, threshold = best
    classifier = WeakClassifier(
        geometry=HaarGeometry.from_row(row),
        haar_type=haar_type,
        polarity=polarity,
        threshold=threshold,
    )
    return classifier, best_error, evaluated


def exhaustive_weak_learner(data: Dataset, weights) -> Tuple[WeakClassifier, int]:
    """
    Minimum-weighted-error weak classifier over the full candidate space.

    Returns:
        (classifier, number of candidates evaluated)
    """
    classifier, _, evaluated = exhaustive_search(data, weights)
    return classifier, evaluated


class ExhaustiveWeakLearner:
    """
    Boosting adapter around exhaustive_search.
    """

    def __init__(self, chunk_size: int = CHUNK_SIZE):
        self.chunk_size = chunk_size

    def __call__(self, data: Dataset, weights, round_index: int = 0) -> LearnerOutcome:
        classifier, error, evaluated = exhaustive_search(data, weights, self.chunk_size)
        return LearnerOutcome(
            classifier=classifier,
            error=error,
            evaluations=evaluated,
            zero_error=error == 0.0,
        )

    def describe(self) -> str:
        return "exhaustive"
