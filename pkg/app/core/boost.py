"""
Discrete AdaBoost over haar decision stumps with a pluggable weak learner.
"""
import logging
import math
import time
from typing import Callable, Optional, Protocol

import numpy as np

from app.core.errors import WeakLearnerError
from app.core.metrics import normalize_weights, uniform_weights, weighted_error
from app.core.predict import weak_predictions
from app.models.classifier import Stage, StrongClassifier
from app.models.dataset import Dataset
from app.models.learning import LearnerOutcome, RoundReport

logger = logging.getLogger(__name__)

# epsilon is clamped into [EPSILON_MIN, 0.5 - EPSILON_MIN] so alpha stays finite
EPSILON_MIN = 1e-10
# tolerance on epsilon > 0.5 before the learner is declared broken
WEAKNESS_TOLERANCE = 1e-9


class WeakLearner(Protocol):
    def __call__(self, data: Dataset, weights: np.ndarray, round_index: int = 0) -> LearnerOutcome:
        ...


RoundObserver = Callable[[RoundReport], None]


def alpha_for(epsilon: float) -> float:
    """
    Vote weight 1/2 * ln((1 - eps) / eps) of a weak classifier, eps clamped.
    """
    clamped = min(max(epsilon, EPSILON_MIN), 0.5 - EPSILON_MIN)
    return 0.5 * math.log((1.0 - clamped) / clamped)


def adaboost_train(
    data: Dataset,
    learner: WeakLearner,
    rounds: int,
    observer: Optional[RoundObserver] = None,
) -> StrongClassifier:
    """
    Train a strong classifier with discrete AdaBoost.

    A weak classifier with zero weighted error ends training immediately and
    becomes the whole result as a single stage with alpha = 1.

    Args:
        data: Training windows with both labels present
        learner: Weak learner called once per round
        rounds: Number of boosting rounds T
        observer: Called with a RoundReport after every round

    Returns:
        The trained StrongClassifier

    Raises:
        WeakLearnerError: if a learner returns weighted error above 0.5
    """
    if rounds <= 0:
        raise ValueError("rounds must be positive")
    data.require_both_labels()

    # Start from uniform weights over the training windows
    labels = data.labels
    integrals = data.integral_images()
    weights = uniform_weights(len(data))
    stages = []

    for round_index in range(1, rounds + 1):
        # Ask the weak learner for this round's classifier
        started = time.perf_counter()
        outcome = learner(data, weights, round_index - 1)
        seconds = time.perf_counter() - started

        # Recompute the weighted error from the classifier itself
        weak = outcome.classifier
        predictions = weak_predictions(weak, integrals)
        epsilon = weighted_error(predictions, labels, weights)

        if epsilon == 0.0:
            stages = [Stage(alpha=1.0, weak=weak)]
            _report(observer, round_index, epsilon, 1.0, seconds, outcome)
            logger.info("round %d: zero-error weak classifier, training stops", round_index)
            break
        if epsilon > 0.5 + WEAKNESS_TOLERANCE:
            raise WeakLearnerError(f"weak learner not weak: epsilon={epsilon:.6g} in round {round_index}")

        # Reweight: misclassified windows gain mass, then renormalise
        alpha = alpha_for(epsilon)
        weights = normalize_weights(weights * np.exp(-alpha * labels * predictions))
        stages.append(Stage(alpha=alpha, weak=weak))
        _report(observer, round_index, epsilon, alpha, seconds, outcome)

    return StrongClassifier(window_w=data.window_w, window_h=data.window_h, stages=stages)


def training_error_bound(epsilons) -> float:
    """
    Product over rounds of 2 * sqrt(eps * (1 - eps)).
    """
    return float(np.prod([2.0 * math.sqrt(e * (1.0 - e)) for e in epsilons]))


def _report(observer, round_index, epsilon, alpha, seconds, outcome: LearnerOutcome) -> None:
    logger.info(
        "round %d: eps=%.6f alpha=%.6f evals=%d ms=%.3f",
        round_index, epsilon, alpha, outcome.evaluations, seconds * 1000.0,
    )
    if observer is not None:
        observer(RoundReport(
            round_index=round_index,
            epsilon=epsilon,
            alpha=alpha,
            seconds=seconds,
            evaluations=outcome.evaluations,
            classifier=outcome.classifier,
        ))
