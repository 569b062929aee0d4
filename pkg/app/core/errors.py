"""
Exception types raised by the haarboost toolkit.
"""


class HaarBoostError(ValueError):
    """
    Base class for every error raised by the toolkit.
    """


class DegenerateWeightsError(HaarBoostError):
    """Weight vector with no positive mass."""

    def __init__(self, message: str = "degenerate weights"):
        super().__init__(message)


class LengthMismatchError(HaarBoostError):
    """Parallel sequences of different lengths."""


class InvalidGeometryError(HaarBoostError):
    """Haar geometry that does not fit its feature type or window."""


class WindowMismatchError(HaarBoostError):
    """Classifier and image window dimensions disagree."""


class EncodingError(HaarBoostError):
    """Chromosome that cannot be encoded, decoded or operated on."""


class NoValidClassifierError(HaarBoostError):
    """Every genetic run ended with zero fitness."""

    def __init__(self, message: str = "no valid classifier"):
        super().__init__(message)


class WeakLearnerError(HaarBoostError):
    """Weak learner returned a classifier worse than chance."""

    def __init__(self, message: str = "weak learner not weak"):
        super().__init__(message)


class DatasetError(HaarBoostError):
    """Manifest or image problem; the message names the offending entry."""


class ModelFileError(HaarBoostError):
    """Model file that cannot be parsed or fails validation."""
