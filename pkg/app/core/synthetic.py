"""
Synthetic windows for desk-scale experiments.

Positive windows carry a dark-to-bright horizontal edge whose boundary sits on
the vertical centre line of the window; negative windows are background
only. Uniform noise of amplitude ``difficulty * 127`` is added to both.
"""
import math
from typing import List

import numpy as np

from app.core.errors import DatasetError
from app.models.dataset import Sample

BACKGROUND = 128.0
EDGE_CONTRAST = 60.0
MIN_COUNT = 2
MIN_WINDOW = 8


def generate_samples(count: int, window: int, seed: int, difficulty: float) -> List[Sample]:
    """
    Generate a balanced, deterministic set of square windows.

    Samples alternate +1, -1, +1, ...; an odd count gives the extra sample to +1.

    Args:
        count: Number of windows, at least 2
        window: Side length in pixels, at least 8
        seed: Seed of the generator
        difficulty: Noise level in [0, 1]

    Returns:
        List of samples in generation order
    """
    if count < MIN_COUNT:
        raise DatasetError(f"count must be at least {MIN_COUNT}, got {count}")
    if window < MIN_WINDOW:
        raise DatasetError(f"window must be at least {MIN_WINDOW}, got {window}")
    if not 0.0 <= difficulty <= 1.0:
        raise DatasetError(f"difficulty must lie in [0, 1], got {difficulty}")

    rng = np.random.default_rng(seed)
    amplitude = difficulty * 127.0
    centre = window // 2
    min_half_width = max(1, math.ceil(window / 8))
    min_height = max(1, math.ceil(window / 4))

    samples = []
    for index in range(count):
        label = 1 if index % 2 == 0 else -1
        image = np.full((window, window), BACKGROUND)
        if label == 1:
            half_width = int(rng.integers(min_half_width, centre + 1))
            height = int(rng.integers(min_height, window + 1))
            top = int(rng.integers(0, window - height + 1))
            image[top:top + height, centre - half_width:centre] -= EDGE_CONTRAST
            image[top:top + height, centre:centre + half_width] += EDGE_CONTRAST
        image += amplitude * rng.uniform(-1.0, 1.0, size=image.shape)
        pixels = np.clip(np.rint(image), 0, 255).astype(np.uint8)
        samples.append(Sample(pixels=pixels, label=label))
    return samples
