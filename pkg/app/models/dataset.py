"""
Pydantic models for labelled image windows.
"""
from typing import Iterable, List, Optional

import numpy as np
from pydantic import BaseModel, Field, PrivateAttr, root_validator, validator

from app.core.errors import DatasetError
from app.core.haar import integral_stack


class Sample(BaseModel):
    """
    A grayscale image window with a class label.
    """
    pixels: np.ndarray = Field(..., description="8-bit intensities, shape (window_h, window_w)")
    label: int = Field(..., description="Class label, -1 or +1")

    class Config:
        arbitrary_types_allowed = True

    @validator("pixels", pre=True)
    def _as_grid(cls, value):
        grid = np.asarray(value)
        if grid.ndim != 2 or grid.shape[0] < 1 or grid.shape[1] < 1:
            raise ValueError(f"pixels must be a non-empty 2-D grid, got shape {grid.shape}")
        if grid.size and (grid.min() < 0 or grid.max() > 255):
            raise ValueError("pixel intensities must lie in [0, 255]")
        return grid.astype(np.uint8)

    @validator("label")
    def _signed(cls, value):
        if value not in (-1, 1):
            raise ValueError(f"label must be -1 or +1, got {value}")
        return value

    @property
    def window_w(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def window_h(self) -> int:
        return int(self.pixels.shape[0])


class Dataset(BaseModel):
    """
    An ordered collection of equally sized samples.
    """
    samples: List[Sample] = Field(..., description="Samples in ingestion order")
    window_w: int = Field(..., ge=1, description="Window width in pixels")
    window_h: int = Field(..., ge=1, description="Window height in pixels")

    _integrals: Optional[np.ndarray] = PrivateAttr(default=None)
    _labels: Optional[np.ndarray] = PrivateAttr(default=None)

    class Config:
        arbitrary_types_allowed = True

    @root_validator(skip_on_failure=True)
    def _uniform_windows(cls, values):
        samples = values["samples"]
        if not samples:
            raise ValueError("dataset must contain at least one sample")
        shape = (values["window_h"], values["window_w"])
        for index, sample in enumerate(samples):
            if sample.pixels.shape != shape:
                raise ValueError(
                    f"sample {index} has shape {sample.pixels.shape}, expected {shape}"
                )
        return values

    @classmethod
    def from_samples(cls, samples: Iterable[Sample]) -> "Dataset":
        """
        Build a dataset whose window is taken from the first sample.
        """
        samples = list(samples)
        if not samples:
            raise DatasetError("dataset must contain at least one sample")
        first = samples[0]
        return cls(samples=samples, window_w=first.window_w, window_h=first.window_h)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def labels(self) -> np.ndarray:
        """Labels as an int64 array, in sample order."""
        if self._labels is None:
            labels = np.array([s.label for s in self.samples], dtype=np.int64)
            labels.setflags(write=False)
            self._labels = labels
        return self._labels

    def pixel_stack(self) -> np.ndarray:
        """All windows stacked into an array of shape (m, window_h, window_w)."""
        return np.stack([s.pixels for s in self.samples])

    def integral_images(self) -> np.ndarray:
        """
        Integral tables of every sample, computed once and cached.

        Returns:
            Read-only array of shape (m, window_h + 1, window_w + 1)
        """
        if self._integrals is None:
            table = integral_stack(self.pixel_stack())
            table.setflags(write=False)
            self._integrals = table
        return self._integrals

    def require_both_labels(self) -> None:
        """
        Raise DatasetError unless both classes are present.
        """
        present = set(np.unique(self.labels).tolist())
        if present != {-1, 1}:
            raise DatasetError("training data needs at least one sample of each label")

    def same_window(self, other: "Dataset") -> bool:
        return (self.window_w, self.window_h) == (other.window_w, other.window_h)


def split_dataset(data: Dataset, n_train: int):
    """
    Split a dataset into two consecutive parts, keeping sample order.

    Args:
        data: Dataset to split
        n_train: Number of leading samples placed in the first part

    Returns:
        (first, second) datasets
    """
    if not 0 < n_train < len(data):
        raise DatasetError(f"split point {n_train} must lie strictly inside 1..{len(data) - 1}")
    first = Dataset(samples=data.samples[:n_train], window_w=data.window_w, window_h=data.window_h)
    second = Dataset(samples=data.samples[n_train:], window_w=data.window_w, window_h=data.window_h)
    return first, second
