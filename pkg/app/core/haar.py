"""
Integral images, haar feature evaluation and candidate geometry enumeration.

Integral tables are numpy arrays indexed ``[row, column]`` with a zero first
row and column, so ``table[y, x]`` is the sum of all pixels above and to the
left of ``(x, y)``. Stacks of tables carry the sample index as leading axis.
"""
from functools import lru_cache
from typing import Sequence, Tuple, Union

import numpy as np

from app.core.errors import InvalidGeometryError
from app.models.geometry import HaarGeometry, HaarType

GeometryLike = Union[HaarGeometry, Sequence[int]]


def compute_integral(pixels) -> np.ndarray:
    """
    Compute the zero-bordered integral table of one image.

    Args:
        pixels: Sample or 2-D array of intensities (rows, columns)

    Returns:
        Array of shape (window_h + 1, window_w + 1)
    """
    grid = np.asarray(getattr(pixels, "pixels", pixels))
    if grid.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {grid.shape}")
    return integral_stack(grid[np.newaxis])[0]


def integral_stack(images: np.ndarray) -> np.ndarray:
    """
    Compute integral tables for a stack of equally sized images.

    Args:
        images: Array of shape (m, window_h, window_w)

    Returns:
        Array of shape (m, window_h + 1, window_w + 1)
    """
    images = np.asarray(images)
    dtype = np.int64 if np.issubdtype(images.dtype, np.integer) or images.dtype == bool else np.float64
    m, height, width = images.shape
    table = np.zeros((m, height + 1, width + 1), dtype=dtype)
    table[:, 1:, 1:] = images.astype(dtype).cumsum(axis=1).cumsum(axis=2)
    return table


def window_of(integral: np.ndarray) -> Tuple[int, int]:
    """Return (window_w, window_h) of an integral table or stack."""
    return integral.shape[-1] - 1, integral.shape[-2] - 1


def rectangle_sum(integral: np.ndarray, x, y, width, height):
    """
    Sum of pixels over [x, x+width) x [y, y+height) via four table lookups.

    Coordinates may be scalars or equally shaped integer arrays; the leading
    axes of ``integral`` are carried through.
    """
    x1 = x + width
    y1 = y + height
    return (integral[..., y1, x1] - integral[..., y, x1]
            - integral[..., y1, x] + integral[..., y, x])


def haar_values(integral: np.ndarray, geometries, haar_type: HaarType) -> np.ndarray:
    """
    Evaluate one feature type at many geometries.

    Args:
        integral: Integral table (H+1, W+1) or stack (m, H+1, W+1)
        geometries: Array-like of (x, y, width, height) rows, assumed valid
        haar_type: Feature type

    Returns:
        Float array of shape (k,) for a single table or (m, k) for a stack
    """
    rows = np.asarray(geometries, dtype=np.int64).reshape(-1, 4)
    x, y, width, height = rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3]
    haar_type = HaarType(haar_type)

    if haar_type == HaarType.EDGE_H:
        half = width // 2
        values = (rectangle_sum(integral, x, y, half, height)
                  - rectangle_sum(integral, x + half, y, half, height))
    elif haar_type == HaarType.EDGE_V:
        half = height // 2
        values = (rectangle_sum(integral, x, y, width, half)
                  - rectangle_sum(integral, x, y + half, width, half))
    elif haar_type == HaarType.LINE_H:
        third = width // 3
        values = (rectangle_sum(integral, x, y, third, height)
                  + rectangle_sum(integral, x + 2 * third, y, third, height)
                  - 2 * rectangle_sum(integral, x + third, y, third, height))
    elif haar_type == HaarType.LINE_V:
        third = height // 3
        values = (rectangle_sum(integral, x, y, width, third)
                  + rectangle_sum(integral, x, y + 2 * third, width, third)
                  - 2 * rectangle_sum(integral, x, y + third, width, third))
    else:
        half_w = width // 2
        half_h = height // 2
        values = ((rectangle_sum(integral, x, y, half_w, half_h)
                   + rectangle_sum(integral, x + half_w, y + half_h, half_w, half_h))
                  - (rectangle_sum(integral, x + half_w, y, half_w, half_h)
                     + rectangle_sum(integral, x, y + half_h, half_w, half_h)))
    return np.asarray(values, dtype=np.float64)


def haar_value(integral: np.ndarray, geometry: GeometryLike, haar_type: HaarType) -> float:
    """
    Evaluate a single haar feature on one integral table.

    Raises:
        InvalidGeometryError: if the geometry does not fit the type and window
    """
    window_w, window_h = window_of(integral)
    if not is_valid_geometry(geometry, haar_type, window_w, window_h):
        raise InvalidGeometryError(
            f"geometry {_as_row(geometry)} is not valid for {HaarType(haar_type).tag} "
            f"in a {window_w}x{window_h} window"
        )
    return float(haar_values(integral, [_as_row(geometry)], haar_type)[..., 0])


def is_valid_geometry(geometry: GeometryLike, haar_type: HaarType, window_w: int, window_h: int) -> bool:
    """
    Check that a geometry lies inside the window and splits evenly for its type.

    Total over all integer 4-tuples; never raises.
    """
    x, y, width, height = _as_row(geometry)
    div_w, div_h = HaarType(haar_type).divisors
    return (
        x >= 0 and y >= 0
        and width >= div_w and height >= div_h
        and x + width <= window_w and y + height <= window_h
        and width % div_w == 0 and height % div_h == 0
    )


def valid_geometry_mask(geometries, haar_type: HaarType, window_w: int, window_h: int) -> np.ndarray:
    """Vectorised is_valid_geometry over rows of (x, y, width, height)."""
    rows = np.asarray(geometries, dtype=np.int64).reshape(-1, 4)
    x, y, width, height = rows.T
    div_w, div_h = HaarType(haar_type).divisors
    return ((x >= 0) & (y >= 0)
            & (width >= div_w) & (height >= div_h)
            & (x + width <= window_w) & (y + height <= window_h)
            & (width % div_w == 0) & (height % div_h == 0))


def enumerate_geometries(haar_type: HaarType, window_w: int, window_h: int) -> np.ndarray:
    """
    List every valid geometry of a feature type inside a window.

    Rows are (x, y, width, height) ordered ascending by y, then x, then
    height, then width. The returned array is shared and read-only.

    Returns:
        Integer array of shape (k, 4)
    """
    return _enumerate(HaarType(haar_type), int(window_w), int(window_h))


@lru_cache(maxsize=64)
def _enumerate(haar_type: HaarType, window_w: int, window_h: int) -> np.ndarray:
    div_w, div_h = haar_type.divisors
    ys = np.arange(window_h)
    xs = np.arange(window_w)
    heights = np.arange(div_h, window_h + 1, div_h)
    widths = np.arange(div_w, window_w + 1, div_w)
    if len(heights) == 0 or len(widths) == 0:
        rows = np.empty((0, 4), dtype=np.int64)
    else:
        y, x, height, width = (a.ravel() for a in np.meshgrid(ys, xs, heights, widths, indexing="ij"))
        keep = (x + width <= window_w) & (y + height <= window_h)
        rows = np.stack([x[keep], y[keep], width[keep], height[keep]], axis=1).astype(np.int64)
    rows.setflags(write=False)
    return rows


def candidate_count(window_w: int, window_h: int) -> int:
    """Number of (type, geometry) candidates an exhaustive search evaluates."""
    return sum(len(enumerate_geometries(t, window_w, window_h)) for t in HaarType)


def _as_row(geometry: GeometryLike) -> Tuple[int, int, int, int]:
    if isinstance(geometry, HaarGeometry):
        return geometry.as_row()
    x, y, width, height = (int(v) for v in geometry)
    return x, y, width, height
