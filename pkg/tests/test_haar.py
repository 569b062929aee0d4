"""
Tests for integral images, haar features and geometry enumeration.
"""
import itertools
import unittest

import numpy as np

from app.core.errors import InvalidGeometryError
from app.core.haar import (
    candidate_count,
    compute_integral,
    enumerate_geometries,
    haar_value,
    haar_values,
    integral_stack,
    is_valid_geometry,
    rectangle_sum,
    valid_geometry_mask,
)
from app.models.dataset import Sample
from app.models.geometry import HaarGeometry, HaarType


def brute_force_geometries(haar_type, window_w, window_h):
    return {
        (x, y, w, h)
        for x, y, w, h in itertools.product(
            range(window_w + 1), range(window_h + 1), range(1, window_w + 1), range(1, window_h + 1)
        )
        if is_valid_geometry((x, y, w, h), haar_type, window_w, window_h)
    }


class TestIntegralImage(unittest.TestCase):
    """
    Test cases for integral tables and rectangle sums.
    """

    def setUp(self):
        self.rng = np.random.default_rng(2024)

    def test_small_image(self):
        """
        Test the full-image sum of [[1, 2], [3, 4]].
        """
        table = compute_integral(np.array([[1, 2], [3, 4]]))
        self.assertEqual(table.shape, (3, 3))
        self.assertEqual(rectangle_sum(table, 0, 0, 2, 2), 10)
        self.assertTrue(np.all(table[0] == 0))
        self.assertTrue(np.all(table[:, 0] == 0))

    def test_zero_image(self):
        """
        Test that an all-zero image has an all-zero table.
        """
        self.assertFalse(np.any(compute_integral(np.zeros((5, 7), dtype=np.uint8))))

    def test_accepts_sample(self):
        """
        Test that a Sample can be passed directly.
        """
        sample = Sample(pixels=np.arange(12).reshape(3, 4), label=1)
        self.assertEqual(compute_integral(sample)[3, 4], sum(range(12)))

    def test_random_rectangles_match_naive_sums(self):
        """
        Test 1000 random rectangles on random 24x24 images against naive sums.
        """
        images = self.rng.integers(0, 256, size=(10, 24, 24))
        tables = integral_stack(images)
        for _ in range(1000):
            index = int(self.rng.integers(0, 10))
            x0, x1 = sorted(self.rng.integers(0, 25, size=2))
            y0, y1 = sorted(self.rng.integers(0, 25, size=2))
            naive = 0
            for row in range(y0, y1):
                for col in range(x0, x1):
                    naive += int(images[index, row, col])
            self.assertEqual(rectangle_sum(tables[index], x0, y0, x1 - x0, y1 - y0), naive)

    def test_monotone(self):
        """
        Test that tables never decrease along either axis.
        """
        table = compute_integral(self.rng.integers(0, 256, size=(9, 11)))
        self.assertTrue(np.all(np.diff(table, axis=0) >= 0))
        self.assertTrue(np.all(np.diff(table, axis=1) >= 0))


class TestHaarValue(unittest.TestCase):
    """
    Test cases for haar feature evaluation.
    """

    def setUp(self):
        self.rng = np.random.default_rng(5)

    def test_constant_image_is_zero(self):
        """
        Test that every valid feature of every type is 0 on a constant image.
        """
        table = compute_integral(np.full((6, 6), 77))
        for haar_type in HaarType:
            values = haar_values(table, enumerate_geometries(haar_type, 6, 6), haar_type)
            self.assertTrue(np.all(values == 0), haar_type.tag)

    def test_edge_h(self):
        """
        Test EdgeH on a 2x1 region with pixels 5 and 3.
        """
        table = compute_integral(np.array([[5, 3]]))
        self.assertEqual(haar_value(table, (0, 0, 2, 1), HaarType.EDGE_H), 2.0)

    def test_checker(self):
        """
        Test Checker on [[1, 2], [3, 4]].
        """
        table = compute_integral(np.array([[1, 2], [3, 4]]))
        self.assertEqual(haar_value(table, HaarGeometry(x=0, y=0, width=2, height=2), HaarType.CHECKER), 0.0)

    def test_line_types(self):
        """
        Test that the middle third counts twice.
        """
        table = compute_integral(np.array([[1, 5, 2]]))
        self.assertEqual(haar_value(table, (0, 0, 3, 1), HaarType.LINE_H), 1 + 2 - 2 * 5)
        table = compute_integral(np.array([[1], [5], [2]]))
        self.assertEqual(haar_value(table, (0, 0, 1, 3), HaarType.LINE_V), 1 + 2 - 2 * 5)
        table = compute_integral(np.array([[4], [1]]))
        self.assertEqual(haar_value(table, (0, 0, 1, 2), HaarType.EDGE_V), 3.0)

    def test_linear_in_intensity(self):
        """
        Test that scaling the image scales every feature value.
        """
        image = self.rng.integers(0, 50, size=(8, 8))
        plain = compute_integral(image)
        scaled = compute_integral(3 * image)
        for haar_type in HaarType:
            rows = enumerate_geometries(haar_type, 8, 8)
            np.testing.assert_allclose(
                haar_values(scaled, rows, haar_type), 3 * haar_values(plain, rows, haar_type), atol=1e-9
            )

    def test_stack_matches_single(self):
        """
        Test that stacked evaluation agrees with one table at a time.
        """
        images = self.rng.integers(0, 256, size=(4, 7, 9))
        tables = integral_stack(images)
        rows = enumerate_geometries(HaarType.CHECKER, 9, 7)
        stacked = haar_values(tables, rows, HaarType.CHECKER)
        self.assertEqual(stacked.shape, (4, len(rows)))
        for index in range(4):
            np.testing.assert_array_equal(stacked[index], haar_values(tables[index], rows, HaarType.CHECKER))

    def test_invalid_geometry_raises(self):
        """
        Test that haar_value rejects a geometry outside the window.
        """
        table = compute_integral(np.zeros((4, 4)))
        with self.assertRaises(InvalidGeometryError):
            haar_value(table, (3, 0, 2, 1), HaarType.EDGE_H)


class TestGeometry(unittest.TestCase):
    """
    Test cases for geometry validity and enumeration.
    """

    def test_validity_examples(self):
        """
        Test the validity examples on a 24x24 window.
        """
        self.assertFalse(is_valid_geometry((-1, 0, 2, 2), HaarType.EDGE_H, 24, 24))
        self.assertTrue(is_valid_geometry((0, 0, 24, 24), HaarType.CHECKER, 24, 24))
        self.assertFalse(is_valid_geometry((0, 0, 4, 2), HaarType.LINE_H, 24, 24))
        self.assertFalse(is_valid_geometry((0, 0, 0, 0), HaarType.EDGE_V, 24, 24))
        self.assertFalse(is_valid_geometry((23, 0, 2, 1), HaarType.EDGE_H, 24, 24))

    def test_mask_matches_scalar(self):
        """
        Test that the vectorised mask agrees with the scalar check.
        """
        rng = np.random.default_rng(8)
        rows = rng.integers(-2, 12, size=(500, 4))
        for haar_type in HaarType:
            mask = valid_geometry_mask(rows, haar_type, 10, 8)
            expected = [is_valid_geometry(r, haar_type, 10, 8) for r in rows]
            self.assertEqual(mask.tolist(), expected)

    def test_single_edge_in_2x1(self):
        """
        Test that a 2x1 window holds exactly one EdgeH geometry.
        """
        self.assertEqual(enumerate_geometries(HaarType.EDGE_H, 2, 1).tolist(), [[0, 0, 2, 1]])

    def test_edge_h_count_in_4x4(self):
        """
        Test the EdgeH count of a 4x4 window against the brute-force filter.
        """
        rows = enumerate_geometries(HaarType.EDGE_H, 4, 4)
        self.assertEqual(len(rows), len(brute_force_geometries(HaarType.EDGE_H, 4, 4)))
        self.assertEqual(len(rows), 40)

    def test_same_set_as_brute_force(self):
        """
        Test every type on rectangular windows against the brute-force filter.
        """
        for (window_w, window_h), haar_type in itertools.product([(5, 4), (6, 6), (3, 7)], HaarType):
            rows = enumerate_geometries(haar_type, window_w, window_h)
            as_set = {tuple(r) for r in rows.tolist()}
            self.assertEqual(len(as_set), len(rows))
            self.assertEqual(as_set, brute_force_geometries(haar_type, window_w, window_h))

    def test_order(self):
        """
        Test ascending (y, x, height, width) order.
        """
        rows = enumerate_geometries(HaarType.LINE_V, 7, 9)
        keys = [(y, x, h, w) for x, y, w, h in rows.tolist()]
        self.assertEqual(keys, sorted(keys))

    def test_read_only(self):
        """
        Test that the cached enumeration cannot be modified.
        """
        rows = enumerate_geometries(HaarType.EDGE_V, 4, 4)
        with self.assertRaises(ValueError):
            rows[0, 0] = 3

    def test_candidate_counts(self):
        """
        Test the closed-form candidate totals of 2x2, 16x16 and 24x24 windows.
        """
        self.assertEqual(candidate_count(2, 2), 7)
        self.assertEqual(candidate_count(16, 16), 32384)
        self.assertEqual(candidate_count(24, 24), 162336)


if __name__ == "__main__":
    unittest.main()
