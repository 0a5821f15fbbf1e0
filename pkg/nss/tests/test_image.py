import numpy as np
from django.test import SimpleTestCase

from nss.image import (InvalidParameter, LumaPlane, MscnField, PlaneTooSmall,
                       downsample2, gaussian_window, mscn, pairwise_products)
from nss.tests import random_plane


def constant_plane(width, height, value):
    return LumaPlane.from_array(np.full((height, width), value, dtype=np.uint8))


class LumaPlaneTest(SimpleTestCase):
    def test_from_bytes(self):
        plane = LumaPlane(3, 2, bytes(range(6)))
        self.assertEqual(plane.samples.shape, (2, 3))
        self.assertEqual(plane.samples[1, 0], 3)
        self.assertFalse(plane.samples.flags.writeable)

    def test_geometry_mismatch(self):
        with self.assertRaises(InvalidParameter):
            LumaPlane(3, 3, bytes(8))

    def test_out_of_range(self):
        with self.assertRaises(InvalidParameter):
            LumaPlane.from_array(np.full((2, 2), 300))

    def test_source_not_shared(self):
        data = np.zeros((4, 4), dtype=np.uint8)
        plane = LumaPlane.from_array(data)
        data[0, 0] = 9
        self.assertEqual(plane.samples[0, 0], 0)

    def test_mean_luma(self):
        self.assertEqual(constant_plane(4, 4, 16).mean_luma(), 16.0)


class GaussianWindowTest(SimpleTestCase):
    def test_default_window(self):
        kernel = gaussian_window(3, 7.0 / 6.0)
        self.assertEqual(kernel.shape, (7, 7))
        self.assertAlmostEqual(kernel.sum(), 1.0, delta=1e-12)
        np.testing.assert_allclose(kernel, kernel.T, atol=0)
        np.testing.assert_allclose(kernel, kernel[::-1, ::-1], atol=0)
        self.assertEqual(np.argmax(kernel), 24)

    def test_wide_sigma_is_uniform(self):
        kernel = gaussian_window(1, 100.0)
        np.testing.assert_allclose(kernel, np.full((3, 3), 1.0 / 9), atol=1e-3)

    def test_invalid(self):
        with self.assertRaises(InvalidParameter):
            gaussian_window(0, 1.0)
        with self.assertRaises(InvalidParameter):
            gaussian_window(3, 0.0)


class MscnTest(SimpleTestCase):
    def test_constant_planes(self):
        for level in (0, 1, 128, 254, 255):
            field = mscn(constant_plane(16, 16, level))
            self.assertTrue(np.all(field.values == 0.0), level)
            self.assertTrue(np.all(field.sigma_field == 0.0), level)

    def test_impulse(self):
        data = np.zeros((15, 15), dtype=np.uint8)
        data[7, 7] = 255
        field = mscn(LumaPlane.from_array(data))
        w = gaussian_window(3, 7.0 / 6.0)[3, 3]
        mu = w * 255.0
        sigma = np.sqrt(w * 255.0 ** 2 - mu * mu)
        expected = (255.0 - mu) / (sigma + 1.0)
        self.assertGreater(field.values[7, 7], 0.0)
        self.assertAlmostEqual(field.values[7, 7], expected, delta=1e-9)

    def test_noise_statistics(self):
        field = mscn(random_plane(np.random.default_rng(6), 96, 96))
        self.assertEqual((field.width, field.height), (96, 96))
        self.assertEqual(field.values.shape, (96, 96))
        self.assertTrue(-0.1 < field.values.mean() < 0.1)
        self.assertTrue(0.5 < field.values.var() < 1.5)
        self.assertTrue(np.all(field.sigma_field >= 0.0))

    def test_translation_equivariance(self):
        rng = np.random.default_rng(7)
        data = rng.integers(0, 256, size=(128, 128), dtype=np.uint8)
        dy, dx = 3, 5
        shifted = np.roll(data, (dy, dx), axis=(0, 1))
        a = mscn(LumaPlane.from_array(data)).values
        b = mscn(LumaPlane.from_array(shifted)).values
        np.testing.assert_allclose(b[10 + dy:-10, 10 + dx:-10],
                                   a[10:-10 - dy, 10:-10 - dx], atol=1e-9)

    def test_too_small(self):
        with self.assertRaises(PlaneTooSmall):
            mscn(constant_plane(6, 7, 0))


class PairwiseProductsTest(SimpleTestCase):
    def test_ones(self):
        products = pairwise_products(np.ones((5, 6)))
        for field in products:
            self.assertTrue(np.all(field == 1.0))

    def test_checkerboard(self):
        board = np.where(np.indices((6, 6)).sum(axis=0) % 2, -1.0, 1.0)
        products = pairwise_products(board)
        self.assertTrue(np.all(products.h == -1.0))
        self.assertTrue(np.all(products.v == -1.0))
        self.assertTrue(np.all(products.d1 == 1.0))
        self.assertTrue(np.all(products.d2 == 1.0))

    def test_shapes(self):
        products = pairwise_products(np.ones((2, 2)))
        self.assertEqual(products.h.shape, (2, 1))
        self.assertEqual(products.v.shape, (1, 2))
        self.assertEqual(products.d1.shape, (1, 1))
        self.assertEqual(products.d2.shape, (1, 1))
        for height, width in ((2, 7), (9, 3), (11, 11)):
            products = pairwise_products(np.ones((height, width)))
            self.assertEqual(products.h.shape, (height, width - 1))
            self.assertEqual(products.v.shape, (height - 1, width))
            self.assertEqual(products.d2.shape, (height - 1, width - 1))

    def test_diagonal_neighbours(self):
        values = np.arange(9, dtype=np.float64).reshape(3, 3)
        products = pairwise_products(values)
        # D1 pairs (i, j) with (i + 1, j + 1); D2 pairs (i, j + 1) with (i + 1, j)
        self.assertEqual(products.d1[0, 0], 0 * 4)
        self.assertEqual(products.d2[0, 0], 1 * 3)

    def test_accepts_field(self):
        field = mscn(constant_plane(8, 8, 3))
        self.assertIsInstance(field, MscnField)
        self.assertTrue(np.all(pairwise_products(field).h == 0.0))

    def test_too_small(self):
        with self.assertRaises(PlaneTooSmall):
            pairwise_products(np.ones((1, 5)))


class Downsample2Test(SimpleTestCase):
    def test_constant(self):
        half = downsample2(constant_plane(10, 6, 128))
        self.assertEqual((half.width, half.height), (5, 3))
        self.assertTrue(np.all(half.samples == 128))

    def test_block_average(self):
        half = downsample2(LumaPlane(2, 2, bytes([10, 20, 30, 40])))
        self.assertEqual(half.samples[0, 0], 25)

    def test_round_half_up(self):
        half = downsample2(LumaPlane(2, 2, bytes([0, 0, 1, 1])))
        self.assertEqual(half.samples[0, 0], 1)

    def test_odd_dimensions(self):
        half = downsample2(random_plane(np.random.default_rng(8), 5, 5))
        self.assertEqual((half.width, half.height), (2, 2))

    def test_too_small(self):
        with self.assertRaises(PlaneTooSmall):
            downsample2(constant_plane(1, 4, 0))
