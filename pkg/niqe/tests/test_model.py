import json
import os
from tempfile import TemporaryDirectory

import numpy as np
from django.test import SimpleTestCase

from niqe.features import FEATURE_LAYOUT
from niqe.model import (FORMAT_VERSION, ModelFormatError, NiqeModel,
                        NiqeSettings, load_model, save_model, train_model)
from niqe.tests import constant_frame, pristine_corpus
from nss.image import InvalidParameter
from nss.stats import DegenerateInput, InsufficientPatches, MvgModel


class NiqeSettingsTest(SimpleTestCase):
    def test_defaults(self):
        settings = NiqeSettings()
        self.assertEqual(settings.patch_size, 96)
        self.assertEqual(settings.sharpness_fraction, 0.75)
        self.assertEqual(settings.window_half_extent, 3)
        self.assertEqual(settings.border_mode, 'reflect')

    def test_invalid(self):
        with self.assertRaises(InvalidParameter):
            NiqeSettings(patch_size=95)
        with self.assertRaises(InvalidParameter):
            NiqeSettings(sharpness_fraction=0.0)
        with self.assertRaises(InvalidParameter):
            NiqeSettings(border_mode='constant')


class TrainModelTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.corpus = pristine_corpus(seed=11)
        cls.model = train_model(cls.corpus, corpus_descriptor='pink noise')

    def test_valid_model(self):
        mvg = self.model.mvg
        self.assertEqual(mvg.dimension, 36)
        self.assertGreaterEqual(mvg.sample_count, 37)
        self.assertTrue(mvg.is_positive_semidefinite())
        self.assertTrue(np.all(np.isfinite(mvg.mean)))
        self.assertEqual(self.model.patch_size, 96)
        self.assertEqual(self.model.corpus_descriptor, 'pink noise')

    def test_order_independent(self):
        reordered = train_model(list(reversed(self.corpus)),
                                corpus_descriptor='pink noise')
        np.testing.assert_allclose(reordered.mvg.mean, self.model.mvg.mean,
                                   rtol=0, atol=1e-12)
        np.testing.assert_allclose(reordered.mvg.covariance,
                                   self.model.mvg.covariance, rtol=0,
                                   atol=1e-12)

    def test_constant_corpus(self):
        with self.assertRaises(DegenerateInput):
            train_model([constant_frame(192, 192, 0)] * 3)

    def test_single_patch(self):
        with self.assertRaises(InsufficientPatches):
            train_model(pristine_corpus(seed=12, count=1, width=96, height=96))

    def test_frames_too_small_skipped(self):
        with self.assertRaises(InsufficientPatches):
            train_model(pristine_corpus(seed=13, count=2, width=64, height=64))

    def test_model_file_roundtrip(self):
        with TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'model.json')
            save_model(self.model, path)
            loaded = load_model(path)
            self.assertEqual(loaded, self.model)
            with open(path) as fh:
                text = fh.read()
        data = json.loads(text)
        self.assertEqual(data['format_version'], FORMAT_VERSION)
        self.assertEqual(data['feature_layout'], list(FEATURE_LAYOUT))
        self.assertEqual(len(data['covariance']), 36 * 36)
        self.assertEqual(list(data), sorted(data))

    def test_settings_digest(self):
        other = NiqeModel(self.model.mvg, NiqeSettings(sharpness_fraction=0.5))
        self.assertEqual(len(self.model.settings_digest()), 64)
        self.assertEqual(self.model.settings_digest(),
                         NiqeModel(self.model.mvg).settings_digest())
        self.assertNotEqual(self.model.settings_digest(),
                            other.settings_digest())


class ModelFormatTest(SimpleTestCase):
    def setUp(self):
        mvg = MvgModel(np.zeros(36), np.eye(36), 40)
        self.data = NiqeModel(mvg).to_dict()

    def test_unknown_version(self):
        self.data['format_version'] = 2
        with self.assertRaises(ModelFormatError):
            NiqeModel.from_dict(self.data)

    def test_layout_mismatch(self):
        self.data['feature_layout'] = list(reversed(self.data['feature_layout']))
        with self.assertRaises(ModelFormatError):
            NiqeModel.from_dict(self.data)

    def test_missing_field(self):
        del self.data['covariance']
        with self.assertRaises(ModelFormatError):
            NiqeModel.from_dict(self.data)

    def test_wrong_dimension(self):
        with self.assertRaises(ModelFormatError):
            NiqeModel(MvgModel(np.zeros(4), np.eye(4)))

    def test_not_json(self):
        with TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'model.json')
            with open(path, 'w') as fh:
                fh.write('not json')
            with self.assertRaises(ModelFormatError):
                load_model(path)
