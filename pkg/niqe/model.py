"""
Pristine NIQE model: training from a corpus of undistorted frames and the
versioned JSON model file.
"""

from collections import namedtuple
import json
import logging

import numpy as np

from main.errors import MeasurementError
from main.utils import canonical_json, json_digest
from nss.image import (BORDER_MODE, DOWNSAMPLING, STABILIZER,
                       WINDOW_HALF_EXTENT, WINDOW_SIGMA, InvalidParameter)
from nss.stats import DegenerateInput, MvgModel, fit_mvg

from .features import (FEATURE_COUNT, FEATURE_LAYOUT, NoPatchesFit,
                       PlaneStatistics, select_sharp_patches)


logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


class ModelFormatError(MeasurementError):
    pass


_SETTINGS_FIELDS = ('patch_size', 'sharpness_fraction', 'window_half_extent',
                    'window_sigma', 'stabilizer', 'border_mode',
                    'downsampling')


class NiqeSettings(namedtuple('NiqeSettings', _SETTINGS_FIELDS)):
    __slots__ = ()

    def __new__(cls, patch_size=96, sharpness_fraction=0.75,
                window_half_extent=WINDOW_HALF_EXTENT,
                window_sigma=WINDOW_SIGMA, stabilizer=STABILIZER,
                border_mode=BORDER_MODE, downsampling=DOWNSAMPLING):
        patch_size = int(patch_size)
        sharpness_fraction = float(sharpness_fraction)
        if patch_size < 2 or patch_size % 2:
            raise InvalidParameter('patch size must be an even number >= 2, '
                                   'got %d' % patch_size)
        if not 0 < sharpness_fraction <= 1:
            raise InvalidParameter('sharpness fraction must be in (0, 1], '
                                   'got %g' % sharpness_fraction)
        if border_mode != BORDER_MODE or downsampling != DOWNSAMPLING:
            raise InvalidParameter('unsupported border mode or downsampling: '
                                   '%s/%s' % (border_mode, downsampling))
        return super(NiqeSettings, cls).__new__(
            cls, patch_size, sharpness_fraction, int(window_half_extent),
            float(window_sigma), float(stabilizer), border_mode, downsampling)

    def as_dict(self):
        return dict(self._asdict())

    def statistics(self, plane):
        return PlaneStatistics(plane, self.window_half_extent,
                               self.window_sigma, self.stabilizer)


class NiqeModel(object):
    '''Multivariate Gaussian over the 36 features of sharp pristine patches,
    plus the settings it was trained with.'''

    def __init__(self, mvg, settings=None, corpus_descriptor=''):
        if mvg.dimension != FEATURE_COUNT:
            raise ModelFormatError('model dimension must be %d, got %d'
                                   % (FEATURE_COUNT, mvg.dimension))
        self.mvg = mvg
        self.settings = settings or NiqeSettings()
        self.corpus_descriptor = corpus_descriptor

    @property
    def patch_size(self):
        return self.settings.patch_size

    @property
    def sharpness_fraction(self):
        return self.settings.sharpness_fraction

    def settings_digest(self):
        return json_digest(self.settings.as_dict())

    def to_dict(self):
        return {
            'format_version': FORMAT_VERSION,
            'dimension': self.mvg.dimension,
            'feature_layout': list(FEATURE_LAYOUT),
            'mean': [float(v) for v in self.mvg.mean],
            'covariance': [float(v) for v in self.mvg.covariance.ravel()],
            'sample_count': self.mvg.sample_count,
            'settings': self.settings.as_dict(),
            'corpus_descriptor': self.corpus_descriptor,
        }

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ModelFormatError('model file must hold a JSON object')
        version = data.get('format_version')
        if version != FORMAT_VERSION:
            raise ModelFormatError('unsupported model format_version %r'
                                   % (version,))
        try:
            dimension = int(data['dimension'])
            if list(data['feature_layout']) != list(FEATURE_LAYOUT):
                raise ModelFormatError('feature layout does not match')
            mean = np.array(data['mean'], dtype=np.float64)
            covariance = np.array(data['covariance'], dtype=np.float64)
            covariance = covariance.reshape(dimension, dimension)
            mvg = MvgModel(mean, covariance, data['sample_count'])
            settings = NiqeSettings(**data['settings'])
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError('malformed model file: %s' % e)
        return cls(mvg, settings, data.get('corpus_descriptor', ''))

    def __eq__(self, other):
        if not isinstance(other, NiqeModel):
            return NotImplemented
        return (self.mvg == other.mvg and self.settings == other.settings and
                self.corpus_descriptor == other.corpus_descriptor)


def save_model(model, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(canonical_json(model.to_dict()))


def load_model(path):
    with open(path, 'r', encoding='utf-8') as fh:
        try:
            data = json.load(fh)
        except ValueError as e:
            raise ModelFormatError('%s is not valid JSON: %s' % (path, e))
    return NiqeModel.from_dict(data)


def frame_patch_features(plane, settings):
    '''Features of every retained sharp patch of a plane.

    Returns (feature rows, number of patches rejected as degenerate).'''
    statistics = settings.statistics(plane)
    origins = select_sharp_patches(statistics.sigma_field, settings.patch_size,
                                   settings.sharpness_fraction)
    rows = []
    degenerate = 0
    for origin in origins:
        try:
            rows.append(statistics.patch_features(origin, settings.patch_size))
        except DegenerateInput:
            degenerate += 1
    return rows, degenerate


def train_model(pristine_frames, settings=None, corpus_descriptor=''):
    '''Fit the pristine MVG to the sharp patches of all frames.'''
    settings = settings or NiqeSettings()
    rows = []
    degenerate = 0
    frames = 0
    for plane in pristine_frames:
        frames += 1
        try:
            frame_rows, frame_degenerate = frame_patch_features(plane, settings)
        except NoPatchesFit as e:
            logger.warning('skipping training frame %d: %s', frames - 1, e)
            continue
        rows.extend(frame_rows)
        degenerate += frame_degenerate

    logger.info('collected %d patches from %d frames (%d degenerate)',
                len(rows), frames, degenerate)
    if not rows and degenerate:
        raise DegenerateInput('all %d candidate patches have zero variance'
                              % degenerate)
    if not rows:
        # keep the column count so fit_mvg reports the real requirement
        features = np.empty((0, FEATURE_COUNT))
    else:
        features = np.vstack(rows)
        # sort rows so the fit does not depend on frame or patch order
        features = features[np.lexsort(features.T[::-1])]
    mvg = fit_mvg(features)
    return NiqeModel(mvg, settings, corpus_descriptor)

# vim: set ts=4 sw=4 et:
