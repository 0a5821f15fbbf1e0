"""
Per-frame NIQE scoring against a pristine model. Lower is better.
"""

from collections import namedtuple
import logging

import numpy as np

from nss.stats import DegenerateInput, MvgModel, fit_mvg, mvg_distance

from .model import frame_patch_features


logger = logging.getLogger(__name__)

# assigned when every retained patch of a frame has zero variance; the
# temporal weighting gives any score >= 40 a zero weight
DEGENERATE_SCORE = 100.0


class FrameScore(namedtuple('FrameScore', ('frame_index', 'score',
                                           'patch_count', 'mean_luma',
                                           'degenerate',
                                           'covariance_fallback'))):
    __slots__ = ()

    def __new__(cls, frame_index, score, patch_count=1, mean_luma=None,
                degenerate=False, covariance_fallback=False):
        return super(FrameScore, cls).__new__(
            cls, frame_index, score, patch_count, mean_luma, degenerate,
            covariance_fallback)


class FrameScoreSeries(object):
    '''Ordered per-frame scores of one encoded stream.'''

    def __init__(self, scores=()):
        self.frames = []
        for position, item in enumerate(scores):
            if not isinstance(item, FrameScore):
                item = FrameScore(position, float(item))
            self.frames.append(item)

    def values(self):
        return [frame.score for frame in self.frames]

    def __iter__(self):
        return iter(self.frames)

    def __len__(self):
        return len(self.frames)

    def __getitem__(self, index):
        return self.frames[index]


def score_frame(plane, model, frame_index=0, strict=False):
    '''Distance between the frame's own MVG and the pristine MVG.

    Frames yielding fewer patches than feature dimensions + 1 reuse the
    pristine covariance for the test side. A frame whose retained patches are
    all flat gets DEGENERATE_SCORE, or DegenerateInput when `strict`.'''
    settings = model.settings
    mean_luma = plane.mean_luma()
    rows, degenerate = frame_patch_features(plane, settings)

    if not rows:
        if strict:
            raise DegenerateInput('frame %d has no patch with non-zero '
                                  'variance' % frame_index)
        logger.warning('frame %d is degenerate (mean luma %.1f), scoring %g',
                       frame_index, mean_luma, DEGENERATE_SCORE)
        return FrameScore(frame_index, DEGENERATE_SCORE, 0, mean_luma,
                          degenerate=True)

    features = np.vstack(rows)
    dimension = model.mvg.dimension
    fallback = len(rows) < dimension + 1
    if fallback:
        logger.debug('frame %d has %d patches, using pristine covariance',
                     frame_index, len(rows))
        frame_mvg = MvgModel(features.mean(axis=0), model.mvg.covariance,
                             len(rows))
    else:
        frame_mvg = fit_mvg(features)

    score = mvg_distance(model.mvg, frame_mvg)
    return FrameScore(frame_index, score, len(rows), mean_luma,
                      covariance_fallback=fallback)


def score_frames(planes, model):
    '''Score frames in order; see analysis.pool for the threaded variant.'''
    return FrameScoreSeries(score_frame(plane, model, index)
                            for index, plane in enumerate(planes))

# vim: set ts=4 sw=4 et:
