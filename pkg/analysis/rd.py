"""
Rate-distortion curves over a codec comparison grid.

A stream is identified by (video, encoder, use case, bitrate); a curve
collects the streams of one (video, encoder, use case) in ascending bitrate.
NIQE scores are lower-is-better, so a curve is expected to fall as bitrate
grows; any adjacent pair that rises by more than the tolerance is a
violation.
"""

from collections import namedtuple
from itertools import product
import math

from main.errors import MeasurementError
from main.utils import groupby_preserve_order
from pooling.temporal import MEAN, WEIGHTED, EmptySeries


MONOTONIC_TOLERANCE = 0.05

MONOTONE = 'monotone'
NON_MONOTONE = 'non_monotone'
INVERTED = 'inverted'


class DuplicatePoint(MeasurementError):
    pass


class TooFewPoints(MeasurementError):
    pass


class InvalidRecord(MeasurementError):
    pass


class StreamRecord(namedtuple('StreamRecord', ('video_id', 'encoder_id',
                                               'use_case', 'bitrate',
                                               'pooled', 'baseline'))):
    '''One measured stream: `pooled` is the weighted pooled score,
    `baseline` the plain mean (optional).'''
    __slots__ = ()

    def __new__(cls, video_id, encoder_id, use_case, bitrate, pooled,
                baseline=None):
        bitrate = float(bitrate)
        if not bitrate > 0 or not math.isfinite(bitrate):
            raise InvalidRecord('bitrate must be positive, got %r for %s/%s/%s'
                                % (bitrate, video_id, encoder_id, use_case))
        return super(StreamRecord, cls).__new__(
            cls, video_id, encoder_id, use_case, bitrate, pooled, baseline)

    @property
    def key(self):
        return (self.video_id, self.encoder_id, self.use_case)

    def score(self, method=WEIGHTED):
        if method == WEIGHTED:
            return self.pooled.score
        if method == MEAN:
            if self.baseline is None:
                raise InvalidRecord('no mean pooled score for %s at %g kbps'
                                    % ('/'.join(self.key), self.bitrate))
            return self.baseline.score
        raise ValueError('unknown pooling method %r' % (method,))


Violation = namedtuple('Violation', ('low_bitrate', 'high_bitrate', 'delta'))


class RdCurve(object):
    def __init__(self, key, points, tolerance=MONOTONIC_TOLERANCE):
        self.key = tuple(key)
        self.points = sorted((float(b), float(s)) for b, s in points)
        for (low, _), (high, _) in zip(self.points, self.points[1:]):
            if low == high:
                raise DuplicatePoint('duplicate point for %s at %g kbps'
                                     % ('/'.join(self.key), low))
        self.tolerance = tolerance
        if len(self.points) >= 2:
            self.violations = check_monotonic(self, tolerance)
        else:
            self.violations = []

    @property
    def bitrates(self):
        return [bitrate for bitrate, _ in self.points]

    @property
    def scores(self):
        return [score for _, score in self.points]

    @property
    def verdict(self):
        return classify_curve(self)

    def __repr__(self):
        return '<RdCurve %s: %d points>' % ('/'.join(self.key),
                                            len(self.points))


def build_rd_curves(records, method=WEIGHTED, tolerance=MONOTONIC_TOLERANCE):
    '''Partition records into curves, sorted by key; points ascend in
    bitrate.'''
    seen = set()
    for record in records:
        cell = record.key + (record.bitrate,)
        if cell in seen:
            raise DuplicatePoint('duplicate point for %s at %g kbps'
                                 % ('/'.join(record.key), record.bitrate))
        seen.add(cell)
    groups = groupby_preserve_order(records, lambda record: record.key)
    curves = [RdCurve(group[0].key,
                      [(record.bitrate, record.score(method))
                       for record in group],
                      tolerance)
              for group in groups]
    return sorted(curves, key=lambda curve: curve.key)


def check_monotonic(curve, tolerance=MONOTONIC_TOLERANCE):
    '''Adjacent pairs whose score gets worse (higher) with more bitrate.'''
    points = curve.points
    if len(points) < 2:
        raise TooFewPoints('curve %s has %d point(s), need 2'
                           % ('/'.join(curve.key), len(points)))
    return [Violation(low, high, high_score - low_score)
            for (low, low_score), (high, high_score) in zip(points, points[1:])
            if high_score > low_score + tolerance]


def classify_curve(curve):
    '''monotone, inverted (every step worsens) or non_monotone.'''
    if len(curve.points) < 2 or not curve.violations:
        return MONOTONE
    if len(curve.violations) == len(curve.points) - 1:
        return INVERTED
    return NON_MONOTONE


def invert_for_plot(curve):
    '''(bitrate, -score) so that higher is better on a plot. Plot data only;
    stored scores keep their sign.'''
    return [(bitrate, -score + 0.0) for bitrate, score in curve.points]


def compare_pooling(records, tolerance=MONOTONIC_TOLERANCE):
    '''Per curve key: violation counts under weighted and mean pooling.'''
    weighted = build_rd_curves(records, WEIGHTED, tolerance)
    mean = {curve.key: curve
            for curve in build_rd_curves(records, MEAN, tolerance)}
    return [(curve.key, len(curve.violations),
             len(mean[curve.key].violations))
            for curve in weighted]


GridReport = namedtuple('GridReport', ('videos', 'encoders', 'use_cases',
                                       'bitrates', 'expected', 'observed',
                                       'missing'))


def grid_completeness(records):
    '''Compare the observed streams with the full product of the distinct
    videos, encoders, use cases and bitrates.'''
    cells = set(record.key + (record.bitrate,) for record in records)
    videos = sorted(set(cell[0] for cell in cells))
    encoders = sorted(set(cell[1] for cell in cells))
    use_cases = sorted(set(cell[2] for cell in cells))
    bitrates = sorted(set(cell[3] for cell in cells))
    missing = [cell for cell in product(videos, encoders, use_cases, bitrates)
               if cell not in cells]
    expected = len(videos) * len(encoders) * len(use_cases) * len(bitrates)
    return GridReport(videos, encoders, use_cases, bitrates, expected,
                      len(cells), missing)


def frame_preference(better, worse):
    '''Share of co-indexed frames where `better` scores strictly lower than
    `worse`.'''
    a = [getattr(item, 'score', item) for item in better]
    b = [getattr(item, 'score', item) for item in worse]
    count = min(len(a), len(b))
    if count == 0:
        raise EmptySeries('no co-indexed frames to compare')
    wins = sum(1 for x, y in zip(a[:count], b[:count]) if x < y)
    return wins / count

# vim: set ts=4 sw=4 et:
