"""
Temporal pooling of per-frame scores.

The weighted pooling discounts frames that score in [15, 40) and ignores
frames scoring 40 or more, which mostly come from solid-coloured or dark
frames:

    k(m) = 1                 m in [0, 15)
           -0.04 * m + 1.6   m in [15, 40)
           0                 m >= 40

    score = sum(m_i * k_i) / sum(k_i)

All sums use math.fsum, so results do not depend on frame order.
"""

from collections import namedtuple
import math

from main.errors import MeasurementError


FULL_WEIGHT_BELOW = 15.0
ZERO_WEIGHT_FROM = 40.0
DARK_FRAME_LUMA = 16.0

WEIGHTED = 'weighted'
MEAN = 'mean'


class InvalidScore(MeasurementError):
    pass


class EmptySeries(MeasurementError):
    pass


PooledScore = namedtuple('PooledScore', ('score', 'method', 'total_weight',
                                         'frames_total', 'frames_zero_weight',
                                         'fallback_used'))

FrameDiagnostics = namedtuple('FrameDiagnostics', ('frame_index', 'score',
                                                   'dark_frame',
                                                   'outlier_score', 'weight'))


def weight(m):
    '''Weight of one frame score; continuous and non-increasing.'''
    try:
        m = float(m)
    except (TypeError, ValueError):
        raise InvalidScore('frame score %r is not a number' % (m,))
    if not math.isfinite(m) or m < 0:
        raise InvalidScore('frame score must be finite and >= 0, got %r' % m)
    if m < FULL_WEIGHT_BELOW:
        return 1.0
    if m < ZERO_WEIGHT_FROM:
        # same line as -0.04 * m + 1.6, exact at both ends
        return (ZERO_WEIGHT_FROM - m) / (ZERO_WEIGHT_FROM - FULL_WEIGHT_BELOW)
    return 0.0


def _frames(scores):
    '''(index, score, mean luma or None) for a FrameScoreSeries or any
    sequence of numbers.'''
    result = []
    for position, item in enumerate(scores):
        if hasattr(item, 'score'):
            result.append((item.frame_index, item.score,
                           getattr(item, 'mean_luma', None)))
        else:
            result.append((position, item, None))
    return result


def pool_mean(scores):
    frames = _frames(scores)
    if not frames:
        raise EmptySeries('cannot pool an empty series')
    values = [float(m) for _, m, _ in frames]
    for m in values:
        weight(m)
    count = len(values)
    return PooledScore(math.fsum(values) / count, MEAN, float(count), count,
                       0, False)


def pool_weighted(scores):
    '''Weighted average of frame scores; falls back to the plain mean with
    fallback_used set when every frame has zero weight.'''
    frames = _frames(scores)
    if not frames:
        raise EmptySeries('cannot pool an empty series')
    values = [float(m) for _, m, _ in frames]
    weights = [weight(m) for m in values]
    total_weight = math.fsum(weights)
    zero_weight = sum(1 for k in weights if k == 0.0)
    if total_weight == 0.0:
        mean = pool_mean(values)
        return PooledScore(mean.score, WEIGHTED, 0.0, len(values),
                           zero_weight, True)
    weighted_sum = math.fsum(m * k for m, k in zip(values, weights))
    return PooledScore(weighted_sum / total_weight, WEIGHTED, total_weight,
                       len(values), zero_weight, False)


def diagnose_frames(scores, dark_luma=DARK_FRAME_LUMA):
    '''One FrameDiagnostics per frame: dark (mean luma below `dark_luma`),
    outlier (score >= 40) and the pooling weight.'''
    diagnostics = []
    for index, m, mean_luma in _frames(scores):
        k = weight(m)
        diagnostics.append(FrameDiagnostics(
            frame_index=index,
            score=float(m),
            dark_frame=mean_luma is not None and mean_luma < dark_luma,
            outlier_score=float(m) >= ZERO_WEIGHT_FROM,
            weight=k,
        ))
    return diagnostics


def pool(scores, method=WEIGHTED):
    if method == WEIGHTED:
        return pool_weighted(scores)
    if method == MEAN:
        return pool_mean(scores)
    raise ValueError('unknown pooling method %r' % (method,))

# vim: set ts=4 sw=4 et:
