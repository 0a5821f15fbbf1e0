"""
Distribution fitting and statistics kernels for natural scene statistics.

Generalized Gaussian (GGD) and asymmetric generalized Gaussian (AGGD)
estimators use moment matching: the shape exponent is looked up on a fixed
grid of precomputed ratio-function values, so fits are deterministic and
cheap. The multivariate Gaussian helpers fit and compare models over the
quality-aware feature space.

Everything here is a pure function of its inputs.
"""

from collections import namedtuple
import math

import numpy as np
from scipy import linalg, special, stats

from main.errors import MeasurementError


MIN_SAMPLES = 100

# shape exponent grid for moment matching, [0.2, 10] in steps of 1e-3
ALPHA_GRID = np.round(np.arange(200, 10001) * 1e-3, 3)
_GAMMA_1 = special.gamma(1.0 / ALPHA_GRID)
_GAMMA_2 = special.gamma(2.0 / ALPHA_GRID)
_GAMMA_3 = special.gamma(3.0 / ALPHA_GRID)
# r(a) = G(2/a)^2 / (G(1/a) G(3/a))
RATIO_GRID = _GAMMA_2 * _GAMMA_2 / (_GAMMA_1 * _GAMMA_3)

RIDGE_FACTOR = 1e-8
PSD_TOLERANCE = 1e-9


class DegenerateInput(MeasurementError):
    pass


class InsufficientPatches(MeasurementError):
    pass


class DimensionMismatch(MeasurementError):
    pass


class SingularCovariance(MeasurementError):
    pass


GgdParams = namedtuple('GgdParams', ('alpha', 'sigma'))
AggdParams = namedtuple('AggdParams',
                        ('alpha', 'mean', 'sigma_left', 'sigma_right'))


def _as_samples(samples):
    data = np.asarray(samples, dtype=np.float64).ravel()
    if data.size < MIN_SAMPLES:
        raise DegenerateInput('need at least %d samples, got %d'
                              % (MIN_SAMPLES, data.size))
    if not np.all(np.isfinite(data)):
        raise DegenerateInput('samples contain non-finite values')
    if np.var(data) == 0.0:
        raise DegenerateInput('samples have zero variance')
    return data


def lookup_alpha(ratio):
    '''Shape exponent whose ratio-function value is nearest to `ratio`.'''
    pos = int(np.argmin(np.abs(RATIO_GRID - ratio)))
    return float(ALPHA_GRID[pos])


def ggd_scale(sigma, alpha):
    '''Convert a root-mean-square deviation to the GGD scale parameter.'''
    return sigma * math.sqrt(special.gamma(1.0 / alpha) /
                             special.gamma(3.0 / alpha))


def fit_ggd(samples):
    '''Moment-matching fit of a zero-mean generalized Gaussian.

    sigma is the root mean square of the samples; alpha = 2 is the Gaussian
    case.'''
    data = _as_samples(samples)
    second = np.mean(data * data)
    first = np.mean(np.abs(data))
    alpha = lookup_alpha(first * first / second)
    return GgdParams(alpha, float(math.sqrt(second)))


def fit_aggd(samples):
    '''Moment-matching fit of an asymmetric generalized Gaussian.

    sigma_left and sigma_right are the root mean squares of the negative and
    positive samples; the mean is the distribution mean implied by the fitted
    shape and scales.'''
    data = _as_samples(samples)
    left = data[data < 0]
    right = data[data > 0]
    if left.size == 0 or right.size == 0:
        raise DegenerateInput('AGGD fit needs samples on both sides of zero')

    sigma_left = math.sqrt(np.mean(left * left))
    sigma_right = math.sqrt(np.mean(right * right))
    gamma_hat = sigma_left / sigma_right
    first = np.mean(np.abs(data))
    r_hat = first * first / np.mean(data * data)
    r_norm = (r_hat * (gamma_hat ** 3 + 1) * (gamma_hat + 1)
              / (gamma_hat ** 2 + 1) ** 2)
    alpha = lookup_alpha(r_norm)

    gam1 = special.gamma(1.0 / alpha)
    gam2 = special.gamma(2.0 / alpha)
    beta_left = ggd_scale(sigma_left, alpha)
    beta_right = ggd_scale(sigma_right, alpha)
    mean = (beta_right - beta_left) * gam2 / gam1
    return AggdParams(alpha, float(mean), sigma_left, sigma_right)


class MvgModel(object):
    '''Multivariate Gaussian: mean vector, covariance matrix and the number of
    samples it was fitted from.'''

    def __init__(self, mean, covariance, sample_count=0):
        mean = np.array(mean, dtype=np.float64).ravel()
        covariance = np.array(covariance, dtype=np.float64)
        if covariance.shape != (mean.size, mean.size):
            raise DimensionMismatch(
                'covariance shape %s does not match mean dimension %d'
                % (covariance.shape, mean.size))
        scale = max(np.max(np.abs(covariance)), 1.0) if covariance.size else 1.0
        if np.max(np.abs(covariance - covariance.T), initial=0.0) > 1e-9 * scale:
            raise DimensionMismatch('covariance is not symmetric')
        mean.flags.writeable = False
        covariance.flags.writeable = False
        self.mean = mean
        self.covariance = covariance
        self.sample_count = int(sample_count)

    @property
    def dimension(self):
        return self.mean.size

    def is_positive_semidefinite(self):
        trace = np.trace(self.covariance)
        eigenvalues = linalg.eigvalsh(self.covariance)
        return bool(np.all(eigenvalues >= -PSD_TOLERANCE * abs(trace)))

    def __eq__(self, other):
        if not isinstance(other, MvgModel):
            return NotImplemented
        return (np.array_equal(self.mean, other.mean) and
                np.array_equal(self.covariance, other.covariance) and
                self.sample_count == other.sample_count)

    def __repr__(self):
        return '<MvgModel dim=%d samples=%d>' % (self.dimension,
                                                self.sample_count)


def fit_mvg(features):
    '''Fit a multivariate Gaussian to the rows of an n x d feature matrix.'''
    data = np.asarray(features, dtype=np.float64)
    if data.ndim != 2:
        raise DimensionMismatch('features must be a 2-d matrix')
    rows, dim = data.shape
    if rows < dim + 1:
        raise InsufficientPatches('need at least %d feature rows, got %d'
                                  % (dim + 1, rows))
    mean = data.mean(axis=0)
    covariance = np.cov(data, rowvar=False, ddof=1)
    covariance = (covariance + covariance.T) / 2.0
    return MvgModel(mean, covariance, rows)


def _pooled_factor(covariance):
    try:
        return linalg.cholesky(covariance, lower=True)
    except linalg.LinAlgError:
        pass
    dim = covariance.shape[0]
    ridge = RIDGE_FACTOR * np.trace(covariance) / dim
    if not ridge > 0:
        raise SingularCovariance('pooled covariance is singular')
    try:
        return linalg.cholesky(covariance + ridge * np.eye(dim), lower=True)
    except linalg.LinAlgError:
        raise SingularCovariance(
            'pooled covariance is singular even with ridge %g' % ridge)


def mvg_distance(a, b):
    '''sqrt((mu_a - mu_b)^T ((S_a + S_b) / 2)^-1 (mu_a - mu_b))

    The pooled covariance is factorized as is; a ridge of 1e-8 * trace / d is
    added only when that fails. No pseudo-inverse fallback.'''
    if a.dimension != b.dimension:
        raise DimensionMismatch('model dimensions differ: %d vs %d'
                                % (a.dimension, b.dimension))
    diff = a.mean - b.mean
    pooled = (a.covariance + b.covariance) / 2.0
    factor = _pooled_factor(pooled)
    whitened = linalg.solve_triangular(factor, diff, lower=True)
    return float(math.sqrt(np.dot(whitened, whitened)))


def pearson(x, y):
    '''Sample Pearson correlation of two equally long, non-constant
    sequences.'''
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise DegenerateInput('length mismatch: %d vs %d' % (x.size, y.size))
    if x.size < 3:
        raise DegenerateInput('need at least 3 pairs, got %d' % x.size)
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise DegenerateInput('constant sequence has no correlation')
    r = stats.pearsonr(x, y)[0]
    return float(min(1.0, max(-1.0, r)))

# vim: set ts=4 sw=4 et:
