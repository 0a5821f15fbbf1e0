import math

import numpy as np
from scipy import special


def sample_aggd(rng, count, alpha, sigma_left, sigma_right):
    '''Draws from an asymmetric generalized Gaussian whose one-sided root mean
    squares are sigma_left and sigma_right, by one-sided inverse-CDF sampling.'''
    ratio = math.sqrt(special.gamma(1.0 / alpha) / special.gamma(3.0 / alpha))
    beta_left = sigma_left * ratio
    beta_right = sigma_right * ratio
    left = rng.random(count) < beta_left / (beta_left + beta_right)
    # |x| / beta raised to alpha is Gamma(1 / alpha) distributed
    t = special.gammaincinv(1.0 / alpha, rng.random(count))
    magnitude = np.power(t, 1.0 / alpha)
    return np.where(left, -beta_left * magnitude, beta_right * magnitude)


def sample_ggd(rng, count, alpha, sigma):
    return sample_aggd(rng, count, alpha, sigma, sigma)


def random_plane(rng, width, height, low=0, high=256):
    from nss.image import LumaPlane
    return LumaPlane.from_array(rng.integers(low, high, size=(height, width),
                                             dtype=np.uint8))
