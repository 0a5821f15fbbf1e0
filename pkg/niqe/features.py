"""
Patch level quality-aware features.

A feature vector holds 36 values, 18 per scale (full resolution, then the
2x2 box-downsampled plane):

    GGD alpha, GGD sigma^2 of the MSCN coefficients,
    then for each of H, V, D1, D2 pairwise products:
    AGGD alpha, mean, sigma_left^2, sigma_right^2

This ordering is frozen; it is written to every model file as
`feature_layout`.
"""

import numpy as np

from main.errors import MeasurementError
from nss.image import (WINDOW_HALF_EXTENT, WINDOW_SIGMA, STABILIZER,
                       InvalidParameter,
                       PlaneTooSmall, downsample2, mscn, pairwise_products)
from nss.stats import fit_aggd, fit_ggd


ORIENTATIONS = ('h', 'v', 'd1', 'd2')
SCALES = 2
FEATURES_PER_SCALE = 2 + 4 * len(ORIENTATIONS)
FEATURE_COUNT = SCALES * FEATURES_PER_SCALE

FEATURE_LAYOUT = tuple(
    'scale%d_%s' % (scale, name)
    for scale in range(1, SCALES + 1)
    for name in (['ggd_alpha', 'ggd_sigma2'] +
                 ['%s_%s' % (orientation, param)
                  for orientation in ORIENTATIONS
                  for param in ('alpha', 'mean', 'sigma_left2', 'sigma_right2')])
)


class PatchOutOfBounds(MeasurementError):
    pass


class NoPatchesFit(MeasurementError):
    pass


def scale_features(coefficients):
    '''18 features of one MSCN patch.'''
    ggd = fit_ggd(coefficients)
    features = [ggd.alpha, ggd.sigma * ggd.sigma]
    products = pairwise_products(coefficients)
    for orientation in ORIENTATIONS:
        aggd = fit_aggd(getattr(products, orientation))
        features.extend((aggd.alpha, aggd.mean,
                         aggd.sigma_left * aggd.sigma_left,
                         aggd.sigma_right * aggd.sigma_right))
    return features


class PlaneStatistics(object):
    '''MSCN fields of a plane at both scales, computed once and shared by all
    patches cut from it.'''

    def __init__(self, plane, half_extent=WINDOW_HALF_EXTENT,
                 sigma=WINDOW_SIGMA, stabilizer=STABILIZER):
        self.plane = plane
        self.fine = mscn(plane, half_extent, sigma, stabilizer)
        try:
            coarse_plane = downsample2(plane)
            self.coarse = mscn(coarse_plane, half_extent, sigma, stabilizer)
        except PlaneTooSmall:
            self.coarse = None

    @property
    def sigma_field(self):
        return self.fine.sigma_field

    def check_bounds(self, origin, patch_size):
        x, y = origin
        half = patch_size // 2
        inside = (x >= 0 and y >= 0 and
                  x + patch_size <= self.fine.width and
                  y + patch_size <= self.fine.height and
                  self.coarse is not None and
                  x // 2 + half <= self.coarse.width and
                  y // 2 + half <= self.coarse.height)
        if not inside:
            raise PatchOutOfBounds(
                'patch %dx%d at (%d, %d) does not fit a %dx%d plane at both '
                'scales' % (patch_size, patch_size, x, y,
                            self.fine.width, self.fine.height))

    def patch_features(self, origin, patch_size):
        self.check_bounds(origin, patch_size)
        x, y = origin
        half = patch_size // 2
        fine = self.fine.values[y:y + patch_size, x:x + patch_size]
        cx, cy = x // 2, y // 2
        coarse = self.coarse.values[cy:cy + half, cx:cx + half]
        return np.array(scale_features(fine) + scale_features(coarse),
                        dtype=np.float64)


def extract_patch_features(plane, patch_origin, patch_size):
    '''36-value feature vector of one patch; see FEATURE_LAYOUT.'''
    return PlaneStatistics(plane).patch_features(patch_origin, patch_size)


def tile_origins(width, height, patch_size):
    '''Non-overlapping grid from (0, 0), raster order; remainders dropped.'''
    if width < patch_size or height < patch_size:
        raise NoPatchesFit('plane %dx%d is smaller than one %dx%d patch'
                           % (width, height, patch_size, patch_size))
    return [(x, y)
            for y in range(0, height - patch_size + 1, patch_size)
            for x in range(0, width - patch_size + 1, patch_size)]


def patch_sharpness(sigma_field, patch_size):
    '''(origin, mean local deviation) for every tile of the grid.'''
    height, width = sigma_field.shape
    return [(origin, float(np.mean(
                sigma_field[origin[1]:origin[1] + patch_size,
                            origin[0]:origin[0] + patch_size])))
            for origin in tile_origins(width, height, patch_size)]


def select_sharp_patches(sigma_field, patch_size, fraction):
    '''Tiles whose sharpness is at least `fraction` of the sharpest tile.'''
    if not 0 < fraction <= 1:
        raise InvalidParameter('sharpness fraction must be in (0, 1]')
    sharpness = patch_sharpness(np.asarray(sigma_field), patch_size)
    threshold = fraction * max(value for _, value in sharpness)
    return [origin for origin, value in sharpness if value >= threshold]

# vim: set ts=4 sw=4 et:
