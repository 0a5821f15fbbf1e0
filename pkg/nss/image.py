"""
Spatial natural scene statistics transforms on 8-bit luma planes.

MSCN (mean subtracted, contrast normalized) coefficients use a 7x7 Gaussian
window with sigma 7/6 and stabilizing constant C = 1 on the 0-255 scale, with
mirror reflection at the borders. These constants are recorded in every
trained model so scores are only compared across identical settings.
"""

from collections import namedtuple

import numpy as np
from scipy import ndimage

from main.errors import MeasurementError


WINDOW_HALF_EXTENT = 3
WINDOW_SIGMA = 7.0 / 6.0
STABILIZER = 1.0
BORDER_MODE = 'reflect'
DOWNSAMPLING = 'box2x2'


class InvalidParameter(MeasurementError):
    pass


class PlaneTooSmall(MeasurementError):
    pass


class LumaPlane(object):
    '''One frame's 8-bit luma samples, row-major. Never mutated once built.'''

    def __init__(self, width, height, samples):
        width = int(width)
        height = int(height)
        if width <= 0 or height <= 0:
            raise InvalidParameter('invalid plane geometry %dx%d'
                                   % (width, height))
        if isinstance(samples, (bytes, bytearray, memoryview)):
            data = np.frombuffer(bytes(samples), dtype=np.uint8)
        else:
            data = np.asarray(samples)
            if data.dtype != np.uint8:
                if data.size and (data.min() < 0 or data.max() > 255):
                    raise InvalidParameter('luma samples must be 8-bit')
                data = data.astype(np.uint8)
        if data.size != width * height:
            raise InvalidParameter('%d samples do not fill a %dx%d plane'
                                   % (data.size, width, height))
        data = np.array(data.reshape(height, width), dtype=np.uint8)
        data.flags.writeable = False
        self.width = width
        self.height = height
        self.samples = data

    @classmethod
    def from_array(cls, array):
        array = np.asarray(array)
        if array.ndim != 2:
            raise InvalidParameter('luma plane must be 2-d')
        return cls(array.shape[1], array.shape[0], array)

    def mean_luma(self):
        return float(self.samples.mean())

    def __eq__(self, other):
        if not isinstance(other, LumaPlane):
            return NotImplemented
        return np.array_equal(self.samples, other.samples)

    def __repr__(self):
        return '<LumaPlane %dx%d>' % (self.width, self.height)


MscnField = namedtuple('MscnField', ('width', 'height', 'values', 'sigma_field'))
ProductFields = namedtuple('ProductFields', ('h', 'v', 'd1', 'd2'))


def gaussian_window(half_extent, sigma):
    '''Circularly symmetric (2 * half_extent + 1)^2 kernel summing to 1.'''
    if int(half_extent) != half_extent or half_extent < 1:
        raise InvalidParameter('half extent must be an integer >= 1')
    if not sigma > 0:
        raise InvalidParameter('sigma must be positive')
    offsets = np.arange(-half_extent, half_extent + 1, dtype=np.float64)
    weights = np.exp(-0.5 * offsets * offsets / (sigma * sigma))
    kernel = np.outer(weights, weights)
    return kernel / kernel.sum()


def _check_size(width, height, min_width, min_height):
    if width < min_width or height < min_height:
        raise PlaneTooSmall('plane %dx%d is smaller than %dx%d'
                            % (width, height, min_width, min_height))


def mscn(plane, half_extent=WINDOW_HALF_EXTENT, sigma=WINDOW_SIGMA,
         stabilizer=STABILIZER):
    '''(I - mu) / (sigma + C) with Gaussian weighted local mean and deviation.'''
    size = 2 * half_extent + 1
    _check_size(plane.width, plane.height, size, size)
    window = gaussian_window(half_extent, sigma)
    image = plane.samples.astype(np.float64)
    # shift to a zero floor; a constant plane then filters to exact zeros
    image -= image.min()
    mu = ndimage.correlate(image, window, mode=BORDER_MODE)
    second = ndimage.correlate(image * image, window, mode=BORDER_MODE)
    deviation = np.sqrt(np.maximum(second - mu * mu, 0.0))
    values = (image - mu) / (deviation + stabilizer)
    return MscnField(plane.width, plane.height, values, deviation)


def pairwise_products(field):
    '''Products of each coefficient with its right, lower, lower-right and
    lower-left neighbours.'''
    values = field.values if isinstance(field, MscnField) else np.asarray(field)
    height, width = values.shape
    _check_size(width, height, 2, 2)
    return ProductFields(
        h=values[:, :-1] * values[:, 1:],
        v=values[:-1, :] * values[1:, :],
        d1=values[:-1, :-1] * values[1:, 1:],
        d2=values[:-1, 1:] * values[1:, :-1],
    )


def downsample2(plane):
    '''Rounded average of each 2x2 block; odd trailing rows/columns dropped.'''
    _check_size(plane.width, plane.height, 2, 2)
    width, height = plane.width // 2, plane.height // 2
    block = plane.samples[:2 * height, :2 * width].astype(np.uint32)
    total = (block[0::2, 0::2] + block[0::2, 1::2] +
             block[1::2, 0::2] + block[1::2, 1::2])
    # round half up, integer arithmetic only
    return LumaPlane(width, height, ((total + 2) // 4).astype(np.uint8))

# vim: set ts=4 sw=4 et:
