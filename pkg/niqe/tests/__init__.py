import numpy as np
from scipy import ndimage

from nss.image import LumaPlane


def pink_noise_frame(rng, width=384, height=384, mean=128.0, std=40.0):
    '''Synthetic naturalistic frame: Gaussian noise with a 1/f amplitude
    spectrum, scaled to 8 bits.'''
    fy = np.fft.fftfreq(height)[:, None]
    fx = np.fft.rfftfreq(width)[None, :]
    radius = np.sqrt(fx * fx + fy * fy)
    radius[0, 0] = 1.0
    spectrum = (rng.standard_normal(radius.shape) +
                1j * rng.standard_normal(radius.shape)) / radius
    spectrum[0, 0] = 0.0
    field = np.fft.irfft2(spectrum, s=(height, width))
    field = (field - field.mean()) / field.std()
    samples = np.clip(np.rint(mean + std * field), 0, 255).astype(np.uint8)
    return LumaPlane.from_array(samples)


def pristine_corpus(seed=0, count=10, width=384, height=384):
    rng = np.random.default_rng(seed)
    return [pink_noise_frame(rng, width, height) for _ in range(count)]


def constant_frame(width, height, value=0):
    return LumaPlane.from_array(np.full((height, width), value, dtype=np.uint8))


def box_blur(plane, size=9):
    blurred = ndimage.uniform_filter(plane.samples.astype(np.float64), size,
                                     mode='reflect')
    return LumaPlane.from_array(np.clip(np.rint(blurred), 0, 255)
                                .astype(np.uint8))


def add_noise(plane, sigma, rng):
    noisy = plane.samples + rng.normal(0.0, sigma, plane.samples.shape)
    return LumaPlane.from_array(np.clip(np.rint(noisy), 0, 255)
                                .astype(np.uint8))
