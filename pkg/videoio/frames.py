"""
Geometry and frame stream types shared by the Y4M, raw YUV and PGM readers.
Only 8-bit 4:2:0 content is accepted; only the luma plane is delivered.
"""

from collections import namedtuple

from main.errors import MeasurementError


CHROMA_420 = '420'


class UnsupportedChroma(MeasurementError):
    pass


class UnsupportedBitDepth(MeasurementError):
    pass


class InvalidGeometry(MeasurementError):
    pass


class TruncatedFrame(MeasurementError):
    pass


class VideoGeometry(namedtuple('VideoGeometry', ('width', 'height', 'fps_num',
                                                 'fps_den', 'chroma',
                                                 'bit_depth'))):
    __slots__ = ()

    def __new__(cls, width, height, fps_num=25, fps_den=1, chroma=CHROMA_420,
                bit_depth=8):
        width, height = int(width), int(height)
        fps_num, fps_den = int(fps_num), int(fps_den)
        if width <= 0 or height <= 0:
            raise InvalidGeometry('invalid geometry %dx%d' % (width, height))
        if fps_den <= 0 or fps_num <= 0:
            raise InvalidGeometry('invalid frame rate %d:%d'
                                  % (fps_num, fps_den))
        if int(bit_depth) != 8:
            raise UnsupportedBitDepth('only 8-bit content is supported, got '
                                      '%d bits' % int(bit_depth))
        if chroma != CHROMA_420:
            raise UnsupportedChroma('only 4:2:0 content is supported, got %s'
                                    % chroma)
        return super(VideoGeometry, cls).__new__(cls, width, height, fps_num,
                                                 fps_den, chroma, 8)

    @property
    def fps(self):
        return self.fps_num / self.fps_den

    @property
    def luma_bytes(self):
        return self.width * self.height

    @property
    def chroma_bytes(self):
        # both chroma planes, rounded up for odd dimensions
        return 2 * ((self.width + 1) // 2) * ((self.height + 1) // 2)

    @property
    def frame_bytes(self):
        return self.luma_bytes + self.chroma_bytes


class FrameStream(object):
    '''Luma planes of one stream in presentation order, produced lazily.

    `frame_count` is None when the container does not say (Y4M).'''

    def __init__(self, geometry, planes, frame_count=None):
        self.geometry = geometry
        self.frame_count = frame_count
        self._planes = planes

    def __iter__(self):
        return iter(self._planes)

# vim: set ts=4 sw=4 et:
