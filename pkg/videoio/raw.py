"""
Headerless planar YUV 4:2:0 reader; geometry comes from the caller.
"""

import os

from main.errors import MeasurementError
from nss.image import LumaPlane

from .frames import FrameStream, TruncatedFrame


class SizeMismatch(MeasurementError):
    pass


def _stream_size(fh):
    try:
        return os.fstat(fh.fileno()).st_size - fh.tell()
    except (AttributeError, OSError, ValueError):
        position = fh.tell()
        fh.seek(0, os.SEEK_END)
        size = fh.tell() - position
        fh.seek(position)
        return size


def iter_raw_planes(fh, geometry, frame_count):
    for index in range(frame_count):
        luma = fh.read(geometry.luma_bytes)
        if len(luma) != geometry.luma_bytes:
            raise TruncatedFrame('frame %d is truncated' % index)
        chroma = fh.read(geometry.chroma_bytes)
        if len(chroma) != geometry.chroma_bytes:
            raise TruncatedFrame('frame %d is truncated' % index)
        yield LumaPlane(geometry.width, geometry.height, luma)


def read_raw_yuv(fh, geometry):
    '''FrameStream over a binary raw YUV file object. The size must be a whole
    number of frames.'''
    size = _stream_size(fh)
    frame_bytes = geometry.frame_bytes
    if size % frame_bytes:
        raise SizeMismatch('%d bytes is not a whole number of %dx%d frames '
                           '(%d bytes each)' % (size, geometry.width,
                                                geometry.height, frame_bytes))
    frame_count = size // frame_bytes
    return FrameStream(geometry, iter_raw_planes(fh, geometry, frame_count),
                       frame_count)

# vim: set ts=4 sw=4 et:
