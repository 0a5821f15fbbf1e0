"""
YUV4MPEG2 reader.

    YUV4MPEG2 W1920 H1080 F30000:1001 Ip A1:1 C420mpeg2\\n
    FRAME\\n <luma bytes> <chroma bytes>
    FRAME\\n ...

Only the luma plane of each frame is kept; chroma is skipped by exact byte
count and never read past.
"""

import logging

from parse import parse

from main.errors import MeasurementError
from nss.image import LumaPlane

from .frames import (CHROMA_420, FrameStream, TruncatedFrame,
                     UnsupportedBitDepth, UnsupportedChroma, VideoGeometry)


logger = logging.getLogger(__name__)

SIGNATURE = b'YUV4MPEG2'
FRAME_MARKER = b'FRAME'
MAX_HEADER_BYTES = 4096

# 8-bit 4:2:0 family tags
CHROMA_TAGS = ('420', '420jpeg', '420paldv', '420mpeg2', '420p8')


class BadSignature(MeasurementError):
    pass


class MissingDimension(MeasurementError):
    pass


class BadFrameMarker(MeasurementError):
    pass


def parse_chroma(tag):
    if tag in CHROMA_TAGS:
        return CHROMA_420
    depth = parse('{family}p{depth:d}', tag)
    if depth and depth['depth'] != 8:
        raise UnsupportedBitDepth('unsupported bit depth in chroma tag C%s'
                                  % tag)
    raise UnsupportedChroma('unsupported chroma tag C%s' % tag)


def parse_y4m_header(data):
    '''VideoGeometry from the stream header line (up to the first newline).'''
    data = bytes(data)
    if not data.startswith(SIGNATURE):
        raise BadSignature('stream does not start with %s'
                           % SIGNATURE.decode())
    line = data.split(b'\n', 1)[0]
    try:
        text = line.decode('ascii')
    except UnicodeDecodeError:
        raise BadSignature('header line is not ASCII')
    tokens = text.split(' ')
    if tokens[0] != SIGNATURE.decode():
        raise BadSignature('bad stream signature %r' % tokens[0])

    fields = {'fps_num': 25, 'fps_den': 1, 'chroma': CHROMA_420}
    for token in tokens[1:]:
        if not token:
            continue
        tag, value = token[0], token[1:]
        if tag == 'W':
            fields['width'] = _header_int(value, 'W')
        elif tag == 'H':
            fields['height'] = _header_int(value, 'H')
        elif tag == 'F':
            rate = parse('{num:d}:{den:d}', value)
            if not rate:
                raise BadSignature('bad frame rate token F%s' % value)
            fields['fps_num'], fields['fps_den'] = rate['num'], rate['den']
        elif tag == 'C':
            fields['chroma'] = parse_chroma(value)
        elif tag in 'IAX':
            # interlacing, aspect ratio and extensions do not affect luma
            continue
        else:
            logger.debug('ignoring unknown Y4M header token %s', token)

    for name, tag in (('width', 'W'), ('height', 'H')):
        if name not in fields:
            raise MissingDimension('Y4M header has no %s token' % tag)
    return VideoGeometry(**fields)


def _header_int(value, tag):
    try:
        number = int(value)
    except ValueError:
        raise MissingDimension('bad %s token %r' % (tag, value))
    if number <= 0:
        raise MissingDimension('bad %s token %r' % (tag, value))
    return number


def read_header(fh):
    line = fh.readline(MAX_HEADER_BYTES)
    if not line.endswith(b'\n'):
        if not line.startswith(SIGNATURE):
            raise BadSignature('stream does not start with %s'
                               % SIGNATURE.decode())
        raise BadSignature('Y4M header line is unterminated')
    return parse_y4m_header(line)


def _read_exact(fh, size, frame_index):
    data = fh.read(size)
    if len(data) != size:
        raise TruncatedFrame('frame %d is truncated: expected %d bytes, got %d'
                             % (frame_index, size, len(data)))
    return data


def iter_y4m_planes(fh, geometry, max_frames=None):
    index = 0
    while max_frames is None or index < max_frames:
        marker = fh.readline(MAX_HEADER_BYTES)
        if not marker:
            return
        if not (marker.startswith(FRAME_MARKER) and
                marker[len(FRAME_MARKER):len(FRAME_MARKER) + 1] in (b'\n', b' ')
                and marker.endswith(b'\n')):
            raise BadFrameMarker('bad frame marker %r before frame %d'
                                 % (marker[:16], index))
        luma = _read_exact(fh, geometry.luma_bytes, index)
        _read_exact(fh, geometry.chroma_bytes, index)
        yield LumaPlane(geometry.width, geometry.height, luma)
        index += 1


def read_frames(fh, max_frames=None):
    '''FrameStream over a binary Y4M file object. Frames are parsed while
    iterating; a truncated frame raises TruncatedFrame.'''
    geometry = read_header(fh)
    return FrameStream(geometry, iter_y4m_planes(fh, geometry, max_frames))

# vim: set ts=4 sw=4 et:
