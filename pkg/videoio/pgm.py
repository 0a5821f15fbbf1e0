"""
Binary PGM (P5, maxval 255) reader for training corpora.
"""

from main.errors import MeasurementError
from nss.image import LumaPlane

from .frames import TruncatedFrame


MAGIC = b'P5'
WHITESPACE = b' \t\r\n\x0b\x0c'


class BadMagic(MeasurementError):
    pass


class UnsupportedMaxval(MeasurementError):
    pass


def _header_tokens(data, count):
    '''First `count` whitespace separated header tokens after the magic,
    skipping comments; returns the tokens and the raster offset.'''
    tokens = []
    pos = len(MAGIC)
    length = len(data)
    while len(tokens) < count:
        while pos < length and data[pos:pos + 1] in WHITESPACE:
            pos += 1
        if pos < length and data[pos:pos + 1] == b'#':
            while pos < length and data[pos:pos + 1] not in b'\r\n':
                pos += 1
            continue
        start = pos
        while pos < length and data[pos:pos + 1] not in WHITESPACE + b'#':
            pos += 1
        if start == pos:
            raise TruncatedFrame('PGM header is truncated')
        tokens.append(data[start:pos])
    # exactly one whitespace byte separates the header from the raster
    if pos >= length or data[pos:pos + 1] not in WHITESPACE:
        raise TruncatedFrame('PGM header is truncated')
    return tokens, pos + 1


def parse_pgm(data):
    data = bytes(data)
    if not data.startswith(MAGIC) or data[2:3] not in WHITESPACE + b'#':
        raise BadMagic('not a binary PGM (P5) image')
    tokens, offset = _header_tokens(data, 3)
    try:
        width, height, maxval = (int(token) for token in tokens)
    except ValueError:
        raise BadMagic('malformed PGM header %r' % (tokens,))
    if maxval != 255:
        raise UnsupportedMaxval('only maxval 255 is supported, got %d' % maxval)
    size = width * height
    raster = data[offset:offset + size]
    if len(raster) != size:
        raise TruncatedFrame('PGM raster is truncated: expected %d bytes, '
                             'got %d' % (size, len(raster)))
    return LumaPlane(width, height, raster)


def read_pgm(fh):
    '''LumaPlane from a binary PGM file object.'''
    return parse_pgm(fh.read())

# vim: set ts=4 sw=4 et:
