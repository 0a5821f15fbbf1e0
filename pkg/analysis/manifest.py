"""
Measurement manifest: the authoritative list of streams in a comparison grid
and their metadata (video, encoder, use case, bitrate), as CSV or JSON.

CSV columns: path, format, video_id, encoder_id, use_case, bitrate_kbps and
optionally width, height, fps. JSON: an object with `streams` (list of
objects with the same keys) and optional `model`, `output_dir`, `jobs`.
Relative paths are resolved against the manifest's directory.
"""

from collections import namedtuple
import csv
import json
import os

from parse import parse

from main.errors import MeasurementError
from videoio.frames import VideoGeometry
from videoio.raw import read_raw_yuv
from videoio.y4m import read_frames


FORMATS = ('y4m', 'raw')
EXTENSIONS = {'.y4m': 'y4m', '.yuv': 'raw', '.raw': 'raw'}
REQUIRED_COLUMNS = ('path', 'video_id', 'encoder_id', 'use_case',
                    'bitrate_kbps')


class ManifestError(MeasurementError):
    pass


class StreamEntry(namedtuple('StreamEntry', ('path', 'format', 'video_id',
                                             'encoder_id', 'use_case',
                                             'bitrate', 'geometry'))):
    __slots__ = ()

    @property
    def key(self):
        return (self.video_id, self.encoder_id, self.use_case)

    def describe(self):
        return '%s/%s/%s@%s' % (self.key + ('%g' % self.bitrate,))

    def open_stream(self, fh):
        if self.format == 'y4m':
            return read_frames(fh)
        return read_raw_yuv(fh, self.geometry)


MeasurementManifest = namedtuple('MeasurementManifest',
                                 ('streams', 'model', 'output_dir', 'jobs'))


def parse_fps(value):
    if value in (None, ''):
        return None
    if isinstance(value, (int, float)):
        return (int(value), 1)
    rate = parse('{num:d}:{den:d}', str(value)) or \
        parse('{num:d}/{den:d}', str(value))
    if rate:
        return (rate['num'], rate['den'])
    try:
        return (int(value), 1)
    except ValueError:
        raise ManifestError('bad frame rate %r' % (value,))


def _optional_int(value, name):
    if value in (None, ''):
        return None
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ManifestError('bad %s %r' % (name, value))


def build_entry(row, base_dir, defaults=None, position=0):
    defaults = defaults or {}
    missing = [c for c in REQUIRED_COLUMNS if row.get(c) in (None, '')]
    if missing:
        raise ManifestError('stream %d lacks %s' % (position, ', '.join(missing)))

    path = str(row['path'])
    if not os.path.isabs(path):
        path = os.path.normpath(os.path.join(base_dir, path))
    fmt = (row.get('format') or '').lower() or \
        EXTENSIONS.get(os.path.splitext(path)[1].lower())
    if fmt not in FORMATS:
        raise ManifestError('stream %d has unknown format %r'
                            % (position, row.get('format')))
    try:
        bitrate = float(row['bitrate_kbps'])
    except (TypeError, ValueError):
        raise ManifestError('stream %d has bad bitrate %r'
                            % (position, row['bitrate_kbps']))
    if not bitrate > 0:
        raise ManifestError('stream %d bitrate must be positive' % position)

    geometry = None
    if fmt == 'raw':
        width = _optional_int(row.get('width'), 'width') or defaults.get('width')
        height = _optional_int(row.get('height'), 'height') or \
            defaults.get('height')
        fps = parse_fps(row.get('fps')) or defaults.get('fps') or (25, 1)
        if not width or not height:
            raise ManifestError('raw stream %d (%s) needs width and height'
                                % (position, path))
        try:
            geometry = VideoGeometry(width, height, fps[0], fps[1])
        except MeasurementError as e:
            raise ManifestError('stream %d: %s' % (position, e))

    return StreamEntry(path, fmt, str(row['video_id']), str(row['encoder_id']),
                       str(row['use_case']), bitrate, geometry)


def check_unique(entries):
    seen = set()
    for entry in entries:
        cell = entry.key + (entry.bitrate,)
        if cell in seen:
            raise ManifestError('duplicate stream %s' % entry.describe())
        seen.add(cell)


def load_manifest(path, defaults=None):
    '''MeasurementManifest from a .json or .csv file.'''
    base_dir = os.path.dirname(os.path.abspath(path))
    with open(path, newline='', encoding='utf-8') as fh:
        if path.lower().endswith('.json'):
            try:
                data = json.load(fh)
            except ValueError as e:
                raise ManifestError('manifest %s is not valid JSON: %s'
                                    % (path, e))
            if not isinstance(data, dict) or \
                    not isinstance(data.get('streams'), list):
                raise ManifestError('manifest %s has no stream list' % path)
            rows = data['streams']
            model = data.get('model')
            output_dir = data.get('output_dir')
            jobs = _optional_int(data.get('jobs'), 'jobs')
        else:
            reader = csv.DictReader(fh)
            rows = list(reader)
            model = output_dir = jobs = None

    entries = []
    for position, row in enumerate(rows):
        if not isinstance(row, dict):
            raise ManifestError('stream %d is not an object' % position)
        entries.append(build_entry(row, base_dir, defaults, position))
    check_unique(entries)

    if model and not os.path.isabs(model):
        model = os.path.normpath(os.path.join(base_dir, model))
    if output_dir and not os.path.isabs(output_dir):
        output_dir = os.path.normpath(os.path.join(base_dir, output_dir))
    return MeasurementManifest(entries, model, output_dir, jobs)

# vim: set ts=4 sw=4 et:
