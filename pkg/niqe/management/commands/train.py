# -*- coding: utf-8 -*-
"""
train command

Fits a pristine NIQE model to the sharp patches of every frame found in a
corpus directory (binary PGM stills and Y4M streams) and writes the model
file.

Usage: ./manage.py train CORPUS_DIR [--model PATH] [--patch-size N]
                                    [--sharpness-fraction F]

Exit codes: 0 on success, 2 when the corpus violates the input contract
(no sources, too few patches, flat frames), 3 on IO errors.
"""

import logging
import os
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from main.errors import EXIT_IO, MeasurementError, MeasurementIOError
from main.utils import files_digest
from niqe.model import NiqeSettings, save_model, train_model
from nss.stats import InsufficientPatches
from videoio.pgm import read_pgm
from videoio.y4m import read_frames


logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s -> %(levelname)s: %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S',
    stream=sys.stderr)
logger = logging.getLogger()

CORPUS_EXTENSIONS = ('.pgm', '.y4m')


class CorpusReadError(MeasurementIOError):
    pass


class Command(BaseCommand):
    help = "Trains a pristine NIQE model from a directory of PGM/Y4M sources."

    def add_arguments(self, parser):
        parser.add_argument('corpus_dir', type=str)
        parser.add_argument('--model',
                            dest='model',
                            default='niqe_model.json',
                            help='Path of the model file to write')
        parser.add_argument('--patch-size',
                            dest='patch_size',
                            type=int,
                            default=None,
                            help='Patch size in pixels (even)')
        parser.add_argument('--sharpness-fraction',
                            dest='sharpness_fraction',
                            type=float,
                            default=None,
                            help='Keep patches at least this sharp relative to the sharpest one')
        parser.add_argument('--descriptor',
                            dest='descriptor',
                            default=None,
                            help='Free text provenance stored in the model file')

    def handle(self, *args, **options):
        v = int(options.get('verbosity', 0))
        if v == 0:
            logger.setLevel(logging.ERROR)
        elif v == 1:
            logger.setLevel(logging.INFO)
        elif v >= 2:
            logger.setLevel(logging.DEBUG)

        corpus_dir = options['corpus_dir']
        patch_size = options.get('patch_size') or \
            getattr(settings, 'NIQE_PATCH_SIZE', 96)
        fraction = options.get('sharpness_fraction') or \
            getattr(settings, 'NIQE_SHARPNESS_FRACTION', 0.75)

        try:
            niqe_settings = NiqeSettings(patch_size, fraction)
            paths = corpus_sources(corpus_dir)
            if not paths:
                raise InsufficientPatches('no PGM or Y4M sources in %s'
                                          % corpus_dir)
            counter = {'frames': 0}
            model = train_model(corpus_planes(paths, counter), niqe_settings)
            digest = files_digest(paths)
        except MeasurementError as e:
            raise CommandError(str(e), returncode=e.exit_code)
        except OSError as e:
            raise CommandError('cannot read %s: %s'
                               % (e.filename or corpus_dir, e.strerror or e),
                               returncode=EXIT_IO)

        model.corpus_descriptor = options.get('descriptor') or \
            '%d frames from %d files in %s, sha256 %s' % (
                counter['frames'], len(paths),
                os.path.basename(os.path.normpath(corpus_dir)), digest)
        try:
            save_model(model, options['model'])
        except OSError as e:
            raise CommandError('cannot write %s: %s'
                               % (options['model'], e.strerror or e),
                               returncode=EXIT_IO)

        logger.info('model written to %s', options['model'])
        self.stdout.write('patches: %d' % model.mvg.sample_count)
        self.stdout.write('frames: %d' % counter['frames'])
        self.stdout.write('corpus sha256: %s' % digest)
        self.stdout.write('model: %s' % options['model'])


def corpus_sources(corpus_dir):
    '''Sorted PGM/Y4M files directly inside corpus_dir.'''
    names = sorted(os.listdir(corpus_dir))
    return [os.path.join(corpus_dir, name) for name in names
            if os.path.splitext(name)[1].lower() in CORPUS_EXTENSIONS and
            os.path.isfile(os.path.join(corpus_dir, name))]


def corpus_planes(paths, counter):
    '''Every luma plane of every source, in path order. Errors name the
    offending file.'''
    for path in paths:
        logger.debug('reading %s', path)
        try:
            with open(path, 'rb') as fh:
                if path.lower().endswith('.pgm'):
                    planes = [read_pgm(fh)]
                else:
                    planes = read_frames(fh)
                for plane in planes:
                    counter['frames'] += 1
                    yield plane
        except OSError as e:
            raise CorpusReadError('cannot read %s: %s'
                                  % (path, e.strerror or e))
        except MeasurementError as e:
            raise type(e)('%s: %s' % (path, e))

# vim: set ts=4 sw=4 et:
