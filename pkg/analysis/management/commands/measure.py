# -*- coding: utf-8 -*-
"""
measure command

Score every stream listed in a measurement manifest with a pristine NIQE
model, pool the per-frame scores (weighted and plain mean) and write the
per-frame CSVs, the stream summary and the JSON report.

Usage: ./manage.py measure --manifest grid.csv --model niqe_model.json
                           [--out-dir DIR] [--jobs N]

A stream that fails to decode or score is recorded under failed_streams in
report.json and left out of summary.csv; the command only fails when every
stream does.
"""

import logging
import os
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from analysis.manifest import load_manifest, parse_fps
from analysis.pool import score_streams
from analysis.rd import StreamRecord, build_rd_curves, grid_completeness
from analysis.report import emit_report
from main.errors import EXIT_INPUT, EXIT_IO, MeasurementError
from main.utils import resolve_jobs
from niqe.model import load_model
from pooling.temporal import diagnose_frames, pool_mean, pool_weighted


logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s -> %(levelname)s: %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S',
    stream=sys.stderr)
logger = logging.getLogger()


class Command(BaseCommand):
    help = "Measures NIQE scores for every stream of a comparison grid."

    def add_arguments(self, parser):
        parser.add_argument('--manifest',
                            dest='manifest',
                            required=True,
                            help='CSV or JSON list of streams to measure')
        parser.add_argument('--model',
                            dest='model',
                            default=None,
                            help='Model file (overrides the manifest)')
        parser.add_argument('--out-dir',
                            dest='out_dir',
                            default=None,
                            help='Output directory (overrides the manifest)')
        parser.add_argument('-j',
                            '--jobs',
                            dest='jobs',
                            type=int,
                            default=None,
                            help='Number of scoring threads')
        parser.add_argument('--width',
                            dest='width',
                            type=int,
                            default=None,
                            help='Default width of raw YUV streams')
        parser.add_argument('--height',
                            dest='height',
                            type=int,
                            default=None,
                            help='Default height of raw YUV streams')
        parser.add_argument('--fps',
                            dest='fps',
                            default=None,
                            help='Default frame rate of raw YUV streams, e.g. 30000:1001')

    def handle(self, *args, **options):
        v = int(options.get('verbosity', 0))
        if v == 0:
            logger.setLevel(logging.ERROR)
        elif v == 1:
            logger.setLevel(logging.INFO)
        elif v >= 2:
            logger.setLevel(logging.DEBUG)

        try:
            defaults = {
                'width': options.get('width'),
                'height': options.get('height'),
                'fps': parse_fps(options.get('fps')),
            }
            manifest = load_manifest(options['manifest'], defaults)
        except MeasurementError as e:
            raise CommandError(str(e), returncode=e.exit_code)
        except OSError as e:
            raise CommandError('cannot read manifest %s: %s'
                               % (options['manifest'], e.strerror or e),
                               returncode=EXIT_IO)

        model_path = options.get('model') or manifest.model
        out_dir = options.get('out_dir') or manifest.output_dir or '.'
        if not model_path:
            raise CommandError('no model given on the command line or in the '
                               'manifest', returncode=EXIT_INPUT)
        try:
            model = load_model(model_path)
        except MeasurementError as e:
            raise CommandError(str(e), returncode=e.exit_code)
        except OSError as e:
            raise CommandError('cannot read model %s: %s'
                               % (model_path, e.strerror or e),
                               returncode=EXIT_IO)

        jobs = resolve_jobs(options.get('jobs'), manifest.jobs,
                            getattr(settings, 'NRVQ_DEFAULT_JOBS', 1))
        dark_luma = getattr(settings, 'NRVQ_DARK_FRAME_LUMA', 16)
        tolerance = getattr(settings, 'NRVQ_MONOTONIC_TOLERANCE', 0.05)
        logger.info('measuring %d streams with %d thread(s)',
                    len(manifest.streams), jobs)

        outcomes = score_streams(manifest.streams, model, jobs)
        records, frame_reports, failures = assemble(outcomes, dark_luma)

        try:
            os.makedirs(out_dir, exist_ok=True)
            curves = build_rd_curves(records, tolerance=tolerance)
            emit_report(out_dir, records, curves, frame_reports, model,
                        failures, grid_completeness(records) if records else None)
        except MeasurementError as e:
            raise CommandError(str(e), returncode=e.exit_code)
        except OSError as e:
            raise CommandError('cannot write to %s: %s'
                               % (out_dir, e.strerror or e),
                               returncode=EXIT_IO)

        self.stdout.write('streams measured: %d, failed: %d'
                          % (len(records), len(failures)))
        if failures and not records:
            codes = set(f['exit_code'] for f in failures)
            raise CommandError('all %d streams failed' % len(failures),
                               returncode=EXIT_IO if codes == {EXIT_IO}
                               else EXIT_INPUT)


def failure_dict(entry, error):
    if isinstance(error, MeasurementError):
        code = error.exit_code
    elif isinstance(error, OSError):
        code = EXIT_IO
    else:
        code = EXIT_INPUT
    return {
        'video_id': entry.video_id,
        'encoder_id': entry.encoder_id,
        'use_case': entry.use_case,
        'bitrate_kbps': entry.bitrate,
        'path': entry.path,
        'error': '%s: %s' % (type(error).__name__, error),
        'exit_code': code,
    }


def assemble(outcomes, dark_luma):
    '''StreamRecords, (record, series, diagnostics) triples and failure dicts
    from the scored outcomes.'''
    records = []
    frame_reports = []
    failures = []
    for outcome in outcomes:
        entry = outcome.entry
        if outcome.error is not None:
            failures.append(failure_dict(entry, outcome.error))
            continue
        series = outcome.series
        record = StreamRecord(entry.video_id, entry.encoder_id, entry.use_case,
                              entry.bitrate, pool_weighted(series),
                              pool_mean(series))
        logger.debug('%s: weighted %.4f, mean %.4f', entry.describe(),
                     record.pooled.score, record.baseline.score)
        records.append(record)
        frame_reports.append((record, series,
                              diagnose_frames(series, dark_luma)))
    return records, frame_reports, failures

# vim: set ts=4 sw=4 et:
