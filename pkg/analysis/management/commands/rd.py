# -*- coding: utf-8 -*-
"""
rd command

Builds rate-distortion curves from a measurement summary, writes the curve
points (rd.csv), the inverted series for plotting (plot.csv) and every
monotonicity violation (violations.csv).

Usage: ./manage.py rd summary.csv [--out-dir DIR] [--pooling weighted|mean]
                                  [--tolerance T] [--frames-dir DIR]
"""

import logging
import os
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from analysis.rd import build_rd_curves, compare_pooling
from analysis.report import read_summary_csv, write_rd_outputs
from main.errors import EXIT_IO, MeasurementError
from pooling.temporal import MEAN, WEIGHTED


logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s -> %(levelname)s: %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S',
    stream=sys.stderr)
logger = logging.getLogger()


class Command(BaseCommand):
    help = "Builds RD curves from a summary and reports non-monotonic steps."

    def add_arguments(self, parser):
        parser.add_argument('summary', type=str)
        parser.add_argument('--out-dir',
                            dest='out_dir',
                            default='.',
                            help='Directory for rd.csv, plot.csv and violations.csv')
        parser.add_argument('--pooling',
                            dest='pooling',
                            choices=(WEIGHTED, MEAN),
                            default=WEIGHTED,
                            help='Pooled score to plot')
        parser.add_argument('--tolerance',
                            dest='tolerance',
                            type=float,
                            default=None,
                            help='Score increase tolerated between adjacent bitrates')
        parser.add_argument('--frames-dir',
                            dest='frames_dir',
                            default=None,
                            help='Per-frame CSV directory written by measure')

    def handle(self, *args, **options):
        v = int(options.get('verbosity', 0))
        if v == 0:
            logger.setLevel(logging.ERROR)
        elif v == 1:
            logger.setLevel(logging.INFO)
        elif v >= 2:
            logger.setLevel(logging.DEBUG)

        tolerance = options.get('tolerance')
        if tolerance is None:
            tolerance = getattr(settings, 'NRVQ_MONOTONIC_TOLERANCE', 0.05)
        out_dir = options['out_dir']

        try:
            with open(options['summary'], newline='', encoding='utf-8') as fh:
                records = read_summary_csv(fh)
            curves = build_rd_curves(records, options['pooling'], tolerance)
            os.makedirs(out_dir, exist_ok=True)
            violations = write_rd_outputs(out_dir, curves,
                                          options.get('frames_dir'))
        except MeasurementError as e:
            raise CommandError(str(e), returncode=e.exit_code)
        except OSError as e:
            raise CommandError('%s: %s' % (e.filename or options['summary'],
                                           e.strerror or e),
                               returncode=EXIT_IO)

        for curve in curves:
            self.stdout.write('%s: %d points, %s'
                              % ('/'.join(curve.key), len(curve.points),
                                 curve.verdict))
        self.stdout.write('violations: %d' % len(violations))

        if v >= 2 and all(record.baseline for record in records):
            try:
                comparison = compare_pooling(records, tolerance)
            except MeasurementError as e:
                logger.warning('pooling comparison skipped: %s', e)
                return
            for key, weighted, mean in comparison:
                logger.debug('%s: %d violations weighted, %d mean',
                             '/'.join(key), weighted, mean)

# vim: set ts=4 sw=4 et:
