# -*- coding: utf-8 -*-
"""
correlate command

Pearson correlation, per video, between the pooled NIQE scores of a
measurement summary and a table of subjective scores. NIQE is lower-is-better,
so the metric is negated before correlating.

Usage: ./manage.py correlate summary.csv subjective.csv [--out-dir DIR]
                                                        [--pooling weighted|mean]
"""

import logging
import os
import sys

from django.core.management.base import BaseCommand, CommandError

from analysis.correlation import correlate_with_subjective, read_subjective_csv
from analysis.report import correlation_dict, read_summary_csv, write_text
from main.errors import EXIT_IO, MeasurementError
from main.utils import canonical_json, round_floats
from pooling.temporal import MEAN, WEIGHTED


logging.basicConfig(
    level=logging.WARNING,
    format='%(asctime)s -> %(levelname)s: %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S',
    stream=sys.stderr)
logger = logging.getLogger()

CORRELATION_NAME = 'correlation.json'


class Command(BaseCommand):
    help = "Correlates pooled scores with subjective scores, per video."

    def add_arguments(self, parser):
        parser.add_argument('summary', type=str)
        parser.add_argument('subjective', type=str)
        parser.add_argument('--out-dir',
                            dest='out_dir',
                            default='.',
                            help='Directory for correlation.json')
        parser.add_argument('--pooling',
                            dest='pooling',
                            choices=(WEIGHTED, MEAN),
                            default=WEIGHTED,
                            help='Pooled score to correlate')

    def handle(self, *args, **options):
        v = int(options.get('verbosity', 0))
        if v == 0:
            logger.setLevel(logging.ERROR)
        elif v == 1:
            logger.setLevel(logging.INFO)
        elif v >= 2:
            logger.setLevel(logging.DEBUG)

        out_dir = options['out_dir']
        try:
            with open(options['summary'], newline='', encoding='utf-8') as fh:
                records = read_summary_csv(fh)
            with open(options['subjective'], newline='', encoding='utf-8') as fh:
                subjective = read_subjective_csv(fh)
            report = correlate_with_subjective(records, subjective,
                                               options['pooling'])
            os.makedirs(out_dir, exist_ok=True)
            write_text(os.path.join(out_dir, CORRELATION_NAME),
                       canonical_json(round_floats(correlation_dict(report))))
        except MeasurementError as e:
            raise CommandError(str(e), returncode=e.exit_code)
        except OSError as e:
            raise CommandError('%s: %s' % (e.filename or out_dir,
                                           e.strerror or e),
                               returncode=EXIT_IO)

        for video_id, r in report.per_video:
            self.stdout.write('%s\t%.4f' % (video_id, r))
        for video_id, reason in report.skipped:
            self.stdout.write('%s\tskipped (%s)' % (video_id, reason))
        self.stdout.write('average\t%.4f' % report.average_r)

# vim: set ts=4 sw=4 et:
