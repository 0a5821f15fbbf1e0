"""
Report files: per-frame CSV, stream summary CSV, RD/plot/violation CSVs and
the JSON machine report.

CSV dialect: comma separated, header row, '.' decimal point, LF line endings.
Numbers carry 9 significant digits; rows are sorted, so identical inputs give
byte-identical files.
"""

import csv
import io
import os

from django.utils.text import slugify

from main.errors import MeasurementError, MeasurementIOError
from main.utils import (canonical_json, format_number, json_digest,
                        round_floats)
from pooling.temporal import MEAN, WEIGHTED, PooledScore

from .rd import StreamRecord, frame_preference, invert_for_plot


FRAME_COLUMNS = ('frame_index', 'score', 'weight', 'dark_frame', 'outlier',
                 'mean_luma', 'patch_count', 'degenerate',
                 'covariance_fallback')
SUMMARY_COLUMNS = ('video_id', 'encoder_id', 'use_case', 'bitrate_kbps',
                   'weighted_score', 'mean_score', 'total_weight',
                   'frames_total', 'frames_zero_weight', 'fallback_used',
                   'violation_count')
RD_COLUMNS = ('video_id', 'encoder_id', 'use_case', 'bitrate_kbps', 'score',
              'verdict')
PLOT_COLUMNS = ('video_id', 'encoder_id', 'use_case', 'bitrate_kbps',
                'plotted_score')
VIOLATION_COLUMNS = ('video_id', 'encoder_id', 'use_case', 'low_bitrate_kbps',
                     'high_bitrate_kbps', 'delta', 'lower_bitrate_frame_share')

SUMMARY_NAME = 'summary.csv'
REPORT_NAME = 'report.json'
FRAMES_DIR = 'frames'


class ReportError(MeasurementIOError):
    pass


class SummaryFormatError(MeasurementError):
    pass


def _row(values):
    return [format_number(v) if not isinstance(v, str) else v for v in values]


def render_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow(_row(row))
    return buf.getvalue()


def write_text(path, text):
    try:
        with open(path, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)
    except OSError as e:
        raise ReportError('cannot write %s: %s' % (path, e))


def stream_slug(key, bitrate):
    '''Per-frame file stem: a readable slug of the stream key plus a short
    digest of the exact key, so distinct keys never share a file.'''
    cell = list(key) + [format_number(bitrate)]
    return '%s-%s' % (slugify('-'.join(cell)), json_digest(cell)[:10])


def frame_rows(series, diagnostics):
    return [(d.frame_index, frame.score, d.weight, d.dark_frame,
             d.outlier_score, frame.mean_luma, frame.patch_count,
             frame.degenerate, frame.covariance_fallback)
            for frame, d in zip(series, diagnostics)]


def summary_rows(records, curves):
    violations = {curve.key: len(curve.violations) for curve in curves}
    rows = []
    for record in sorted(records, key=lambda r: r.key + (r.bitrate,)):
        baseline = record.baseline.score if record.baseline else None
        rows.append(record.key + (
            record.bitrate, record.pooled.score, baseline,
            record.pooled.total_weight, record.pooled.frames_total,
            record.pooled.frames_zero_weight, record.pooled.fallback_used,
            violations.get(record.key, 0)))
    return rows


def curve_dict(curve):
    return {
        'video_id': curve.key[0],
        'encoder_id': curve.key[1],
        'use_case': curve.key[2],
        'points': [[b, s] for b, s in curve.points],
        'plotted': [[b, s] for b, s in invert_for_plot(curve)],
        'violations': [v._asdict() for v in curve.violations],
        'verdict': curve.verdict,
    }


def emit_report(out_dir, records, curves, frame_reports=(), model=None,
                failures=(), grid=None):
    '''Write the measurement outputs to `out_dir`:

    frames/<stream>.csv   one row per frame
    summary.csv           one row per stream
    report.json           everything above plus model settings and digest

    `frame_reports` holds (record, FrameScoreSeries, diagnostics) triples.'''
    frames_dir = os.path.join(out_dir, FRAMES_DIR)
    try:
        os.makedirs(frames_dir, exist_ok=True)
    except OSError as e:
        raise ReportError('cannot create %s: %s' % (frames_dir, e))

    streams = []
    for record, series, diagnostics in sorted(
            frame_reports, key=lambda item: item[0].key + (item[0].bitrate,)):
        rows = frame_rows(series, diagnostics)
        write_text(os.path.join(frames_dir,
                                stream_slug(record.key, record.bitrate) + '.csv'),
                   render_csv(FRAME_COLUMNS, rows))
        streams.append({
            'video_id': record.video_id,
            'encoder_id': record.encoder_id,
            'use_case': record.use_case,
            'bitrate_kbps': record.bitrate,
            'weighted': record.pooled._asdict(),
            'mean': record.baseline._asdict() if record.baseline else None,
            'frames': [dict(zip(FRAME_COLUMNS, row)) for row in rows],
        })

    write_text(os.path.join(out_dir, SUMMARY_NAME),
               render_csv(SUMMARY_COLUMNS, summary_rows(records, curves)))

    report = {
        'model': None,
        'streams': streams,
        'curves': [curve_dict(curve) for curve in curves],
        'failed_streams': sorted(failures, key=lambda f: (f['video_id'],
                                                          f['encoder_id'],
                                                          f['use_case'],
                                                          f['bitrate_kbps'])),
        'grid': grid._asdict() if grid is not None else None,
    }
    if model is not None:
        report['model'] = {
            'settings': model.settings.as_dict(),
            'settings_digest': model.settings_digest(),
            'sample_count': model.mvg.sample_count,
            'corpus_descriptor': model.corpus_descriptor,
        }
    write_text(os.path.join(out_dir, REPORT_NAME),
               canonical_json(round_floats(report)))


def write_rd_outputs(out_dir, curves, frames_dir=None):
    '''rd.csv, plot.csv and violations.csv for the given curves.'''
    rd_rows = []
    plot_rows = []
    violation_rows = []
    for curve in curves:
        for bitrate, score in curve.points:
            rd_rows.append(curve.key + (bitrate, score, curve.verdict))
        for bitrate, plotted in invert_for_plot(curve):
            plot_rows.append(curve.key + (bitrate, plotted))
        for violation in curve.violations:
            share = None
            if frames_dir:
                share = violation_frame_share(frames_dir, curve.key, violation)
            violation_rows.append(curve.key + (violation.low_bitrate,
                                               violation.high_bitrate,
                                               violation.delta, share))
    write_text(os.path.join(out_dir, 'rd.csv'), render_csv(RD_COLUMNS, rd_rows))
    write_text(os.path.join(out_dir, 'plot.csv'),
               render_csv(PLOT_COLUMNS, plot_rows))
    write_text(os.path.join(out_dir, 'violations.csv'),
               render_csv(VIOLATION_COLUMNS, violation_rows))
    return violation_rows


def violation_frame_share(frames_dir, key, violation):
    '''Share of frames where the lower bitrate stream scored better, or None
    when either per-frame file is missing.'''
    low = os.path.join(frames_dir, stream_slug(key, violation.low_bitrate) + '.csv')
    high = os.path.join(frames_dir,
                        stream_slug(key, violation.high_bitrate) + '.csv')
    try:
        with open(low, newline='') as fh:
            low_scores = read_frame_scores(fh)
        with open(high, newline='') as fh:
            high_scores = read_frame_scores(fh)
    except FileNotFoundError:
        return None
    except OSError as e:
        raise ReportError('cannot read per-frame scores: %s' % e)
    return frame_preference(low_scores, high_scores)


def read_frame_scores(fh):
    reader = csv.DictReader(fh)
    try:
        return [float(row['score']) for row in reader]
    except (KeyError, TypeError, ValueError):
        raise SummaryFormatError('malformed per-frame score file')


def _flag(value):
    if value in ('1', 'true', 'True'):
        return True
    if value in ('0', 'false', 'False', ''):
        return False
    raise ValueError('bad flag %r' % value)


def read_summary_csv(fh):
    '''StreamRecords from a summary CSV written by the measure command.'''
    reader = csv.DictReader(fh)
    missing = [c for c in SUMMARY_COLUMNS
               if c not in (reader.fieldnames or ())]
    if missing:
        raise SummaryFormatError('summary lacks columns: %s'
                                 % ', '.join(missing))
    records = []
    for line, row in enumerate(reader, start=2):
        try:
            frames_total = int(row['frames_total'])
            pooled = PooledScore(float(row['weighted_score']), WEIGHTED,
                                 float(row['total_weight']), frames_total,
                                 int(row['frames_zero_weight']),
                                 _flag(row['fallback_used']))
            baseline = None
            if row['mean_score']:
                baseline = PooledScore(float(row['mean_score']), MEAN,
                                       float(frames_total), frames_total, 0,
                                       False)
            records.append(StreamRecord(row['video_id'], row['encoder_id'],
                                        row['use_case'],
                                        float(row['bitrate_kbps']), pooled,
                                        baseline))
        except (TypeError, ValueError, MeasurementError) as e:
            raise SummaryFormatError('malformed summary row on line %d: %s'
                                     % (line, e))
    return records


def correlation_dict(report):
    return {
        'per_video': [{'video_id': video_id, 'r': r}
                      for video_id, r in report.per_video],
        'average_r': report.average_r,
        'skipped': [{'video_id': video_id, 'reason': reason}
                    for video_id, reason in report.skipped],
    }

# vim: set ts=4 sw=4 et:
