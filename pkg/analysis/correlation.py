"""
Correlation of pooled metric scores with subjective scores, one video at a
time, then averaged over videos without weighting.
"""

from collections import namedtuple, OrderedDict
import csv
import logging
import math

from main.errors import MeasurementError
from nss.stats import DegenerateInput, pearson
from pooling.temporal import WEIGHTED


logger = logging.getLogger(__name__)

MIN_POINTS = 3
SUBJECTIVE_COLUMNS = ('video_id', 'encoder_id', 'use_case', 'bitrate_kbps',
                      'mos')


class InsufficientOverlap(MeasurementError):
    pass


class SubjectiveFormatError(MeasurementError):
    pass


SubjectiveScore = namedtuple('SubjectiveScore', ('video_id', 'encoder_id',
                                                 'use_case', 'bitrate', 'mos'))

CorrelationReport = namedtuple('CorrelationReport', ('per_video', 'average_r',
                                                     'skipped'))


def read_subjective_csv(fh):
    '''SubjectiveScore rows from a CSV with the SUBJECTIVE_COLUMNS header.'''
    reader = csv.DictReader(fh)
    missing = [c for c in SUBJECTIVE_COLUMNS
               if c not in (reader.fieldnames or ())]
    if missing:
        raise SubjectiveFormatError('subjective table lacks columns: %s'
                                    % ', '.join(missing))
    rows = []
    for line, row in enumerate(reader, start=2):
        try:
            rows.append(SubjectiveScore(row['video_id'], row['encoder_id'],
                                        row['use_case'],
                                        float(row['bitrate_kbps']),
                                        float(row['mos'])))
        except (TypeError, ValueError):
            raise SubjectiveFormatError('bad subjective row on line %d' % line)
    return rows


def correlate_with_subjective(records, subjective, method=WEIGHTED):
    '''Per-video Pearson r between negated metric scores and subjective
    scores, matched on (video, encoder, use case, bitrate).

    Videos with fewer than three matched points, or with a constant column,
    are skipped and listed in `skipped`.'''
    metric = {record.key + (record.bitrate,): record.score(method)
              for record in records}
    matched = OrderedDict()
    for row in subjective:
        cell = (row.video_id, row.encoder_id, row.use_case, float(row.bitrate))
        if cell in metric:
            matched.setdefault(row.video_id, []).append(
                (-metric[cell], float(row.mos)))

    videos = sorted(set(record.video_id for record in records) |
                    set(row.video_id for row in subjective))
    per_video = []
    skipped = []
    for video_id in videos:
        pairs = matched.get(video_id, [])
        if len(pairs) < MIN_POINTS:
            reason = '%d matched point(s), need %d' % (len(pairs), MIN_POINTS)
            logger.warning('skipping video %s: %s', video_id, reason)
            skipped.append((video_id, reason))
            continue
        try:
            r = pearson([x for x, _ in pairs], [y for _, y in pairs])
        except DegenerateInput as e:
            logger.warning('skipping video %s: %s', video_id, e)
            skipped.append((video_id, str(e)))
            continue
        per_video.append((video_id, r))

    if not per_video:
        raise InsufficientOverlap('no video has %d or more matched points'
                                  % MIN_POINTS)
    average = math.fsum(r for _, r in per_video) / len(per_video)
    return CorrelationReport(per_video, average, skipped)

# vim: set ts=4 sw=4 et:
