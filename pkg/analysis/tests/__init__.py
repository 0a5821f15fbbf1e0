import os

import numpy as np

from analysis.rd import StreamRecord
from analysis.report import SUMMARY_COLUMNS, render_csv, summary_rows
from niqe.model import NiqeSettings, train_model
from niqe.tests import pink_noise_frame, pristine_corpus
from pooling.temporal import MEAN, WEIGHTED, PooledScore
from videoio.tests import write_file, y4m_bytes


BITRATES = (1000, 2000, 4000, 6000, 8000, 10000, 12000)
USE_CASES = ('fast', 'universal', 'ripping')


def make_record(video_id, encoder_id, use_case, bitrate, score, mean=None):
    pooled = PooledScore(float(score), WEIGHTED, 1.0, 1, 0, False)
    baseline = None
    if mean is not None:
        baseline = PooledScore(float(mean), MEAN, 1.0, 1, 0, False)
    return StreamRecord(video_id, encoder_id, use_case, bitrate, pooled,
                        baseline)


def curve_records(scores, key=('hera', 'x264', 'fast'), bitrates=BITRATES):
    return [make_record(*(key + (bitrate, score)))
            for bitrate, score in zip(bitrates, scores)]


def write_summary(path, records):
    return write_file(path, render_csv(SUMMARY_COLUMNS,
                                       summary_rows(records, []))
                      .encode('utf-8'))


def small_model(seed=0, patch_size=32):
    '''Model trained on 128x128 synthetic frames with small patches.'''
    corpus = pristine_corpus(seed=seed, count=8, width=128, height=128)
    return train_model(corpus, NiqeSettings(patch_size=patch_size),
                       corpus_descriptor='synthetic')


def write_stream(path, rng, frames=2, width=64, height=64, truncate=0):
    planes = [pink_noise_frame(rng, width, height).samples
              for _ in range(frames)]
    data = y4m_bytes(planes, width, height)
    if truncate:
        data = data[:-truncate]
    return write_file(path, data)


def write_grid(directory, seed=0, videos=('hera', 'tractor'),
               encoders=('x264', 'x265'), use_cases=USE_CASES,
               bitrates=BITRATES, frames=2):
    '''One Y4M stream per grid cell plus a CSV manifest; returns the manifest
    path.'''
    rng = np.random.default_rng(seed)
    lines = ['path,video_id,encoder_id,use_case,bitrate_kbps']
    for video in videos:
        for encoder in encoders:
            for use_case in use_cases:
                for bitrate in bitrates:
                    name = '%s_%s_%s_%d.y4m' % (video, encoder, use_case, bitrate)
                    write_stream(os.path.join(directory, name), rng, frames)
                    lines.append('%s,%s,%s,%s,%d' % (name, video, encoder,
                                                     use_case, bitrate))
    return write_file(os.path.join(directory, 'manifest.csv'),
                      ('\n'.join(lines) + '\n').encode('utf-8'))
