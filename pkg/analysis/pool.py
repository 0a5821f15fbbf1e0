"""
Threaded frame scoring for measurement batches.

Frames of every stream in a batch go through one bounded task queue to a fixed
number of worker threads; results are keyed by (stream, frame) and put back
in order before anything is pooled or written, so the outcome does not depend
on the number of threads or on which thread finished first.
"""

from collections import deque, namedtuple
import logging
from queue import Queue
from threading import Thread

from main.errors import MeasurementError
from niqe.scoring import FrameScoreSeries, score_frame
from pooling.temporal import EmptySeries


logger = logging.getLogger(__name__)

STOP = None


def frame_scoring_worker(work, output, model):
    while True:
        task = work.get()
        try:
            if task is STOP:
                return 0
            stream, index, plane = task
            try:
                result = score_frame(plane, model, index)
            except MeasurementError as e:
                logger.debug('stream %d frame %d: %s', stream, index, e)
                result = e
            except Exception as e:
                logger.exception('unexpected error scoring stream %d frame %d',
                                 stream, index)
                result = e
            output.append((stream, index, result))
        finally:
            work.task_done()


class FrameScoringPool(object):
    def __init__(self, model, num_threads=1, backlog=None):
        self.tasks = Queue(maxsize=backlog or 2 * num_threads)
        self.results = deque()
        self.threads = []
        for _ in range(num_threads):
            thread = Thread(target=frame_scoring_worker,
                            args=(self.tasks, self.results, model))
            thread.daemon = True
            self.threads.append(thread)

    def start(self):
        logger.debug("starting %d threads", len(self.threads))
        for thread in self.threads:
            thread.start()

    def submit(self, stream, index, plane):
        # blocks while the backlog is full, so at most `backlog` decoded
        # planes wait in memory
        self.tasks.put((stream, index, plane))

    def finish(self):
        '''Stop the workers once the queue drains; returns
        {stream: [(frame index, FrameScore or exception), ...]} in frame
        order.'''
        for _ in self.threads:
            self.tasks.put(STOP)
        logger.debug("joining on all threads")
        for thread in self.threads:
            thread.join()
        collected = {}
        for stream, index, result in self.results:
            collected.setdefault(stream, []).append((index, result))
        for frames in collected.values():
            frames.sort(key=lambda item: item[0])
        return collected


StreamOutcome = namedtuple('StreamOutcome', ('entry', 'series', 'error'))


def _outcome(entry, frames, read_error):
    if read_error is not None:
        return StreamOutcome(entry, None, read_error)
    for index, result in frames:
        if isinstance(result, Exception):
            return StreamOutcome(entry, None, result)
    if not frames:
        return StreamOutcome(entry, None,
                             EmptySeries('%s has no frames' % entry.path))
    return StreamOutcome(entry, FrameScoreSeries(r for _, r in frames), None)


def score_streams(entries, model, jobs=1):
    '''Score every frame of every manifest entry with `jobs` threads.

    Returns one StreamOutcome per entry, in entry order. A stream that
    cannot be opened or decoded, or that has a frame failing to score,
    carries the first error instead of a series.'''
    read_errors = {}
    pool = FrameScoringPool(model, jobs)
    pool.start()
    try:
        for stream, entry in enumerate(entries):
            logger.info('reading %s', entry.describe())
            try:
                with open(entry.path, 'rb') as fh:
                    for index, plane in enumerate(entry.open_stream(fh)):
                        pool.submit(stream, index, plane)
            except (MeasurementError, OSError) as e:
                logger.error('stream %s (%s) failed: %s', entry.describe(),
                             entry.path, e)
                read_errors[stream] = e
    finally:
        collected = pool.finish()

    outcomes = []
    for stream, entry in enumerate(entries):
        outcome = _outcome(entry, collected.get(stream, []),
                           read_errors.get(stream))
        if outcome.error is not None and stream not in read_errors:
            logger.error('stream %s (%s) failed: %s', entry.describe(),
                         entry.path, outcome.error)
        outcomes.append(outcome)
    return outcomes

# vim: set ts=4 sw=4 et:
