# Derived from Django snippets: http://djangosnippets.org/snippets/2242/
from collections import OrderedDict
from datetime import datetime, timedelta, timezone
from hashlib import md5


class LimitedSizeDict(OrderedDict):
    def __init__(self, *args, **kwargs):
        self.size_limit = kwargs.pop('size', None)
        if self.size_limit == 0:
            self.size_limit = None
        if self.size_limit and self.size_limit < 0:
            raise ValueError('Invalid size specified')
        super(LimitedSizeDict, self).__init__(*args, **kwargs)
        self.check_item_limits()

    def __setitem__(self, key, value):
        # delete and add to ensure it ends up at the end of the linked list
        if key in self:
            super(LimitedSizeDict, self).__delitem__(key)
        super(LimitedSizeDict, self).__setitem__(key, value)
        self.check_item_limits()

    def check_item_limits(self):
        if self.size_limit is None:
            return
        while len(self) > self.size_limit:
            self.popitem(last=False)


class DuplicateMessageFilter(object):
    '''Drops log records repeating the same message template from the same
    logger within `rate` seconds. A batch over many streams tends to produce
    the same warning per frame (e.g. degenerate black frames); the first one
    gets through, the rest are counted and dropped.'''

    def __init__(self, name='', rate=10, max_keys=100, clock=None):
        self.seen = LimitedSizeDict(size=max_keys)
        self.rate = rate
        self.clock = clock or (lambda: datetime.now(timezone.utc))
        self.suppressed = 0

    def record_key(self, record):
        raw = '%s:%s:%s' % (record.name, record.levelno, record.msg)
        return md5(raw.encode('utf-8')).hexdigest()

    def filter(self, record):
        if self.rate == 0:
            # rate == 0 means totally unfiltered
            return True

        key = self.record_key(record)
        now = self.clock()
        min_date = now - timedelta(seconds=self.rate)
        duplicate = (key in self.seen and self.seen[key] >= min_date)
        if duplicate:
            self.suppressed += 1
        else:
            self.seen[key] = now
        return not duplicate

# vim: set ts=4 sw=4 et:
