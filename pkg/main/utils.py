import hashlib
import json
import os


def groupby_preserve_order(iterable, keyfunc):
    '''Take an iterable and regroup using keyfunc to determine whether items
    belong to the same group. The order of the iterable is preserved and
    similar keys do not have to be consecutive. This means the earliest
    occurrence of a given key will determine the order of the lists in the
    returned list.'''
    seen_keys = {}
    result = []
    for item in iterable:
        key = keyfunc(item)

        group = seen_keys.get(key, None)
        if group is None:
            group = []
            seen_keys[key] = group
            result.append(group)

        group.append(item)

    return result


def format_number(value, digits=9):
    '''Fixed formatting for every number written to a report: `digits`
    significant digits, no negative zero.'''
    if value is None:
        return ''
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, int):
        return str(value)
    return format(float(value) + 0.0, '.%dg' % digits)


def round_floats(data, digits=9):
    '''Recursively round floats in a JSON-able structure to `digits`
    significant digits.'''
    if isinstance(data, bool) or data is None:
        return data
    if isinstance(data, float):
        return float(format(data + 0.0, '.%dg' % digits))
    if isinstance(data, dict):
        return {k: round_floats(v, digits) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [round_floats(v, digits) for v in data]
    return data


def canonical_json(data):
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def json_digest(data):
    raw = json.dumps(data, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(raw.encode('utf-8')).hexdigest()


def files_digest(paths, chunk_size=1 << 20):
    '''SHA-256 over the contents of the given files, in the given order.'''
    digest = hashlib.sha256()
    for path in paths:
        digest.update(os.path.basename(path).encode('utf-8'))
        with open(path, 'rb') as fh:
            for chunk in iter(lambda: fh.read(chunk_size), b''):
                digest.update(chunk)
    return digest.hexdigest()


def resolve_jobs(option=None, hint=None, default=1, environ=None):
    '''Worker count: explicit option, then manifest hint, then NRVQ_JOBS from
    the environment, then the configured default.'''
    environ = os.environ if environ is None else environ
    for candidate in (option, hint, environ.get('NRVQ_JOBS'), default):
        if candidate in (None, ''):
            continue
        try:
            jobs = int(candidate)
        except (TypeError, ValueError):
            continue
        if jobs >= 1:
            return jobs
    return 1

# vim: set ts=4 sw=4 et:
