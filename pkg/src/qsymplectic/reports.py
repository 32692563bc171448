from contextlib import contextmanager
import logging
import time

import pandas as pd

from .constants import STATUS_PASS, STATUS_FAIL, STATUS_SKIPPED
from .utils import dump_json

logger = logging.getLogger(__name__)


def _jsonable(value):
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Reduce report values to JSON types; anything exotic is rendered with str().
    '''
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


class CheckRecord:
    '''
    One named check with its expected and observed values

    Parameters
    ----------
    name: str
        Check name
    status: str
        'pass', 'fail' or 'skipped'
    expected, actual: any
        Values compared; rendered to JSON types on output
    witness: any (default None)
        Location of the first failure (matrix entry, label, index pair)
    '''

    __slots__ = ('name', 'status', 'expected', 'actual', 'witness')

    def __init__(self, name, status, expected, actual, witness=None):
        self.name = name
        self.status = status
        self.expected = expected
        self.actual = actual
        self.witness = witness

    def to_dict(self):
        record = {
            'name': self.name,
            'status': self.status,
            'expected': _jsonable(self.expected),
            'actual': _jsonable(self.actual),
        }
        if self.witness is not None:
            record['witness'] = _jsonable(self.witness)
        return record

    def __repr__(self):
        return f'CheckRecord({self.name!r}, {self.status})'


class VerificationReport:
    '''
    Structured pass/fail record of one verification run

    Parameters
    ----------
    name: str
        The check family, e.g. 'relation_suite'
    parameters: dict or None (default None)
        Instance parameters such as m and n, kept in insertion order
    context: ScalarContext or None (default None)
        Scalar mode used; a prime-field context also records (p, c)

    >>> report = VerificationReport('demo', {'m': 1})
    >>> report.add('dim', 10, 10).status
    'pass'
    '''

    def __init__(self, name, parameters=None, context=None):
        self.name = name
        self.parameters = dict(parameters or {})
        self.checks = []
        self.extra = {}
        self.runtime_ms = None
        self.set_context(context)

    def set_context(self, context):
        if context is None:
            self.mode, self.evaluation = None, None
        else:
            self.mode = context.mode
            self.evaluation = (context.prime, context.evaluation) if context.prime is not None else None

    def add(self, name, expected, actual, witness=None, status=None):
        '''
        Record a check; status defaults to pass exactly when expected == actual
        '''
        if status is None:
            status = STATUS_PASS if expected == actual else STATUS_FAIL
        record = CheckRecord(name, status, expected, actual, witness)
        self.checks.append(record)
        if status == STATUS_FAIL:
            logger.info('%s: check %s failed (expected %s, got %s, witness %s)',
                        self.name, name, expected, actual, witness)
        return record

    def add_flag(self, name, ok, witness=None, expected=True):
        '''
        Record a boolean check
        '''
        return self.add(name, expected, bool(ok), witness=None if ok else witness)

    def skip(self, name, reason):
        return self.add(name, None, None, witness=reason, status=STATUS_SKIPPED)

    def merge(self, other, prefix=None):
        '''
        Append every check of another report, optionally prefixing the names
        '''
        for record in other.checks:
            name = f'{prefix}.{record.name}' if prefix else record.name
            self.checks.append(CheckRecord(name, record.status, record.expected, record.actual, record.witness))
        return self

    @property
    def status(self):
        statuses = [c.status for c in self.checks]
        if STATUS_FAIL in statuses:
            return STATUS_FAIL
        if statuses and all(s == STATUS_SKIPPED for s in statuses):
            return STATUS_SKIPPED
        return STATUS_PASS

    @property
    def passed(self):
        return self.status != STATUS_FAIL

    def failures(self):
        return [c for c in self.checks if c.status == STATUS_FAIL]

    def check(self, name):
        '''
        The first record with this name
        '''
        return next(c for c in self.checks if c.name == name)

    @contextmanager
    def timer(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.runtime_ms = int(round((time.perf_counter() - start) * 1000))

    def to_dict(self, include_runtime=False):
        '''
        Parameters, mode and checks with a stable key order

        Parameters
        ----------
        include_runtime: bool (default False)
            Runtime is left out by default so identical runs serialize identically
        '''
        payload = {'name': self.name}
        payload.update(_jsonable(self.parameters))
        payload['mode'] = self.mode
        if self.evaluation is not None:
            payload['prime'], payload['evaluation'] = self.evaluation
        payload['status'] = self.status
        payload.update(_jsonable(self.extra))
        payload['checks'] = [c.to_dict() for c in self.checks]
        if include_runtime:
            payload['runtime_ms'] = self.runtime_ms
        return payload

    def to_json(self, include_runtime=False):
        return dump_json(self.to_dict(include_runtime))

    def to_frame(self):
        '''
        One row per check
        '''
        rows = [c.to_dict() for c in self.checks]
        frame = pd.DataFrame(rows, columns=['name', 'status', 'expected', 'actual', 'witness'])
        return frame.fillna('')

    def to_text(self):
        params = ' '.join(f'{k}={v}' for k, v in self.parameters.items())
        mode = f' mode={self.mode}' if self.mode else ''
        header = f'{self.name} {params}{mode}: {self.status.upper()}'
        if not self.checks:
            return header
        return header + '\n' + self.to_frame().to_string(index=False)

    def __repr__(self):
        return f'VerificationReport({self.name!r}, {self.parameters}, {self.status})'


def envelope(reports, suite, seed, include_runtime=False):
    '''
    The top-level JSON document written by the command line

    Parameters
    ----------
    reports: list of VerificationReport
        Ordered by name on output; ties keep their given order
    suite: str
        Subcommand name
    seed: int
        Seed of the prime-field sampling
    '''
    from . import __version__

    ordered = sorted(reports, key=lambda r: r.name)
    status = STATUS_FAIL if any(r.status == STATUS_FAIL for r in reports) else STATUS_PASS
    return {
        'suite': suite,
        'version': __version__,
        'seed': seed,
        'status': status,
        'reports': [r.to_dict(include_runtime) for r in ordered],
    }


def render_text(reports):
    return '\n\n'.join(r.to_text() for r in sorted(reports, key=lambda r: r.name))
