import json

import pytest

from qsymplectic import __version__
from qsymplectic.reports import VerificationReport, envelope, render_text


@pytest.fixture
def report(modp):
    report = VerificationReport('demo', {'m': 1, 'n': 2}, modp)
    report.add('dimension', 10, 10)
    report.add_flag('commutes', True, witness={'row': 0})
    report.skip('faithful', 'needs m >= n')
    return report


def test_statuses(report):
    assert report.status == 'pass'
    assert report.check('commutes').witness is None
    report.add_flag('braid', False, witness={'row': 3, 'col': 1})
    assert report.status == 'fail'
    assert not report.passed
    assert [c.name for c in report.failures()] == ['braid']


def test_all_skipped_is_skipped():
    report = VerificationReport('only_skips')
    report.skip('a', 'not applicable')
    assert report.status == 'skipped'
    assert report.passed
    assert VerificationReport('empty').status == 'pass'


def test_merge_prefixes_names(report):
    other = VerificationReport('other')
    other.add('rank', 3, 2)
    report.merge(other, 'sub')
    assert report.check('sub.rank').status == 'fail'
    assert report.status == 'fail'


def test_dict_layout(report, modp):
    report.extra['rank'] = 10
    payload = report.to_dict()
    assert list(payload)[:3] == ['name', 'm', 'n']
    assert payload['mode'] == 'modp'
    assert (payload['prime'], payload['evaluation']) == (modp.prime, modp.evaluation)
    assert payload['rank'] == 10
    assert 'runtime_ms' not in payload
    assert payload['checks'][2] == {'name': 'faithful', 'status': 'skipped', 'expected': None, 'actual': None,
                                    'witness': 'needs m >= n'}


def test_runtime_is_opt_in(report):
    with report.timer():
        pass
    assert report.runtime_ms >= 0
    assert 'runtime_ms' in report.to_dict(include_runtime=True)
    assert json.loads(report.to_json()) == report.to_dict()


def test_frame_and_text(report):
    frame = report.to_frame()
    assert list(frame.columns) == ['name', 'status', 'expected', 'actual', 'witness']
    assert len(frame) == 3
    text = report.to_text()
    assert text.startswith('demo m=1 n=2 mode=modp: PASS')


def test_envelope_orders_reports(report):
    late = VerificationReport('zeta')
    late.add('x', 1, 2)
    payload = envelope([late, report], 'relations', 7)
    assert payload['suite'] == 'relations'
    assert payload['version'] == __version__
    assert payload['seed'] == 7
    assert payload['status'] == 'fail'
    assert [r['name'] for r in payload['reports']] == ['demo', 'zeta']
    assert render_text([late, report]).startswith('demo')
