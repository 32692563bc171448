import json

import pytest

from qsymplectic import QSPVerifier
from qsymplectic.QSPException import BadEvaluationError, IntegralityError
from qsymplectic.cli import build_parser, main


@pytest.fixture(autouse=True)
def home(tmp_path, monkeypatch):
    monkeypatch.setenv('HOME', str(tmp_path))
    for name in ('REPORT_DIR', 'QSYMPLECTIC_SEED', 'QSYMPLECTIC_THREADS'):
        monkeypatch.delenv(name, raising=False)
    return tmp_path


def test_parser_requires_a_suite():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    with pytest.raises(SystemExit):
        build_parser().parse_args(['truncate', '--m', '1', '--n', '2'])


def test_parser_flags():
    args = build_parser().parse_args(['duality', '--m', '1', '--n', '2', '--mode', 'modp', '--seed', '3',
                                      '--format', 'text'])
    assert (args.command, args.m, args.n, args.mode, args.seed, args.output_format) == \
        ('duality', 1, 2, 'modp', 3, 'text')


def test_counts_prints_json(capsys):
    assert main(['counts', '--n-max', '4']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['suite'] == 'counts'
    assert payload['status'] == 'pass'
    assert payload['reports'][0]['checks'][-1]['actual'] == 105


def test_relations_text_output(capsys):
    assert main(['relations', '--m', '1', '--n', '2', '--format', 'text']) == 0
    out = capsys.readouterr().out
    assert 'relation_suite m=1 n=2 mode=laurent: PASS' in out


def test_guard_violation_exits_with_two(capsys):
    assert main(['relations', '--m', '0', '--n', '2']) == 2
    assert 'error:' in capsys.readouterr().err


def test_failing_check_exits_with_one(capsys):
    assert main(['bimodule', '--m', '1', '--n', '3']) == 1
    assert json.loads(capsys.readouterr().out)['status'] == 'fail'


def test_out_file(home):
    target = home / 'nested' / 'truncate.json'
    assert main(['truncate', '--m', '1', '--m0', '2', '--n', '2', '--out', str(target)]) == 0
    payload = json.loads(target.read_text())
    assert [r['name'] for r in payload['reports']] == ['truncation', 'truncation_commutant']


def test_report_dir(home, monkeypatch, capsys):
    monkeypatch.setenv('REPORT_DIR', str(home / 'reports'))
    assert main(['bimodule', '--m', '2', '--n', '2']) == 0
    assert capsys.readouterr().out == ''
    assert (home / 'reports' / 'bimodule-m2-n2.json').exists()


def test_degenerate_evaluations_exit_with_three(monkeypatch, capsys):
    def degenerate(self, *args, **kwargs):
        raise BadEvaluationError('all evaluations degenerated', tried=[(1073741827, 2)])

    monkeypatch.setattr(QSPVerifier, 'counts', degenerate)
    assert main(['counts']) == 3
    assert '1073741827' in capsys.readouterr().err


def test_integrality_failure_exits_with_one(monkeypatch, capsys):
    def not_integral(self, *args, **kwargs):
        raise IntegralityError('remainder', witness={'a': 2})

    monkeypatch.setattr(QSPVerifier, 'projectors', not_integral)
    assert main(['projectors', '--m', '1', '--n', '1']) == 1
    assert 'witness' in capsys.readouterr().err


def test_output_does_not_depend_on_thread_count(capsys):
    outputs = []
    for threads in ('1', '4'):
        assert main(['duality', '--m', '1', '--n', '3', '--mode', 'exact', '--threads', threads]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0])['reports'][0]['name'] == 'duality'


def test_cached_settings_do_not_reach_the_command_line(capsys):
    QSPVerifier({'mode': 'modp', 'seed': 9}, cache_settings=True)
    assert main(['counts', '--n-max', '3']) == 0
    assert json.loads(capsys.readouterr().out)['seed'] == 0


def test_non_integer_thread_environment_exits_with_two(monkeypatch, capsys):
    monkeypatch.setenv('QSYMPLECTIC_THREADS', 'many')
    assert main(['counts', '--n-max', '3']) == 2
    assert 'QSYMPLECTIC_THREADS' in capsys.readouterr().err
