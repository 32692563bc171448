import pytest

from qsymplectic.QSPException import QSPGuardError
from qsymplectic.utils import as_int, resolve_threads, ordered_map


def test_resolve_threads_prefers_explicit_value(monkeypatch):
    monkeypatch.setenv('QSYMPLECTIC_THREADS', '3')
    assert resolve_threads(2) == 2
    assert resolve_threads() == 3


@pytest.mark.parametrize('value', ['many', '2.5', ''])
def test_resolve_threads_rejects_text(monkeypatch, value):
    monkeypatch.setenv('QSYMPLECTIC_THREADS', value)
    with pytest.raises(QSPGuardError):
        resolve_threads()


def test_resolve_threads_rejects_zero():
    with pytest.raises(QSPGuardError):
        resolve_threads(0)


def test_as_int():
    assert as_int('12', 'seed') == 12
    with pytest.raises(QSPGuardError, match='seed'):
        as_int(None, 'seed')


def test_ordered_map_keeps_input_order():
    items = list(range(50))
    assert ordered_map(lambda x: x * x, items, threads=4) == [x * x for x in items]
