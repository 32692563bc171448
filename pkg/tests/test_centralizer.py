import pytest

from qsymplectic.QSPException import QSPGuardError, ModeMismatchError
from qsymplectic.scalars import SparseMatrix
from qsymplectic.tensorspace import TensorSpace
from qsymplectic.centralizer import algebra_closure, commutant, psi_image, phi_image, oehms_count, \
    duality_report, bimodule_dimension_check, hecke_image_check


@pytest.mark.parametrize('m,n,count', [(1, 1, 4), (1, 2, 10), (1, 3, 20), (2, 2, 126)])
def test_oehms_count(m, n, count):
    assert oehms_count(m, n) == count


def test_closure_of_nothing_is_the_scalars(ratfunc):
    span = algebra_closure([], ratfunc, 4)
    assert span.dim == 1
    assert span.contains(SparseMatrix.identity(4, ratfunc))


def test_closure_is_independent_of_thread_count(ratfunc):
    generators = TensorSpace(1, 3, ratfunc).bmw_generators()
    serial = algebra_closure(generators, threads=1)
    pooled = algebra_closure(generators, threads=4)
    assert serial.dim == pooled.dim == 5
    assert serial.basis == pooled.basis


def test_commutant_of_identity_is_everything(ratfunc):
    assert commutant([SparseMatrix.identity(2, ratfunc)]).dim == 4


def test_commutant_needs_a_field(laurent):
    with pytest.raises(ModeMismatchError):
        commutant([SparseMatrix.identity(2, laurent)])
    with pytest.raises(QSPGuardError):
        commutant([])


def test_bmw_image_spans_its_closure(ratfunc):
    space = TensorSpace(1, 2, ratfunc)
    span = phi_image(1, 2, ratfunc)
    assert span.dim == 2
    assert span.contains(space.beta_prime(1).matmul(space.gamma_prime(1)))


def test_quantum_group_image_on_v(ratfunc):
    assert psi_image(1, 1, ratfunc).dim == 4


@pytest.mark.parametrize('m,n,psi,phi', [(1, 2, 10, 2), (1, 3, 20, 5)])
def test_duality(m, n, psi, phi):
    report = duality_report(m, n, mode='exact')
    assert report.passed, report.to_text()
    assert report.extra == {'psi_dim': psi, 'phi_dim': phi}
    assert report.check('phi_dimension').status == 'skipped'


def test_duality_in_prime_field():
    report = duality_report(1, 2, mode='modp', seed=3)
    assert report.passed
    assert report.mode == 'modp'
    assert report.evaluation is not None


@pytest.mark.slow
def test_duality_rank_two():
    report = duality_report(2, 2, mode='exact')
    assert report.passed, report.to_text()
    assert report.extra == {'psi_dim': 126, 'phi_dim': 3}
    assert report.check('phi_dimension').status == 'pass'
    assert report.check('double_commutant').status == 'pass'
    assert report.check('double_commutant').actual == 3
    assert report.runtime_ms < 120000


def test_double_commutant_on_small_cases():
    report = duality_report(1, 2, mode='exact')
    assert report.check('double_commutant').status == 'pass'
    assert report.check('double_commutant').actual == 2


@pytest.mark.parametrize('m,n', [(1, 1), (1, 2), (2, 2), (3, 3), (4, 4)])
def test_bimodule_dimension(m, n):
    report = bimodule_dimension_check(m, n)
    assert report.passed
    assert report.check('dimension').actual == (2 * m) ** n
    assert report.extra['hypothesis_m_ge_n'] == (m >= n)


def test_bimodule_dimension_below_n_is_flagged():
    report = bimodule_dimension_check(1, 3)
    assert report.extra['hypothesis_m_ge_n'] is False
    assert not report.passed


def test_hecke_image():
    report = hecke_image_check(1, 2, mode='exact')
    assert report.passed
    assert report.check('dimension').actual == 2
    assert hecke_image_check(1, 3, mode='exact').check('dimension').status == 'skipped'
