import pytest

from qsymplectic.QSPException import QSPGuardError
from qsymplectic.bmw import enyang_indices
from qsymplectic.scalars import SparseMatrix, q_power
from qsymplectic.tensorspace import TensorSpace
from qsymplectic.truncation import iota, pi, iota_scaled, pi_scaled, theta_scale, theta0, theta1_on_basis, \
    diagram_check, commutant_invariance_check


def test_iota_places_the_small_space_in_the_middle():
    inject = iota(1, 2)
    assert inject.shape == (4, 2)
    assert inject[1, 0] == 1 and inject[2, 1] == 1
    assert inject.nnz == 2


def test_pi_is_a_left_inverse(laurent):
    assert pi(1, 3).matmul(iota(1, 3)) == SparseMatrix.identity(2, laurent)


def test_scaled_maps_compose_to_theta_scale(laurent):
    composite = pi_scaled(1, 2).matmul(iota_scaled(1, 2))
    assert composite == SparseMatrix.identity(2, laurent).scale(q_power(3))
    assert theta_scale(1, 2, 2) == q_power(6)


def test_rank_guards():
    with pytest.raises(QSPGuardError):
        iota(2, 2)
    with pytest.raises(QSPGuardError):
        iota(0, 1)
    with pytest.raises(QSPGuardError):
        theta0(TensorSpace(1, 2).identity(), 1, 2, 2)


def test_theta0_of_identity():
    small = TensorSpace(1, 2)
    assert theta0(TensorSpace(2, 2).identity(), 1, 2, 2) == small.identity().scale(theta_scale(1, 2, 2))


def test_theta1_keeps_the_label():
    label = enyang_indices(2)[-1]
    scale, same = theta1_on_basis(label, 1, 3, 2)
    assert same == label
    assert scale == q_power(8)
    with pytest.raises(QSPGuardError):
        theta1_on_basis(label, 1, 3, 3)


@pytest.mark.parametrize('m,m0,n', [(1, 2, 2), (1, 3, 2)])
def test_diagram_commutes(m, m0, n):
    report = diagram_check(m, m0, n)
    assert report.passed, report.to_text()
    assert report.extra['labels'] == 3
    assert report.extra['hypothesis_m0_ge_n']


@pytest.mark.slow
def test_diagram_commutes_on_three_strands():
    report = diagram_check(2, 3, 3, mode='modp', seed=5)
    assert report.passed, report.to_text()
    assert report.extra['labels'] == 15


def test_commutant_is_carried_to_commutant():
    report = commutant_invariance_check(1, 2, 2)
    assert report.passed, report.to_text()
    assert report.extra['commutant_dimension'] == 3
