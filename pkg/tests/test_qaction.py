import pytest

from qsymplectic.QSPException import QSPGuardError
from qsymplectic.combin import Weight
from qsymplectic.scalars import LaurentPoly, q_power
from qsymplectic.qaction import Generator, E, F, K, Kinv, all_generators, generator_matrix, tensor_generator, \
    divided_power, weight_table, weights_occurring, weight_projector, coroot_values, QuantumBracket, \
    lusztig_projector, cartan_matrix, projector_report, serre_check, bmw_commutation_check


def test_generator_guards():
    with pytest.raises(QSPGuardError):
        Generator('X', 1)
    with pytest.raises(QSPGuardError):
        E(3).check(2)
    assert len(all_generators(2)) == 8
    assert str(Kinv(2)) == 'Kinv2'


def test_cartan_matrix():
    assert cartan_matrix(1) == [[2]]
    assert cartan_matrix(2) == [[2, -2], [-1, 2]]
    assert cartan_matrix(3) == [[2, -1, 0], [-1, 2, -2], [0, -1, 2]]


def test_generator_matrices_on_v():
    assert generator_matrix(E(1), 2)[0, 1] == 1
    assert generator_matrix(E(1), 2)[2, 3] == -1
    assert generator_matrix(F(2), 2)[2, 1] == 1
    k = generator_matrix(K(1), 1)
    assert k[0, 0] == q_power(1)
    assert k[1, 1] == q_power(-1)


def test_coroot_values_read_off_weights():
    assert coroot_values(1, 1, 1) == [1, -1]
    assert coroot_values(1, 2, 1) == [2, 0, 0, -2]


def test_weight_table():
    table = weight_table(1, 2)
    assert list(table) == [Weight([-2]), Weight([0]), Weight([2])]
    assert table[Weight([0])] == [1, 2]
    assert weights_occurring(2, 1) == sorted(weights_occurring(2, 1))
    assert len(weights_occurring(2, 1)) == 4


def test_weight_projector_is_idempotent():
    p = weight_projector(Weight([0]), 2)
    assert p.matmul(p) == p
    assert p.nnz == 2


def test_tensor_k_is_group_like():
    k, kinv = tensor_generator(K(1), 1, 2), tensor_generator(Kinv(1), 1, 2)
    assert k.matmul(kinv).first_nonzero()[2] == 1
    assert k[0, 0] == q_power(2)


def test_divided_square_of_f_on_long_node():
    f2 = divided_power(1, 2, 1, 2, 'F')
    assert f2[3, 0] == 1
    assert f2.nnz == 1


def test_quantum_bracket_values():
    bracket = QuantumBracket(1, 0, 1)
    assert bracket.scalar(2) == LaurentPoly({1: 1, -1: 1})
    assert bracket.scalar(0) == 0
    assert QuantumBracket(1, 0, 1, long=True).scalar(2) == LaurentPoly({2: 1, -2: 1})
    assert QuantumBracket(1, 3, 0).scalar(5) == 1
    with pytest.raises(QSPGuardError):
        QuantumBracket(1, 0, -1)


@pytest.mark.parametrize('weight', [Weight([2]), Weight([0]), Weight([-2])])
def test_lusztig_projector_matches_weight_projector(weight):
    assert lusztig_projector(weight, 1, 2) == weight_projector(weight, 2, 1)


@pytest.mark.parametrize('m,n', [(1, 1), (1, 2), (2, 2)])
def test_projector_report(m, n):
    report = projector_report(m, n)
    assert report.passed, report.to_text()
    assert report.check('completeness').status == 'pass'


def test_serre_relations():
    report = serre_check(2, 2)
    assert report.passed, report.to_text()
    assert report.check('serre_E12').status == 'pass'
    assert report.check('grading_F2').status == 'pass'


@pytest.mark.parametrize('m,n', [(2, 3), (3, 2)])
def test_serre_relations_larger(m, n):
    assert serre_check(m, n).passed


@pytest.mark.parametrize('m,n,checks', [(1, 2, 8), (2, 2, 16), (2, 3, 32)])
def test_quantum_group_commutes_with_bmw_generators(m, n, checks):
    report = bmw_commutation_check(m, n)
    assert report.passed, report.to_text()
    assert len(report.checks) == checks
