from math import comb

import pytest

from qsymplectic.QSPException import QSPGuardError
from qsymplectic.combin import MultiIndex, Permutation
from qsymplectic.scalars import SparseMatrix, q_power
from qsymplectic.tensorspace import TensorSpace, rho, eps, basis_index, basis_multiindex, beta, gamma, \
    beta_prime, gamma_prime, hecke_beta_hat, embed_at, flip_reverse, hecke_word_action, dump_matrix, \
    relation_bg_check, operator_identity_check, hecke_quadratic_check, pairfree_compatibility_check


def test_rho_and_eps():
    assert rho(2) == [2, 1, -1, -2]
    assert eps(2) == [1, 1, -1, -1]


def test_basis_index_is_mixed_radix():
    index = MultiIndex((2, 1, 4), 2)
    assert basis_index(index) == 1 * 16 + 0 * 4 + 3
    assert basis_multiindex(basis_index(index), 2, 3) == index
    with pytest.raises(QSPGuardError):
        basis_multiindex(64, 2, 3)


def test_beta_prime_entries():
    bp = beta_prime(1)
    assert bp[0, 0] == q_power(1)
    assert bp.shape == (4, 4)
    assert bp.is_symmetric()


@pytest.mark.parametrize('m', [1, 2, 3])
def test_skein_identity(m):
    assert relation_bg_check(m).passed


def test_skein_identity_fails_for_wrong_gamma():
    assert not relation_bg_check(1, gamma_prime_op=SparseMatrix.zeros((4, 4), beta_prime(1).context)).passed


@pytest.mark.parametrize('m', [1, 2])
def test_operator_identities(m):
    report = operator_identity_check(m)
    assert report.passed, report.to_text()
    assert report.check('gamma_prime_rank').actual == 1


@pytest.mark.parametrize('m', [1, 2])
def test_hecke_quadratic(m):
    assert hecke_quadratic_check(m).passed


@pytest.mark.parametrize('m', [1, 2])
def test_flip_conjugates_primed_operators(m):
    flip = flip_reverse(m, 2)
    assert flip.matmul(flip) == SparseMatrix.identity((2 * m) ** 2, flip.context)
    assert flip.matmul(beta_prime(m)).matmul(flip) == beta(m).scale(q_power(-1))
    assert flip.matmul(gamma_prime(m)).matmul(flip) == gamma(m)


def test_embedding():
    space = TensorSpace(1, 3)
    ident = SparseMatrix.identity(2, space.context)
    assert space.beta_prime(1) == beta_prime(1).kron(ident)
    assert space.gamma_prime(2) == ident.kron(gamma_prime(1))
    with pytest.raises(QSPGuardError):
        embed_at(beta_prime(1), 3, 3)


def test_embedding_reads_the_rank_off_the_operator():
    assert embed_at(beta_prime(2), 2, 3) == TensorSpace(2, 3).beta_prime(2)
    with pytest.raises(QSPGuardError):
        embed_at(SparseMatrix.identity(9, TensorSpace(1, 2).context), 1, 2)


@pytest.mark.parametrize('m', [1, 2, 3])
def test_beta_prime_sparsity(m):
    op = beta_prime(m)
    d = 2 * m
    assert op.nnz <= 2 * d + d * (d - 2) + 2 * comb(d, 2)
    assert all(value for row in op.rows.values() for value in row.values())


def test_beta_braid_relation():
    space = TensorSpace(1, 3)
    b1, b2 = space.beta(1), space.beta(2)
    assert b1.matmul(b2).matmul(b1) == b2.matmul(b1).matmul(b2)


def test_permutation_action_follows_words():
    space = TensorSpace(1, 3)
    w = Permutation.longest(3)
    expected = space.beta_prime(1).matmul(space.beta_prime(2)).matmul(space.beta_prime(1))
    assert space.permutation_action(w) == expected
    assert space.permutation_action(w, hecke=True) == hecke_word_action([1, 2, 1], 1, 3)


def test_hecke_diagonal():
    assert hecke_beta_hat(2)[0, 0] == q_power(1)


def test_dump_matrix_is_sorted():
    lines = dump_matrix(gamma_prime(1))
    assert lines == sorted(lines, key=lambda line: tuple(int(x) for x in line.split()[:2]))
    assert len(lines) == gamma_prime(1).nnz


@pytest.mark.parametrize('m', [1, 2, 3])
def test_pairfree_compatibility(m):
    report = pairfree_compatibility_check(m, m)
    assert report.passed, report.to_text()


def test_pairfree_compatibility_needs_m_ge_n():
    with pytest.raises(QSPGuardError):
        pairfree_compatibility_check(1, 2)
