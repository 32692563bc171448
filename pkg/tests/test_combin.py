from math import comb

import pytest

from qsymplectic.QSPException import QSPGuardError
from qsymplectic.combin import INCOMPARABLE, Partition, MultiIndex, Permutation, Weight, prime_of, \
    all_multiindices, symmetric_group, column_group, partitions_bounded, lambda_n, all_pairings, \
    coset_reps_D_nu, coset_reps_D_f, pairing_subsets, d_J_word, d_J, coset_factorization, coset_word, d_0, \
    d_0_word, rank_identity_terms, mys_tableaux, column_strict_tableaux, i_lambda, hat_i_lambda, c_vector, \
    symplectic_length, wt, bwt, is_pair_free, std_count, weyl_dim_sp, order_prec
from qsymplectic.utils import double_factorial


def test_partition_basics():
    lam = Partition.parse('[3,1,1]')
    assert lam.size == 5
    assert lam.transpose() == Partition([3, 1, 1])
    assert Partition([2, 1]).cells() == [(1, 1), (2, 1), (1, 2)]
    assert str(Partition([2, 2])) == '[2,2]'
    assert Partition.parse('[]') == Partition()
    with pytest.raises(QSPGuardError):
        Partition([1, 2])


def test_multiindex_text():
    index = MultiIndex.parse("1 2 1'", 2)
    assert index.entries == (1, 2, 4)
    assert str(index) == "1 2 1'"
    assert index.reversed().entries == (4, 2, 1)
    assert prime_of(1, 2) == 4
    assert len(all_multiindices(2, 2)) == 16
    with pytest.raises(QSPGuardError):
        MultiIndex((5,), 2)


def test_place_permutation():
    index = MultiIndex((1, 2, 3), 2)
    w = Permutation((2, 3, 1))
    assert index.place_permute(w).entries == (3, 1, 2)
    assert index.place_permute(Permutation.identity(3)) == index


def test_permutation_words():
    assert Permutation.from_word([2, 1], 3).images == (2, 3, 1)
    assert Permutation.longest(3).reduced_word() == [1, 2, 1]
    for w in symmetric_group(4):
        word = w.reduced_word()
        assert len(word) == w.length()
        assert Permutation.from_word(word, 4) == w
        assert (w * w.inverse()).is_identity()


def test_right_action_products():
    s1, s2 = Permutation.simple(1, 3), Permutation.simple(2, 3)
    assert s1 * s2 == Permutation.from_word([1, 2], 3)
    assert (s1 * s2)(1) == s2(s1(1))


def test_column_group():
    assert len(symmetric_group(3)) == 6
    assert len(column_group(Partition([2, 1]))) == 2
    assert len(column_group(Partition([1, 1, 1]))) == 6
    assert column_group(Partition([3])) == [Permutation.identity(3)]


def test_weights():
    assert Weight.simple_root(1, 2).coords == (1, -1)
    assert Weight.simple_root(2, 2).coords == (0, 2)
    assert Weight((2, 1)).coroot_pairing(1) == 1
    assert Weight((2, 1)).coroot_pairing(2) == 1
    assert str(Weight((2, 1))) == '(2,1)'


def test_partitions_and_lambda_n():
    assert [str(p) for p in partitions_bounded(3, 2)] == ['[3]', '[2,1]']
    assert [str(p) for p in partitions_bounded(4, 2)] == ['[4]', '[3,1]', '[2,2]']
    assert partitions_bounded(0, 3) == [Partition()]
    assert [(str(lam), l) for lam, l in lambda_n(1, 2)] == [('[2]', 0), ('[]', 1)]


def test_pairings():
    assert len(list(all_pairings(range(4)))) == 3
    assert len(list(all_pairings(range(6)))) == 15


@pytest.mark.parametrize('n', range(1, 7))
def test_coset_counts(n):
    for f in range(n // 2 + 1):
        assert len(coset_reps_D_nu(f, n)) == comb(n, 2 * f) * double_factorial(2 * f - 1)
        assert len(pairing_subsets(f, n)) == comb(n, 2 * f)


@pytest.mark.parametrize('n', range(1, 9))
def test_rank_identity(n):
    total = sum(cosets ** 2 * perms for _, cosets, perms in rank_identity_terms(n))
    assert total == double_factorial(2 * n - 1)


def test_double_factorials():
    assert [double_factorial(2 * n - 1) for n in range(1, 9)] == [1, 3, 15, 105, 945, 10395, 135135, 2027025]


def test_d_J():
    assert d_J((2, 3), 3).images == (2, 3, 1)
    assert d_J((), 3).is_identity()
    with pytest.raises(QSPGuardError):
        d_J_word((3, 2), 3)
    with pytest.raises(QSPGuardError):
        d_J_word((1, 2, 3), 3)


@pytest.mark.parametrize('n', [3, 4, 5])
def test_coset_factorization(n):
    for f in range(1, n // 2 + 1):
        for d in coset_reps_D_nu(f, n):
            d1, J = coset_factorization(d, f)
            assert d1 * d_J(J, n) == d
            word = coset_word(d, f)
            assert Permutation.from_word(word, n) == d
            assert len(word) == d.length()


def test_D_f():
    assert len(coset_reps_D_f(2)) == 3
    assert all(d.n == 4 for d in coset_reps_D_f(2))


@pytest.mark.parametrize('f', [1, 2, 3, 4])
def test_d_0(f):
    assert Permutation.from_word(d_0_word(f), 2 * f) == d_0(f)
    assert len(d_0_word(f)) == d_0(f).length()


def test_d_0_images():
    assert d_0(2).images == (1, 4, 2, 3)
    assert d_0(3).images == (1, 6, 2, 5, 3, 4)


def test_tableaux():
    assert len(mys_tableaux(Partition([1, 1]), 2)) == 5
    assert len(mys_tableaux(Partition([2]), 1)) == 3
    assert mys_tableaux(Partition(), 2) == [MultiIndex((), 2)]
    assert column_strict_tableaux(Partition([1, 1]), 1) == [MultiIndex((1, 2), 1)]
    assert len(column_strict_tableaux(Partition([2]), 1)) == 4
    assert i_lambda(Partition([2, 1]), 2).entries == (1, 2, 1)
    assert hat_i_lambda(Partition([2, 1]), 2).entries == (2, 1, 1)


def test_mys_row_limits():
    # at m = 2 the second row only holds 1 and 1'
    for t in mys_tableaux(Partition([1, 1]), 2):
        assert t.entries[1] in (1, 4)


def test_symplectic_statistics():
    assert c_vector(2, 2).entries == (4, 3, 2, 1)
    assert symplectic_length(c_vector(2, 2)) == 2
    assert symplectic_length(c_vector(3, 1)) == 1
    assert symplectic_length(MultiIndex((1, 4, 4, 1), 2)) == 2
    assert is_pair_free(MultiIndex((1, 2, 3), 3))
    assert not is_pair_free(MultiIndex((1, 4), 2))
    assert wt(MultiIndex((1, 4, 2), 2)).coords == (0, 1)
    assert bwt(MultiIndex((1, 4, 2), 2)) == (1, 1, 0, 1)


def test_counting_formulas():
    assert std_count(Partition([2, 1])) == 2
    assert std_count(Partition([3, 2])) == 5
    assert weyl_dim_sp(Partition([1]), 2) == 4
    assert weyl_dim_sp(Partition([1, 1]), 2) == 5
    assert weyl_dim_sp(Partition([2]), 2) == 10
    assert weyl_dim_sp(Partition(), 3) == 1
    assert weyl_dim_sp(Partition([2]), 1) == 3


def test_order_prec():
    assert order_prec(Partition([2]), Partition([1, 1])) is True
    assert order_prec(Partition([1, 1]), Partition([2])) is False
    assert order_prec(Partition([2]), Partition()) is True
    assert order_prec(Partition(), Partition([2])) is False
    assert order_prec(Partition([1]), Partition()) == INCOMPARABLE
