import pytest

from qsymplectic.QSPException import QSPGuardError, ModeMismatchError, IntegralityError, BadEvaluationError
from qsymplectic.scalars import LaurentPoly, SparseMatrix, EchelonBasis, q_power, bar, \
    quantum_integer, quantum_factorial, bmw_x, bmw_r, bmw_z, to_ratfunc, ratfunc_to_laurent, rank, nullspace, \
    solve, span_rank, sample_evaluation, with_evaluation_retry, resolve_mode


def L(terms):
    return LaurentPoly(terms)


def test_quantum_integers():
    assert quantum_integer(2) == L({1: 1, -1: 1})
    assert quantum_integer(2, long=True) == L({2: 1, -2: 1})
    assert quantum_integer(3) == L({2: 1, 0: 1, -2: 1})
    assert quantum_integer(-3) == -quantum_integer(3)
    assert quantum_integer(0) == 0


@pytest.mark.parametrize('k', range(-4, 6))
@pytest.mark.parametrize('long', [False, True])
def test_quantum_integer_telescopes(k, long):
    step = 2 if long else 1
    lhs = quantum_integer(k, long) * (q_power(step) - q_power(-step))
    assert lhs == q_power(step * k) - q_power(-step * k)


def test_quantum_factorial():
    assert quantum_factorial(0) == 1
    assert quantum_factorial(2) == L({1: 1, -1: 1})
    assert quantum_factorial(3) == L({3: 1, 1: 2, -1: 2, -3: 1})
    with pytest.raises(QSPGuardError):
        quantum_factorial(-1)


def test_bmw_parameters():
    assert bmw_x(0) == 0
    assert bmw_x(1) == L({2: -1, -2: -1})
    assert bmw_r(2) == L({5: -1})
    assert bmw_z() == L({1: 1, -1: -1})


@pytest.mark.parametrize('m', [1, 2, 3])
def test_defining_ring_relation(m):
    r = bmw_r(m)
    assert (1 - bmw_x(m)) * bmw_z() + r - r ** -1 == 0


def test_bar(random_laurent):
    assert bar(q_power(1)) == q_power(-1)
    assert bar(q_power(1) + 2) == q_power(-1) + 2
    for _ in range(20):
        f, g = random_laurent(), random_laurent()
        assert bar(bar(f)) == f
        assert bar(f * g) == bar(f) * bar(g)
        assert bar(f + g) == bar(f) + bar(g)


def test_negative_power_needs_a_unit():
    assert q_power(3) ** -2 == q_power(-6)
    with pytest.raises(IntegralityError):
        bmw_z() ** -1


def test_exquo():
    assert (q_power(2) - q_power(-2)).exquo(bmw_z()) == L({1: 1, -1: 1})
    with pytest.raises(IntegralityError):
        LaurentPoly.one().exquo(bmw_z())


def test_json_and_text():
    f = L({3: 2, 0: -1, -1: 1})
    assert LaurentPoly.from_json(f.to_json()) == f
    assert str(f) == '2*q^3 - 1 + q^-1'
    assert str(LaurentPoly.zero()) == '0'


def test_ratfunc_agrees_with_laurent(random_laurent):
    for _ in range(20):
        f, g = random_laurent(), random_laurent()
        assert to_ratfunc(f * g) == to_ratfunc(f) * to_ratfunc(g)
        assert to_ratfunc(f + g) == to_ratfunc(f) + to_ratfunc(g)
        assert ratfunc_to_laurent(to_ratfunc(f)) == f


def test_ratfunc_to_laurent_rejects_proper_fractions():
    with pytest.raises(IntegralityError):
        ratfunc_to_laurent(to_ratfunc(LaurentPoly.one()) / to_ratfunc(bmw_z()))


def test_modp_evaluation(modp):
    assert modp.from_laurent(q_power(1)) == modp.domain.convert(modp.evaluation)
    assert modp.from_laurent(q_power(1)) * modp.from_laurent(q_power(-1)) == modp.one


def test_rank_nullspace_solve(laurent, ratfunc):
    assert rank(SparseMatrix.identity(3, ratfunc)) == 3
    assert len(nullspace(SparseMatrix.zeros((2, 5), ratfunc))) == 5
    m = SparseMatrix.from_dok((2, 2), {(0, 0): q_power(1), (0, 1): 1, (1, 0): q_power(2), (1, 1): q_power(1)},
                              laurent)
    assert rank(m) == 1
    assert rank(m.convert(ratfunc)) == 1
    kernel = nullspace(m.convert(ratfunc))
    assert len(kernel) == 1
    one = ratfunc.one
    assert solve(SparseMatrix.identity(2, ratfunc), {0: one, 1: one}) == {0: one, 1: one}
    assert solve(m.convert(ratfunc), {1: one}) is None


def test_nullspace_is_deterministic(ratfunc):
    m = SparseMatrix.from_dok((2, 4), {(0, 0): 1, (0, 2): q_power(1), (1, 1): 1, (1, 3): bmw_z()}, ratfunc)
    assert nullspace(m) == nullspace(m)
    for vector in nullspace(m):
        product = m.matmul(SparseMatrix.from_vector(vector, (4, 1), ratfunc))
        assert product.is_zero()


def test_modp_rank_bounded_by_exact(ratfunc, modp, random_laurent):
    dok = {(i, j): random_laurent(2, 2) for i in range(4) for j in range(4) if (i + j) % 3}
    exact = SparseMatrix.from_dok((4, 4), dok, ratfunc)
    mod = SparseMatrix.from_dok((4, 4), dok, modp)
    assert rank(mod) <= rank(exact)


def test_mixed_modes_rejected(laurent, ratfunc):
    a = SparseMatrix.identity(2, laurent)
    b = SparseMatrix.identity(2, ratfunc)
    with pytest.raises(ModeMismatchError):
        a + b
    with pytest.raises(ModeMismatchError):
        b.convert(laurent)
    with pytest.raises(ModeMismatchError):
        nullspace(a)


def test_kron_and_transpose(laurent):
    a = SparseMatrix.from_dok((2, 2), {(0, 1): q_power(1)}, laurent)
    b = SparseMatrix.identity(2, laurent)
    k = a.kron(b)
    assert k.shape == (4, 4)
    assert k[0, 2] == q_power(1) and k[1, 3] == q_power(1)
    assert k.transpose()[2, 0] == q_power(1)
    assert k.nnz == 2


def test_echelon_basis(ratfunc):
    basis = EchelonBasis(ratfunc)
    one = ratfunc.one
    assert basis.add({0: one, 1: one})
    assert basis.add({1: one})
    assert not basis.add({0: one + one})
    assert basis.contains({0: one})
    assert basis.rank == 2
    assert span_rank([{0: one}, {0: one + one}, {2: one}], ratfunc) == 2


def test_sample_evaluation_is_deterministic():
    p, c = sample_evaluation(7, 2, 3)
    assert (p, c) == sample_evaluation(7, 2, 3)
    assert p > 2 ** 30
    assert all(pow(c, k, p) != 1 for k in range(1, 8 * 3 * 3 + 1))
    assert sample_evaluation(7, 2, 3, attempt=1) != (p, c)
    with pytest.raises(QSPGuardError):
        sample_evaluation(0, 1, 1, prime=101)


def test_retry_budget_is_reported():
    def compute(context):
        raise ZeroDivisionError('degenerate')

    with pytest.raises(BadEvaluationError) as info:
        with_evaluation_retry(compute, 0, 1, 2)
    assert len(info.value.tried) == 5


def test_retry_recovers_after_degeneration():
    seen = []

    def compute(context):
        seen.append(context.evaluation)
        if len(seen) == 1:
            raise ZeroDivisionError('degenerate')
        return context.evaluation

    assert with_evaluation_retry(compute, 3, 1, 2) == seen[1]


def test_resolve_mode():
    assert resolve_mode('auto', 16) == 'exact'
    assert resolve_mode('auto', 64) == 'modp'
    assert resolve_mode('modp', 4) == 'modp'
    with pytest.raises(QSPGuardError):
        resolve_mode('fast', 4)
