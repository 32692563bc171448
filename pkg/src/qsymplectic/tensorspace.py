'''
The tensor space V^{(x)n} with V of dimension 2m, and the two-site operators
beta, gamma, beta', gamma' and beta-hat with their position embeddings.

Matrix units follow (E_ij (x) E_kl)(v_a (x) v_b) = delta_ja delta_lb v_i (x) v_k, so the
entry of E_ij (x) E_kl sits at row (i, k) and column (j, l). Basis indices are
mixed radix with the first tensor factor most significant. The right action of a
word T_{j1} ... T_{jk} on a row vector v is v * (beta'_{j1} ... beta'_{jk}).
'''

from math import isqrt
import logging

from .scalars import LaurentPoly, SparseMatrix, ScalarContext, q_power, bmw_z, rank
from .combin import MultiIndex, all_multiindices, is_pair_free, symmetric_group
from .reports import VerificationReport
from .utils import require

logger = logging.getLogger(__name__)

LAURENT = ScalarContext.laurent()


def rho(m):
    '''
    (m, m-1, ..., 1, -1, ..., -m)
    '''
    return list(range(m, 0, -1)) + list(range(-1, -m - 1, -1))


def eps(m):
    return [1 if r > 0 else -1 for r in rho(m)]


def basis_index(index):
    '''
    sum_k (i_k - 1)(2m)^{n-k}
    '''
    radix = 2 * index.m
    position = 0
    for e in index.entries:
        position = position * radix + (e - 1)
    return position


def basis_multiindex(k, m, n):
    '''
    Inverse of basis_index
    '''
    radix = 2 * m
    require(0 <= k < radix ** n, f'basis index {k} out of range for (m, n) = ({m}, {n})')
    entries = []
    for _ in range(n):
        k, digit = divmod(k, radix)
        entries.append(digit + 1)
    return MultiIndex(reversed(entries), m)


def _pair(i, k, m):
    return (i - 1) * 2 * m + (k - 1)


def _two_site(m, terms):
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Assemble an operator on V (x) V from (i, j, k, l, coeff) terms, E_ij (x) E_kl.
    '''
    entries = {}
    for i, j, k, l, coeff in terms:
        key = (_pair(i, k, m), _pair(j, l, m))
        entries[key] = entries.get(key, LaurentPoly.zero()) + coeff
    return SparseMatrix.from_dok((4 * m * m, 4 * m * m), entries, LAURENT)


def _check_rank(m):
    require(m >= 1, f'rank m must be at least 1, got {m}')


def beta(m):
    '''
    The operator beta on V (x) V
    '''
    _check_rank(m)
    size, r, e = 2 * m, rho(m), eps(m)
    one, q, q2 = LaurentPoly.one(), q_power(1), q_power(2)
    terms = []
    for i in range(1, size + 1):
        ip = size + 1 - i
        terms.append((i, i, i, i, q2))
        terms.append((i, ip, ip, i, one))
        for j in range(1, size + 1):
            jp = size + 1 - j
            if j != i and j != ip:
                terms.append((i, j, j, i, q))
            if j < i:
                terms.append((i, i, j, j, q2 - 1))
                terms.append((i, jp, ip, j, -(q2 - 1) * q_power(r[i - 1] - r[j - 1]) * (e[i - 1] * e[j - 1])))
    return _two_site(m, terms)


def gamma(m):
    _check_rank(m)
    size, r, e = 2 * m, rho(m), eps(m)
    return _two_site(m, [
        (i, size + 1 - j, size + 1 - i, j, q_power(r[i - 1] - r[j - 1]) * (e[i - 1] * e[j - 1]))
        for i in range(1, size + 1) for j in range(1, size + 1)
    ])


def beta_prime(m):
    '''
    beta' = bar(q beta^{-1}), built from its closed form

    >>> from qsymplectic.scalars import q_power
    >>> beta_prime(1)[0, 0] == q_power(1)
    True
    '''
    _check_rank(m)
    size, r, e = 2 * m, rho(m), eps(m)
    one, q, qinv, z = LaurentPoly.one(), q_power(1), q_power(-1), bmw_z()
    terms = []
    for i in range(1, size + 1):
        ip = size + 1 - i
        terms.append((i, i, i, i, q))
        terms.append((i, ip, ip, i, qinv))
        for j in range(1, size + 1):
            jp = size + 1 - j
            if j != i and j != ip:
                terms.append((i, j, j, i, one))
            if i < j:
                terms.append((i, i, j, j, z))
                terms.append((i, jp, ip, j, -z * q_power(r[j - 1] - r[i - 1]) * (e[i - 1] * e[j - 1])))
    return _two_site(m, terms)


def gamma_prime(m):
    '''
    gamma' = bar(gamma); rank one
    '''
    _check_rank(m)
    size, r, e = 2 * m, rho(m), eps(m)
    return _two_site(m, [
        (i, size + 1 - j, size + 1 - i, j, q_power(r[j - 1] - r[i - 1]) * (e[i - 1] * e[j - 1]))
        for i in range(1, size + 1) for j in range(1, size + 1)
    ])


def hecke_beta_hat(m):
    '''
    The type A Hecke operator beta-hat, satisfying (beta-hat - q)(beta-hat + q^-1) = 0
    '''
    _check_rank(m)
    size = 2 * m
    terms = []
    for i in range(1, size + 1):
        terms.append((i, i, i, i, q_power(1)))
        for j in range(1, size + 1):
            if j != i:
                terms.append((i, j, j, i, LaurentPoly.one()))
            if i < j:
                terms.append((i, i, j, j, bmw_z()))
    return _two_site(m, terms)


def identity(m, n, context=LAURENT):
    return SparseMatrix.identity((2 * m) ** n, context)


def embed_at(op2, i, n):
    '''
    id^{(x)(i-1)} (x) op2 (x) id^{(x)(n-i-1)}

    Parameters
    ----------
    op2: SparseMatrix
        An operator on V (x) V
    i: int
        The first of the two adjacent positions, 1 <= i <= n-1
    n: int
        Tensor degree
    '''
    require(1 <= i <= n - 1, f'position {i} out of range for n={n}')
    radix = isqrt(op2.shape[0])
    require(radix >= 2 and radix % 2 == 0 and op2.shape == (radix ** 2, radix ** 2),
            f'operator of shape {op2.shape} is not two-site on V (x) V')
    head, tail = radix ** (i - 1), radix ** (n - i - 1)
    block = radix ** 2
    rows = {}
    for a in range(head):
        for r, row in op2.rows.items():
            for b in range(tail):
                rows[(a * block + r) * tail + b] = {(a * block + c) * tail + b: v for c, v in row.items()}
    dim = radix ** n
    return SparseMatrix((dim, dim), rows, op2.context)


def word_product(word, factory, dim, context):
    '''
    The product factory(j1) * factory(j2) * ... in word order
    '''
    result = SparseMatrix.identity(dim, context)
    for j in word:
        result = result.matmul(factory(j))
    return result


class TensorSpace:
    '''
    V^{(x)n} for rank m with cached position operators

    Operators are built once in Laurent mode and coerced to the requested scalar
    mode on first use.

    Parameters
    ----------
    m: int
        The rank, dim V = 2m
    n: int
        The tensor degree
    context: ScalarContext (default Laurent mode)
        Scalar mode of the returned matrices
    '''

    def __init__(self, m, n, context=LAURENT):
        require(m >= 1, f'rank m must be at least 1, got {m}')
        require(n >= 0, f'degree n must be non-negative, got {n}')
        self.m = m
        self.n = n
        self.context = context
        self.dim = (2 * m) ** n
        self._cache = {}

    def _cached(self, key, build):
        if key not in self._cache:
            matrix = build()
            self._cache[key] = matrix if matrix.context == self.context else matrix.convert(self.context)
        return self._cache[key]

    def identity(self):
        return self._cached(('id',), lambda: SparseMatrix.identity(self.dim, LAURENT))

    def beta_prime(self, i):
        return self._cached(('beta_prime', i), lambda: embed_at(beta_prime(self.m), i, self.n))

    def gamma_prime(self, i):
        return self._cached(('gamma_prime', i), lambda: embed_at(gamma_prime(self.m), i, self.n))

    def beta(self, i):
        return self._cached(('beta', i), lambda: embed_at(beta(self.m), i, self.n))

    def gamma(self, i):
        return self._cached(('gamma', i), lambda: embed_at(gamma(self.m), i, self.n))

    def beta_hat(self, i):
        return self._cached(('beta_hat', i), lambda: embed_at(hecke_beta_hat(self.m), i, self.n))

    def bmw_generators(self):
        '''
        beta'_1, ..., beta'_{n-1}, gamma'_1, ..., gamma'_{n-1}
        '''
        positions = range(1, self.n)
        return [self.beta_prime(i) for i in positions] + [self.gamma_prime(i) for i in positions]

    def permutation_action(self, w, hecke=False):
        '''
        T_w (or T-hat_w) along the reduced word of w
        '''
        factory = self.beta_hat if hecke else self.beta_prime
        return word_product(w.reduced_word(), factory, self.dim, self.context)

    def basis(self):
        return all_multiindices(self.m, self.n)

    def __repr__(self):
        return f'TensorSpace(m={self.m}, n={self.n}, {self.context})'


def hecke_word_action(word, m, n, context=LAURENT):
    '''
    beta-hat_{j1} ... beta-hat_{jk}
    '''
    space = TensorSpace(m, n, context)
    return word_product(word, space.beta_hat, space.dim, context)


def flip_reverse(m, n, context=LAURENT):
    '''
    The permutation operator v_{i1} (x) ... (x) v_{in} -> v_{in} (x) ... (x) v_{i1}
    '''
    dim = (2 * m) ** n
    one = context.one
    rows = {}
    for index in all_multiindices(m, n):
        rows[basis_index(index)] = {basis_index(index.reversed()): one}
    return SparseMatrix((dim, dim), rows, context)


def dump_matrix(matrix):
    '''
    Lines "row col scalar" sorted by (row, col)
    '''
    return matrix.dump()


def _residual(report, name, lhs, rhs):
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Compare two matrices; a failure records the first differing entry.
    '''
    witness = lhs.first_difference(rhs)
    if witness is None:
        return report.add(name, 'zero residual', 'zero residual')
    i, j, mine, theirs = witness
    return report.add(name, 'zero residual', 'nonzero residual',
                      witness={'row': i, 'col': j, 'lhs': str(mine), 'rhs': str(theirs)})


def relation_bg_check(m, beta_prime_op=None, gamma_prime_op=None):
    '''
    Check beta' (beta' - (q - q^-1)(id - gamma')) = id, i.e. the skein identity
    beta' - beta'^{-1} = (q - q^-1)(id - gamma') without inverting beta'

    Parameters
    ----------
    m: int
        The rank
    beta_prime_op, gamma_prime_op: SparseMatrix or None (default None)
        Replacement operators, used to exercise the failure path
    '''
    bp = beta_prime(m) if beta_prime_op is None else beta_prime_op
    gp = gamma_prime(m) if gamma_prime_op is None else gamma_prime_op
    ident = SparseMatrix.identity(bp.shape[0], LAURENT)
    report = VerificationReport('relation_bg', {'m': m}, LAURENT)
    with report.timer():
        lhs = bp.matmul(bp - (ident - gp).scale(bmw_z()))
        _residual(report, 'skein', lhs, ident)
    return report


def operator_identity_check(m):
    '''
    Relations among the four two-site operators: beta bar(beta') = q id, gamma = bar(gamma'),
    symmetry of beta' and gamma', and rank one of gamma'
    '''
    report = VerificationReport('operator_identities', {'m': m}, LAURENT)
    with report.timer():
        bp, gp = beta_prime(m), gamma_prime(m)
        ident = SparseMatrix.identity(bp.shape[0], LAURENT)
        _residual(report, 'beta_times_bar_beta_prime', beta(m).matmul(bp.bar()), ident.scale(q_power(1)))
        _residual(report, 'gamma_is_bar_gamma_prime', gamma(m), gp.bar())
        report.add_flag('beta_prime_symmetric', bp.is_symmetric())
        report.add_flag('gamma_prime_symmetric', gp.is_symmetric())
        report.add('gamma_prime_rank', 1, rank(gp))
    return report


def hecke_quadratic_check(m):
    '''
    (beta-hat - q)(beta-hat + q^-1) = 0 on V (x) V
    '''
    report = VerificationReport('hecke_quadratic', {'m': m}, LAURENT)
    with report.timer():
        bh = hecke_beta_hat(m)
        ident = SparseMatrix.identity(bh.shape[0], LAURENT)
        lhs = (bh - ident.scale(q_power(1))).matmul(bh + ident.scale(q_power(-1)))
        _residual(report, 'quadratic', lhs, SparseMatrix.zeros(bh.shape, LAURENT))
    return report


def pairfree_compatibility_check(m, n):
    '''
    For pair-free i and every w: v_i T_w = v_i T-hat_w, and v_i T_w = v_{i.w} when
    i is moreover strictly decreasing

    Parameters
    ----------
    m: int
        The rank, at least n
    n: int
        Tensor degree
    '''
    require(m >= n, f'pair-free compatibility needs m >= n, got (m, n) = ({m}, {n})')
    space = TensorSpace(m, n)
    report = VerificationReport('pairfree_compatibility', {'m': m, 'n': n}, LAURENT)
    with report.timer():
        group = symmetric_group(n)
        actions = {w: (space.permutation_action(w), space.permutation_action(w, hecke=True)) for w in group}
        hecke_witness = None
        place_witness = None
        checked = skipped = 0
        for index in space.basis():
            if not is_pair_free(index):
                skipped += 1
                continue
            checked += 1
            row = basis_index(index)
            decreasing = all(a > b for a, b in zip(index.entries, index.entries[1:]))
            for w in group:
                bmw_row = actions[w][0].rows.get(row, {})
                if hecke_witness is None and bmw_row != actions[w][1].rows.get(row, {}):
                    hecke_witness = {'i': str(index), 'w': list(w.images)}
                if decreasing and place_witness is None:
                    target = basis_index(index.place_permute(w))
                    if bmw_row != {target: LaurentPoly.one()}:
                        place_witness = {'i': str(index), 'w': list(w.images)}
        report.add_flag('matches_hecke_action', hecke_witness is None, hecke_witness)
        report.add_flag('decreasing_indices_permute', place_witness is None, place_witness)
        report.extra.update({'pair_free_indices': checked, 'skipped_indices': skipped})
    return report
