'''
The symplectic coordinate algebra realised as functionals on the Schur algebra.

A degree-n functional is a finite combination of coordinate functionals x_{i,j}. The
pairing reads both multi-indices in reversed tensor order: <x_{i,j}, f> is the entry of
f at row rev(i), column rev(j). Under this pairing the commutant of the BMW operators is
annihilated by the relations beta wr x - x wr beta and gamma wr x - x wr gamma.
'''

from itertools import product
import logging

from .QSPException import QSPGuardError
from .scalars import LaurentPoly, SparseMatrix, ScalarContext, q_power, rank, stack_rows, run_with_mode
from .combin import MultiIndex, all_multiindices, column_group, column_strict_tableaux, \
    lambda_n, mys_tableaux, prime_of, Partition
from .tensorspace import TensorSpace, rho, eps
from .centralizer import commutant, phi_generators, oehms_count
from .reports import VerificationReport
from .utils import require

logger = logging.getLogger(__name__)

LAURENT = ScalarContext.laurent()


def _index(entries, m):
    position = 0
    for e in entries:
        position = position * 2 * m + (e - 1)
    return position


def _entries(k, m, n):
    out = []
    for _ in range(n):
        k, digit = divmod(k, 2 * m)
        out.append(digit + 1)
    return tuple(reversed(out))


class Functional:
    '''
    A linear functional on End(V^{(x)n}): sum of c_{i,j} x_{i,j}

    Parameters
    ----------
    coeffs: dict
        (i, j) -> LaurentPoly, with i, j tuples of entries in 1..2m of length degree
    m: int
        The rank
    degree: int
        n
    '''

    __slots__ = ('coeffs', 'm', 'degree')

    def __init__(self, coeffs, m, degree):
        clean = {}
        for (i, j), c in coeffs.items():
            if len(i) != degree or len(j) != degree:
                raise QSPGuardError(f'index pair ({i}, {j}) does not have degree {degree}')
            if c:
                clean[(tuple(i), tuple(j))] = c
        self.coeffs = clean
        self.m = m
        self.degree = degree

    @classmethod
    def coordinate(cls, i, j):
        '''
        x_{i,j} for multi-indices i, j
        '''
        require(i.m == j.m and i.n == j.n, 'x_{i,j} needs multi-indices of one rank and length')
        return cls({(i.entries, j.entries): LaurentPoly.one()}, i.m, i.n)

    @classmethod
    def unit(cls, m):
        '''
        The degree-0 unit
        '''
        return cls({((), ()): LaurentPoly.one()}, m, 0)

    @classmethod
    def zero(cls, m, degree):
        return cls({}, m, degree)

    def _check(self, other):
        require(self.m == other.m and self.degree == other.degree,
                f'functionals of degree {self.degree} and {other.degree} cannot be combined')

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for key, c in other.coeffs.items():
            coeffs[key] = coeffs.get(key, LaurentPoly.zero()) + c
        return Functional(coeffs, self.m, self.degree)

    def __neg__(self):
        return Functional({k: -c for k, c in self.coeffs.items()}, self.m, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        return Functional({k: c * scalar for k, c in self.coeffs.items()}, self.m, self.degree)

    def __eq__(self, other):
        return isinstance(other, Functional) and (self.coeffs, self.m, self.degree) == \
            (other.coeffs, other.m, other.degree)

    __hash__ = None

    def is_zero(self):
        return not self.coeffs

    def _positions(self):
        m = self.m
        return [(_index(i[::-1], m), _index(j[::-1], m), c) for (i, j), c in self.coeffs.items()]

    def evaluate(self, f):
        '''
        <F, f> = sum c_{i,j} f[rev(i), rev(j)] in the scalar mode of f
        '''
        require(f.shape[0] == (2 * self.m) ** self.degree, f'operator of shape {f.shape} has the wrong degree')
        context = f.context
        total = context.zero
        for row, col, c in self._positions():
            value = f.rows.get(row, {}).get(col)
            if value:
                total = total + context.convert(c) * value
        return total

    def evaluate_product(self, f, g):
        '''
        <F, f g> without forming the product
        '''
        context = f.context
        total = context.zero
        for row, col, c in self._positions():
            frow = f.rows.get(row)
            if not frow:
                continue
            acc = context.zero
            for t, value in frow.items():
                other = g.rows.get(t, {}).get(col)
                if other:
                    acc = acc + value * other
            if acc:
                total = total + context.convert(c) * acc
        return total

    def to_json(self):
        return [{'i': str(MultiIndex(i, self.m)) if i else '', 'j': str(MultiIndex(j, self.m)) if j else '',
                 'coeff': c.to_json()} for (i, j), c in sorted(self.coeffs.items())]

    def __repr__(self):
        return f'Functional(degree={self.degree}, terms={len(self.coeffs)})'


def functional_product(F, G):
    '''
    (F G)_{(i k), (j l)} = F_{i,j} G_{k,l}
    '''
    require(F.m == G.m, 'functionals of different rank')
    coeffs = {}
    for (i, j), a in F.coeffs.items():
        for (k, l), b in G.coeffs.items():
            key = (i + k, j + l)
            coeffs[key] = coeffs.get(key, LaurentPoly.zero()) + a * b
    return Functional(coeffs, F.m, F.degree + G.degree)


def wreath(mu, F, side='left'):
    '''
    mu wr x_{i,j} = sum_k mu_{i,k} x_{k,j} (left) or x_{i,j} wr mu = sum_k x_{i,k} mu_{k,j} (right),
    extended linearly

    Parameters
    ----------
    mu: SparseMatrix
        Laurent operator on V^{(x)k}
    F: Functional
        Degree k
    side: str (default 'left')
        'left' or 'right'
    '''
    m, n = F.m, F.degree
    require(mu.shape[0] == (2 * m) ** n, f'operator of shape {mu.shape} against a degree-{n} functional')
    if side not in ('left', 'right'):
        raise QSPGuardError(f'side must be left or right, got {side!r}')
    source = mu if side == 'left' else mu.transpose()
    coeffs = {}
    for (i, j), c in F.coeffs.items():
        row = source.rows.get(_index(i if side == 'left' else j, m), {})
        for k, value in row.items():
            k_entries = _entries(k, m, n)
            key = (k_entries, j) if side == 'left' else (i, k_entries)
            coeffs[key] = coeffs.get(key, LaurentPoly.zero()) + c * value
    return Functional(coeffs, m, n)


def beta_of(w, m, n=None):
    '''
    beta_{j1} ... beta_{jk} along the reduced word of w (beta, not beta')
    '''
    n = w.n if n is None else n
    space = TensorSpace(m, n)
    result = space.identity()
    for j in w.reduced_word():
        result = result.matmul(space.beta(j))
    return result


def bideterminant(partition, i, j, m):
    '''
    T_q^lambda(i:j) = sum_{w in S_{lambda^t}} (-q^2)^{-l(w)} beta(w) wr x_{i,j}

    i and j are fillings of lambda read column by column.
    '''
    n = partition.size
    if n == 0:
        return Functional.unit(m)
    require(i.n == n and j.n == n, f'fillings of length {i.n}, {j.n} for a partition of {n}')
    base = Functional.coordinate(i, j)
    total = Functional.zero(m, n)
    for w in column_group(partition):
        ell = w.length()
        coeff = q_power(-2 * ell) * (-1 if ell % 2 else 1)
        total = total + wreath(beta_of(w, m, n), base).scale(coeff)
    return total


def dq(m, k=1, l=1):
    '''
    d_q = -q^{-rho_k - rho_l} eps_k eps_l x_{(k,k'),(l,l')} wr gamma
    '''
    require(1 <= k <= 2 * m and 1 <= l <= 2 * m, f'(k, l) = ({k}, {l}) out of range for m={m}')
    r, e = rho(m), eps(m)
    space = TensorSpace(m, 2)
    x = Functional.coordinate(MultiIndex((k, prime_of(k, m)), m), MultiIndex((l, prime_of(l, m)), m))
    scalar = q_power(-r[k - 1] - r[l - 1]) * (-e[k - 1] * e[l - 1])
    return wreath(space.gamma(1), x, side='right').scale(scalar)


def dq_power(m, l):
    result = Functional.unit(m)
    for _ in range(l):
        result = functional_product(result, dq(m))
    return result


def oehms_functional(partition, l, i, j, m):
    '''
    D^{(lambda, l)}_{i,j} = d_q^l T_q^lambda(i, j)
    '''
    return functional_product(dq_power(m, l), bideterminant(partition, i, j, m))


def oehms_functionals(m, n):
    '''
    All D^{(lambda, l)}_{i,j} for (lambda, l) in Lambda_n and i, j in I_lambda^{mys}
    '''
    out = []
    for lam, l in lambda_n(m, n):
        tableaux = mys_tableaux(lam, m)
        for i in tableaux:
            for j in tableaux:
                out.append(((lam, l, i, j), oehms_functional(lam, l, i, j, m)))
    return out


def schur_basis(m, n, context):
    '''
    Basis of the commutant of the BMW operators on V^{(x)n}
    '''
    return commutant(phi_generators(m, n, context), context, (2 * m) ** n).basis


def oehms_rank_check(m, n, mode='exact', seed=0, prime=None):
    '''
    The bideterminant functionals D^{(lambda, l)}_{i,j} are as many as the Schur algebra
    dimension and independent on it

    Parameters
    ----------
    m, n: int
        Rank and degree
    mode: str (default 'exact')
        'exact', 'modp' or 'auto'
    seed: int (default 0)
        Prime-field sampling seed
    prime: int or None (default None)
        Fixed prime
    '''
    report = VerificationReport('oehms_basis', {'m': m, 'n': n})
    functionals = [F for _, F in oehms_functionals(m, n)]
    expected = oehms_count(m, n)

    def compute(context):
        report.set_context(context)
        basis = schur_basis(m, n, context)
        report.add('count', expected, len(functionals))
        report.add('commutant_dimension', expected, len(basis))
        rows = []
        for F in functionals:
            rows.append({k: v for k, v in enumerate(F.evaluate(f) for f in basis) if v})
        found = rank(stack_rows(rows, len(basis), context))
        report.add('rank', len(functionals), found)
        report.extra.update({'functionals': len(functionals), 'rank': found})
        return report

    with report.timer():
        run_with_mode(compute, mode, (2 * m) ** n, seed, m, n, prime)
    return report


def pairing_duality_check(m, n):
    '''
    The coordinate functionals against the matrix units form a permutation matrix
    '''
    report = VerificationReport('pairing_duality', {'m': m, 'n': n}, LAURENT)
    with report.timer():
        dim = (2 * m) ** n
        one = LaurentPoly.one()
        units = [SparseMatrix((dim, dim), {r: {c: one}}, LAURENT) for r in range(dim) for c in range(dim)]
        seen = set()
        witness = None
        for a, b in product(all_multiindices(m, n), repeat=2):
            x = Functional.coordinate(a, b)
            hits = [k for k, unit in enumerate(units) if x.evaluate(unit)]
            if len(hits) != 1 or x.evaluate(units[hits[0]]) != one or hits[0] in seen:
                witness = {'i': str(a), 'j': str(b), 'hits': hits}
                break
            seen.add(hits[0])
        report.add_flag('permutation_matrix', witness is None and len(seen) == dim * dim, witness)
    return report


def frt_annihilation_check(m, n=2, families=('beta', 'gamma')):
    '''
    mu wr x_{i,j} - x_{i,j} wr mu vanishes on the BMW commutant for mu in each family,
    at every position

    Parameters
    ----------
    m: int
        The rank
    n: int (default 2)
        Degree
    families: tuple of str (default ('beta', 'gamma'))
        Any of 'beta', 'gamma', 'beta_prime', 'gamma_prime'
    '''
    report = VerificationReport('frt_annihilation', {'m': m, 'n': n})
    context = ScalarContext.ratfunc()
    report.set_context(context)
    with report.timer():
        basis = schur_basis(m, n, context)
        space = TensorSpace(m, n)
        indices = all_multiindices(m, n)
        for family in families:
            witness = None
            for position in range(1, n):
                mu = getattr(space, family)(position)
                for a, b in product(indices, indices):
                    x = Functional.coordinate(a, b)
                    relation = wreath(mu, x, 'left') - wreath(mu, x, 'right')
                    for k, f in enumerate(basis):
                        if relation.evaluate(f):
                            witness = {'position': position, 'i': str(a), 'j': str(b), 'commutant_element': k}
                            break
                    if witness:
                        break
                if witness:
                    break
            report.add_flag(family, witness is None, witness)
        report.extra['commutant_dimension'] = len(basis)
    return report


def dq_checks(m, n=2):
    '''
    d_q does not depend on (k, l) on the Schur algebra and is group-like there
    '''
    report = VerificationReport('dq', {'m': m, 'n': n})
    context = ScalarContext.ratfunc()
    report.set_context(context)
    with report.timer():
        basis = schur_basis(m, 2, context)
        reference = [dq(m).evaluate(f) for f in basis]
        witness = None
        for k in range(1, 2 * m + 1):
            for l in range(1, 2 * m + 1):
                if [dq(m, k, l).evaluate(f) for f in basis] != reference:
                    witness = {'k': k, 'l': l}
                    break
            if witness:
                break
        report.add_flag('independent_of_k_l', witness is None, witness)
        d = dq(m)
        witness = None
        for a, f in enumerate(basis):
            for b, g in enumerate(basis):
                if d.evaluate_product(f, g) != reference[a] * reference[b]:
                    witness = {'f': a, 'g': b}
                    break
            if witness:
                break
        report.add_flag('group_like', witness is None, witness)
    return report


def comult_factorization_check(partition, i, j, m):
    '''
    <T(i, j), f g> = sum_{h in I_lambda^<} <T(i, h), f> <T(h, j), g> on the Schur algebra

    Parameters
    ----------
    partition: Partition
        The shape
    i, j: MultiIndex
        Fillings of the shape
    m: int
        The rank
    '''
    n = partition.size
    report = VerificationReport('comultiplication', {'m': m, 'lambda': str(partition), 'i': str(i), 'j': str(j)})
    context = ScalarContext.ratfunc()
    report.set_context(context)
    with report.timer():
        basis = schur_basis(m, n, context)
        middle = column_strict_tableaux(partition, m)
        left = {h: [bideterminant(partition, i, h, m).evaluate(f) for f in basis] for h in middle}
        right = {h: [bideterminant(partition, h, j, m).evaluate(g) for g in basis] for h in middle}
        whole = bideterminant(partition, i, j, m)
        witness = None
        for a, f in enumerate(basis):
            for b, g in enumerate(basis):
                expected = context.zero
                for h in middle:
                    expected = expected + left[h][a] * right[h][b]
                if whole.evaluate_product(f, g) != expected:
                    witness = {'f': a, 'g': b}
                    break
            if witness:
                break
        report.add_flag('factorization', witness is None, witness)
        report.extra['middle_fillings'] = len(middle)
    return report


def bideterminant_vanishing_check(m, partition=None):
    '''
    T_q^lambda(i, h) vanishes on the Schur algebra when a column of h repeats an entry in
    adjacent rows
    '''
    partition = Partition([1, 1]) if partition is None else partition
    n = partition.size
    report = VerificationReport('bideterminant_vanishing', {'m': m, 'lambda': str(partition)})
    context = ScalarContext.ratfunc()
    report.set_context(context)
    heights = list(partition.transpose())
    with report.timer():
        basis = schur_basis(m, n, context)
        witness = None
        checked = 0
        for h in all_multiindices(m, n):
            start, repeated = 0, False
            for height in heights:
                column = h.entries[start:start + height]
                repeated = repeated or any(a == b for a, b in zip(column, column[1:]))
                start += height
            if not repeated:
                continue
            for i in all_multiindices(m, n):
                checked += 1
                T = bideterminant(partition, i, h, m)
                if any(T.evaluate(f) for f in basis):
                    witness = {'i': str(i), 'h': str(h)}
                    break
            if witness:
                break
        report.add_flag('vanishes', witness is None, witness)
        report.extra['pairs_checked'] = checked
    return report


def column_antisymmetry_check(m):
    '''
    For lambda = (1, 1) and non-complementary a < b: T(i, (b, a)) = -q^-1 T(i, (a, b)) on the
    Schur algebra
    '''
    partition = Partition([1, 1])
    report = VerificationReport('column_antisymmetry', {'m': m})
    context = ScalarContext.ratfunc()
    report.set_context(context)
    with report.timer():
        basis = schur_basis(m, 2, context)
        factor = context.convert(-q_power(-1))
        witness = None
        for a in range(1, 2 * m + 1):
            for b in range(a + 1, 2 * m + 1):
                if b == prime_of(a, m):
                    continue
                for i in all_multiindices(m, 2):
                    ab = bideterminant(partition, i, MultiIndex((a, b), m), m)
                    ba = bideterminant(partition, i, MultiIndex((b, a), m), m)
                    if any(ba.evaluate(f) != factor * ab.evaluate(f) for f in basis):
                        witness = {'i': str(i), 'a': a, 'b': b}
                        break
                if witness:
                    break
            if witness:
                break
        report.add_flag('antisymmetric', witness is None, witness)
    return report


def oehms_report(m, n, mode='exact', seed=0, prime=None):
    '''
    The rank check together with the d_q and FRT checks at degree two
    '''
    report = oehms_rank_check(m, n, mode, seed, prime)
    report.merge(frt_annihilation_check(m), 'frt')
    report.merge(dq_checks(m), 'dq')
    return report
