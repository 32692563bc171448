'''
The BMW algebra B_n(-q^{2m+1}, q): words in T_i and E_i, the Enyang basis labels, their
matrices on V^{(x)n}, the defining relations and the multiplication table read off a
faithful representation.
'''

import logging
import re

from sympy.polys.matrices import DomainMatrix

from .QSPException import QSPGuardError, IntegralityError
from .constants import MODE_MODP, STRUCTURE_CONSTANTS_EXACT_MAX_N, STRUCTURE_CONSTANTS_MODP_MAX_N
from .scalars import LaurentPoly, SparseMatrix, ScalarContext, bmw_x, bmw_r, bmw_z, \
    ratfunc_to_laurent, rank, stack_rows, run_with_mode, resolve_mode
from .combin import Permutation, coset_reps_D_nu, coset_word, symmetric_group, word_text, rank_identity_terms
from .tensorspace import TensorSpace, embed_at, beta_prime, gamma_prime
from .reports import VerificationReport
from .utils import require, double_factorial

logger = logging.getLogger(__name__)

LAURENT = ScalarContext.laurent()
LETTERS = ('T', 'E')


class BmwWord:
    '''
    A word in the letters T(i), E(i), 1 <= i <= n-1

    Parameters
    ----------
    letters: iterable of (str, int)
        ('T', i) or ('E', i)
    n: int
        Number of strands
    '''

    __slots__ = ('letters', 'n')

    def __init__(self, letters, n):
        letters = tuple((str(kind), int(i)) for kind, i in letters)
        for kind, i in letters:
            if kind not in LETTERS or not 1 <= i <= n - 1:
                raise QSPGuardError(f'{kind}{i} is not a letter of the BMW algebra on {n} strands')
        self.letters = letters
        self.n = n

    @classmethod
    def parse(cls, text, n):
        '''
        Read "E1 T2 T1"
        '''
        letters = []
        for token in text.split():
            match = re.fullmatch(r'([TE])(\d+)', token)
            if match is None:
                raise QSPGuardError(f'cannot read BMW letter {token!r}')
            letters.append((match.group(1), int(match.group(2))))
        return cls(letters, n)

    @classmethod
    def from_permutation_word(cls, word, n):
        return cls([('T', j) for j in word], n)

    def reversed(self):
        '''
        The image under the anti-involution fixing the generators
        '''
        return BmwWord(self.letters[::-1], self.n)

    def __add__(self, other):
        require(self.n == other.n, 'cannot concatenate words on different numbers of strands')
        return BmwWord(self.letters + other.letters, self.n)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, BmwWord) and (self.letters, self.n) == (other.letters, other.n)

    def __hash__(self):
        return hash((self.letters, self.n))

    def __str__(self):
        return ' '.join(f'{kind}{i}' for kind, i in self.letters) or '1'

    def __repr__(self):
        return f'BmwWord({self})'


class EnyangIndex:
    '''
    Basis label (f, d1, sigma, d2): d1, d2 in D_{nu_f} and sigma permuting {2f+1, ..., n}
    '''

    __slots__ = ('f', 'd1', 'sigma', 'd2')

    def __init__(self, f, d1, sigma, d2):
        n = sigma.n
        if not 0 <= 2 * f <= n or d1.n != n or d2.n != n:
            raise QSPGuardError(f'inconsistent Enyang label f={f} on {n} strands')
        if any(sigma(a) != a for a in range(1, 2 * f + 1)):
            raise QSPGuardError(f'sigma {sigma.images} moves a paired point')
        reps = set(coset_reps_D_nu(f, n))
        if d1 not in reps or d2 not in reps:
            raise QSPGuardError(f'{d1.images} or {d2.images} is not a distinguished representative for f={f}')
        self.f = f
        self.d1 = d1
        self.sigma = sigma
        self.d2 = d2

    @property
    def n(self):
        return self.sigma.n

    def _key(self):
        return (self.f, self.d1.images, self.sigma.images, self.d2.images)

    def __eq__(self, other):
        return isinstance(other, EnyangIndex) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        return label_text(self)

    def __repr__(self):
        return f'EnyangIndex({self})'


def enyang_indices(n):
    '''
    All (2n-1)!! labels: f ascending, then d1, sigma, d2 each in canonical order
    '''
    require(n >= 1, f'the BMW algebra needs n >= 1, got {n}')
    labels = []
    for f in range(n // 2 + 1):
        reps = coset_reps_D_nu(f, n)
        sigmas = symmetric_group(n, range(2 * f + 1, n + 1))
        for d1 in reps:
            for sigma in sigmas:
                for d2 in reps:
                    labels.append(EnyangIndex(f, d1, sigma, d2))
    return labels


def enyang_word(idx):
    '''
    T_{d1}^* E_1 E_3 ... E_{2f-1} T_sigma T_{d2}, with T_{d1}^* the reversed word of d1

    >>> from qsymplectic.combin import d_J, Permutation
    >>> label = EnyangIndex(1, Permutation.identity(3), Permutation.identity(3), d_J((2, 3), 3))
    >>> str(enyang_word(label))
    'E1 T2 T1'
    '''
    n = idx.n
    d1_word = coset_word(idx.d1, idx.f)
    letters = [('T', j) for j in reversed(d1_word)]
    letters += [('E', 2 * k - 1) for k in range(1, idx.f + 1)]
    letters += [('T', j) for j in idx.sigma.reduced_word()]
    letters += [('T', j) for j in coset_word(idx.d2, idx.f)]
    return BmwWord(letters, n)


def label_text(idx):
    '''
    "f=1; d1=[s2,s1]; sigma=[]; d2=[s2]"
    '''
    return (f'f={idx.f}; d1={word_text(coset_word(idx.d1, idx.f))}; '
            f'sigma={word_text(idx.sigma.reduced_word())}; d2={word_text(coset_word(idx.d2, idx.f))}')


def parse_label(text, n):
    '''
    Inverse of label_text
    '''
    try:
        fields = dict(part.strip().split('=', 1) for part in text.split(';'))
        f = int(fields['f'])
        words = {key: [int(s) for s in re.findall(r's(\d+)', fields[key])] for key in ('d1', 'sigma', 'd2')}
    except (KeyError, ValueError):
        raise QSPGuardError(f'cannot read Enyang label {text!r}')
    return EnyangIndex(f, *(Permutation.from_word(words[key], n) for key in ('d1', 'sigma', 'd2')))


def represent(word, m, n=None, space=None):
    '''
    The matrix of a word: T(i) -> beta'_i, E(i) -> gamma'_i, multiplied in word order

    Parameters
    ----------
    word: BmwWord
        The word
    m: int
        The rank
    n: int or None (default None)
        Strands; defaults to the word's
    space: TensorSpace or None (default None)
        Cache of position operators, which also fixes the scalar mode
    '''
    n = word.n if n is None else n
    require(word.n == n, f'word on {word.n} strands represented on {n}')
    space = space or TensorSpace(m, n)
    result = space.identity()
    for kind, i in word:
        result = result.matmul(space.beta_prime(i) if kind == 'T' else space.gamma_prime(i))
    return result


class _Generators:
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Position operators for the relation suite, optionally with replaced two-site
    operators or specialized at q = 1.
    '''

    def __init__(self, m, n, beta_prime_op=None, gamma_prime_op=None, at_one=False):
        bp = beta_prime(m) if beta_prime_op is None else beta_prime_op
        gp = gamma_prime(m) if gamma_prime_op is None else gamma_prime_op
        if at_one:
            bp, gp = bp.map(LaurentPoly.at_one), gp.map(LaurentPoly.at_one)
        self.T = {i: embed_at(bp, i, n) for i in range(1, n)}
        self.E = {i: embed_at(gp, i, n) for i in range(1, n)}
        self.one = SparseMatrix.identity((2 * m) ** n, LAURENT)


def _residual(report, name, lhs, rhs):
    witness = lhs.first_difference(rhs)
    if witness is None:
        return report.add(name, 'zero residual', 'zero residual')
    i, j, mine, theirs = witness
    return report.add(name, 'zero residual', 'nonzero residual',
                      witness={'row': i, 'col': j, 'lhs': str(mine), 'rhs': str(theirs)})


def relation_suite(m, n, beta_prime_op=None, gamma_prime_op=None, at_one=False):
    '''
    The eight defining relations of B_n(r, x, z) for beta'_i, gamma'_i, with
    r = -q^{2m+1}, z = q - q^-1 and x = 1 - sum_{i=-m}^{m} q^{2i}

    Relation (1) is checked in the inversion-free form T_i^2 - 1 = z(T_i - T_i E_i).

    Parameters
    ----------
    m: int
        The rank
    n: int
        Strands, at least 2
    beta_prime_op, gamma_prime_op: SparseMatrix or None (default None)
        Replacement two-site operators
    at_one: bool (default False)
        Specialize operators and parameters at q = 1
    '''
    require(m >= 1, f'rank m must be at least 1, got {m}')
    require(n >= 2, f'the relation suite needs n >= 2, got {n}')
    x, r, z = bmw_x(m), bmw_r(m), bmw_z()
    r_inv = r ** -1
    if at_one:
        x, r, z, r_inv = x.at_one(), r.at_one(), z.at_one(), r_inv.at_one()
    name = 'brauer_relations' if at_one else 'relation_suite'
    report = VerificationReport(name, {'m': m, 'n': n}, LAURENT)
    with report.timer():
        g = _Generators(m, n, beta_prime_op, gamma_prime_op, at_one)
        T, E, one = g.T, g.E, g.one
        for i in range(1, n):
            _residual(report, f'(1) skein T{i}', T[i].matmul(T[i]) - one, (T[i] - T[i].matmul(E[i])).scale(z))
            _residual(report, f'(2) E{i}^2', E[i].matmul(E[i]), E[i].scale(x))
            _residual(report, f'(7) E{i}T{i}', E[i].matmul(T[i]), E[i].scale(r_inv))
            _residual(report, f'(7) T{i}E{i}', T[i].matmul(E[i]), E[i].scale(r_inv))
        for i in range(1, n - 1):
            j = i + 1
            _residual(report, f'(3) braid T{i}T{j}', T[i].matmul(T[j]).matmul(T[i]), T[j].matmul(T[i]).matmul(T[j]))
            _residual(report, f'(5) E{i}E{j}E{i}', E[i].matmul(E[j]).matmul(E[i]), E[i])
            _residual(report, f'(5) E{j}E{i}E{j}', E[j].matmul(E[i]).matmul(E[j]), E[j])
            _residual(report, f'(6) T{i}T{j}E{i}', T[i].matmul(T[j]).matmul(E[i]), E[j].matmul(E[i]))
            _residual(report, f'(6) T{j}T{i}E{j}', T[j].matmul(T[i]).matmul(E[j]), E[i].matmul(E[j]))
            _residual(report, f'(8) E{i}T{j}E{i}', E[i].matmul(T[j]).matmul(E[i]), E[i].scale(r))
            _residual(report, f'(8) E{j}T{i}E{j}', E[j].matmul(T[i]).matmul(E[j]), E[j].scale(r))
        for i in range(1, n):
            for j in range(i + 2, n):
                _residual(report, f'(4) T{i}T{j}', T[i].matmul(T[j]), T[j].matmul(T[i]))
    return report


def brauer_degeneration_check(m, n):
    '''
    The relations specialized at q = 1, where E_i^2 = -2m E_i and T_i^2 = 1
    '''
    report = relation_suite(m, n, at_one=True)
    report.add('loop_value_at_one', -2 * m, bmw_x(m).at_one().terms.get(0, 0))
    return report


def star_symmetry_check(m, n, words=None):
    '''
    represent(w) transposed equals represent(reversed w), for all Enyang words by default
    '''
    report = VerificationReport('star_symmetry', {'m': m, 'n': n}, LAURENT)
    with report.timer():
        space = TensorSpace(m, n)
        for i in range(1, n):
            report.add_flag(f'beta_prime_{i}_symmetric', space.beta_prime(i).is_symmetric())
            report.add_flag(f'gamma_prime_{i}_symmetric', space.gamma_prime(i).is_symmetric())
        words = [enyang_word(idx) for idx in enyang_indices(n)] if words is None else words
        witness = None
        for word in words:
            if represent(word, m, n, space).transpose() != represent(word.reversed(), m, n, space):
                witness = str(word)
                break
        report.add_flag('words', witness is None, witness)
    return report


def enyang_matrices(m, n, space=None):
    space = space or TensorSpace(m, n)
    return [represent(enyang_word(idx), m, n, space) for idx in enyang_indices(n)]


def enyang_rank(m, n, context):
    '''
    Rank of the Enyang basis images in End(V^{(x)n}) over a field mode
    '''
    space = TensorSpace(m, n, context)
    vectors = [matrix.vectorize() for matrix in enyang_matrices(m, n, space)]
    return rank(stack_rows(vectors, space.dim ** 2, context))


def faithfulness_check(m, n, mode='auto', seed=0, prime=None):
    '''
    The (2n-1)!! Enyang images are independent exactly when m >= n

    Parameters
    ----------
    m, n: int
        Rank and strands
    mode: str (default 'auto')
        'exact', 'modp' or 'auto'
    seed: int (default 0)
        Prime-field sampling seed
    prime: int or None (default None)
        Fixed prime for prime-field runs
    '''
    expected_rank = double_factorial(2 * n - 1)
    report = VerificationReport('faithfulness', {'m': m, 'n': n})

    def compute(context):
        report.set_context(context)
        return enyang_rank(m, n, context)

    with report.timer():
        found = run_with_mode(compute, mode, (2 * m) ** n, seed, m, n, prime)
        report.add('independent', m >= n, found == expected_rank)
        if m >= n:
            report.add('rank', expected_rank, found)
        report.extra.update({'basis_size': expected_rank, 'rank': found})
    return report


def counts_report(n_max):
    '''
    sum_f |D_{nu_f}|^2 (n - 2f)! = (2n - 1)!! for n = 1..n_max
    '''
    require(n_max >= 1, f'n_max must be at least 1, got {n_max}')
    report = VerificationReport('rank_identity', {'n_max': n_max})
    with report.timer():
        for n in range(1, n_max + 1):
            total = sum(cosets ** 2 * perms for _, cosets, perms in rank_identity_terms(n))
            report.add(f'n={n}', double_factorial(2 * n - 1), total)
    return report


class StructureConstants:
    '''
    Multiplication table of the Enyang basis

    Parameters
    ----------
    labels: list of EnyangIndex
        The basis, in canonical order
    table: dict
        (a, b) -> {k: coefficient}: b_a * b_b = sum_k coefficient * b_k
    context: ScalarContext
        Laurent mode for exact tables, a prime field otherwise
    '''

    def __init__(self, labels, table, context):
        self.labels = labels
        self.table = table
        self.context = context

    @property
    def n(self):
        return self.labels[0].n

    def product(self, a, b):
        return dict(self.table[(a, b)])

    def multiply(self, x, y):
        '''
        Product of two elements given as {basis position: coefficient}
        '''
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, c in self.table[(a, b)].items():
                    out[k] = out.get(k, self.context.zero) + ca * cb * c
        return {k: v for k, v in out.items() if v}

    def to_json(self):
        def encode(value):
            return value.to_json() if isinstance(value, LaurentPoly) else int(value)
        rows = []
        for (a, b), coeffs in sorted(self.table.items()):
            rows.append({
                'a': label_text(self.labels[a]),
                'b': label_text(self.labels[b]),
                'coeffs': [{'label': label_text(self.labels[k]), 'coeff': encode(c)} for k, c in sorted(coeffs.items())],
            })
        return {'n': self.n, 'mode': self.context.mode, 'table': rows}


def _pivot_positions(vectors, ncols, context):
    '''
    NOT MEANT TO BE CALLED BY THE END USER

    Coordinates on which the stacked basis vectors are already independent.
    '''
    dm = DomainMatrix.from_dod({i: dict(v) for i, v in enumerate(vectors)}, (len(vectors), ncols), context.domain)
    _, pivots = dm.rref()
    return list(pivots)


def structure_constants(n, mode='exact', seed=0, prime=None):
    '''
    Re-expand every product of two Enyang basis elements in the basis, reading the
    coefficients off the faithful representation with m = n

    Exact tables must come out in Z[q, q^-1]; a non-Laurent coefficient raises
    IntegralityError. Prime-field tables are available for n = 4.

    Parameters
    ----------
    n: int
        Strands
    mode: str (default 'exact')
        'exact' or 'modp'
    seed: int (default 0)
        Prime-field sampling seed
    prime: int or None (default None)
        Fixed prime for prime-field runs
    '''
    resolved = resolve_mode(mode, 0)
    limit = STRUCTURE_CONSTANTS_MODP_MAX_N if resolved == MODE_MODP else STRUCTURE_CONSTANTS_EXACT_MAX_N
    require(1 <= n <= limit, f'structure constants in {resolved} mode are limited to n <= {limit}, got {n}')
    labels = enyang_indices(n)
    m = n

    def compute(context):
        exact = context.mode != MODE_MODP
        space = TensorSpace(m, n)
        laurent = [represent(enyang_word(idx), m, n, space) for idx in labels]
        field = [matrix.convert(context) for matrix in laurent]
        ncols = space.dim ** 2
        vectors = [matrix.vectorize() for matrix in field]
        pivots = _pivot_positions(vectors, ncols, context)
        if len(pivots) != len(labels):
            raise QSPGuardError(f'the Enyang images are dependent at m=n={n}; the representation is not faithful')
        restricted = SparseMatrix.from_dok(
            (len(pivots), len(labels)),
            {(p, k): vectors[k][c] for k in range(len(labels)) for p, c in enumerate(pivots) if c in vectors[k]},
            context)
        system = restricted.to_domain_matrix()
        inverse = system.inv()
        table = {}
        for a in range(len(labels)):
            for b in range(len(labels)):
                prod_laurent = laurent[a].matmul(laurent[b])
                prod_vec = prod_laurent.convert(context).vectorize()
                rhs = DomainMatrix.from_dod(
                    {p: {0: prod_vec[c]} for p, c in enumerate(pivots) if c in prod_vec},
                    (len(pivots), 1), context.domain)
                solution = inverse.matmul(rhs).to_dod()
                coeffs = {k: row[0] for k, row in solution.items()}
                if exact:
                    coeffs = {k: ratfunc_to_laurent(v) for k, v in coeffs.items()}
                    expansion, basis = coeffs, laurent
                    target = prod_laurent
                else:
                    expansion, basis = coeffs, field
                    target = prod_laurent.convert(context)
                total = SparseMatrix.zeros(target.shape, target.context)
                for k, c in expansion.items():
                    total = total + basis[k].scale(c)
                if total != target:
                    raise IntegralityError(f'product {a}*{b} is not in the span of the Enyang basis',
                                           witness=(label_text(labels[a]), label_text(labels[b])))
                table[(a, b)] = coeffs
            logger.debug('structure constants: row %d of %d done', a + 1, len(labels))
        return StructureConstants(labels, table, LAURENT if exact else context)

    return run_with_mode(compute, resolved, 0, seed, m, n, prime)
