'''
The quantum group U_q(sp_{2m}) acting on V^{(x)n}: generator matrices, the iterated
coproduct, divided powers, weight spaces and the bracket operators [K_i; c, t] whose
products give the weight projectors.
'''

from functools import lru_cache
import logging

from .QSPException import QSPGuardError, IntegralityError
from .scalars import LaurentPoly, SparseMatrix, ScalarContext, q_power, quantum_factorial
from .combin import Weight, all_multiindices
from .tensorspace import TensorSpace, basis_index
from .reports import VerificationReport
from .utils import require

logger = logging.getLogger(__name__)

LAURENT = ScalarContext.laurent()
KINDS = ('E', 'F', 'K', 'Kinv')


class Generator:
    '''
    One of e_i, f_i, k_i, k_i^-1; the long node is i = m

    Parameters
    ----------
    kind: str
        'E', 'F', 'K' or 'Kinv'
    i: int
        Node index, 1 <= i <= m
    '''

    __slots__ = ('kind', 'i')

    def __init__(self, kind, i):
        if kind not in KINDS:
            raise QSPGuardError(f'unknown generator kind {kind!r}')
        self.kind = kind
        self.i = int(i)

    def check(self, m):
        require(1 <= self.i <= m, f'{self} is not a generator for m={m}')

    def is_long(self, m):
        return self.i == m

    def __eq__(self, other):
        return isinstance(other, Generator) and (self.kind, self.i) == (other.kind, other.i)

    def __hash__(self):
        return hash((self.kind, self.i))

    def __str__(self):
        return f'{self.kind}{self.i}'

    def __repr__(self):
        return f'Generator({self})'


def E(i):
    return Generator('E', i)


def F(i):
    return Generator('F', i)


def K(i):
    return Generator('K', i)


def Kinv(i):
    return Generator('Kinv', i)


def all_generators(m):
    '''
    e_i, f_i, k_i, k_i^-1 for i = 1..m
    '''
    return [Generator(kind, i) for i in range(1, m + 1) for kind in KINDS]


def _prime(j, m):
    return 2 * m + 1 - j


def generator_matrix(g, m):
    '''
    The action on V as a column operator: entry (out, in)

    >>> generator_matrix(E(1), 2)[0, 1] == 1
    True
    '''
    g.check(m)
    i = g.i
    entries = {}
    if g.kind == 'E':
        if i < m:
            entries[(i - 1, i)] = 1
            entries[(_prime(i + 1, m) - 1, _prime(i, m) - 1)] = -1
        else:
            entries[(m - 1, _prime(m, m) - 1)] = 1
    elif g.kind == 'F':
        if i < m:
            entries[(i, i - 1)] = 1
            entries[(_prime(i, m) - 1, _prime(i + 1, m) - 1)] = -1
        else:
            entries[(_prime(m, m) - 1, m - 1)] = 1
    else:
        sign = 1 if g.kind == 'K' else -1
        up, down = ((i, _prime(i + 1, m)), (i + 1, _prime(i, m))) if i < m else ((m,), (_prime(m, m),))
        for j in range(1, 2 * m + 1):
            exponent = sign if j in up else -sign if j in down else 0
            entries[(j - 1, j - 1)] = q_power(exponent)
    return SparseMatrix.from_dok((2 * m, 2 * m), entries, LAURENT)


def _k_tilde(i, m, inverse=False):
    k = generator_matrix(Kinv(i) if inverse else K(i), m)
    return k.matmul(k) if i == m else k


def _kron_all(factors):
    result = factors[0]
    for factor in factors[1:]:
        result = result.kron(factor)
    return result


@lru_cache(maxsize=None)
def tensor_generator(g, m, n):
    '''
    The coproduct-expanded action on V^{(x)n}

    Delta(e_i) = e_i (x) 1 + k~_i (x) e_i and Delta(f_i) = 1 (x) f_i + f_i (x) k~_i^-1,
    iterated; k_i acts as k_i^{(x)n}.

    Parameters
    ----------
    g: Generator
        The generator
    m: int
        The rank
    n: int
        Tensor degree, at least 1
    '''
    g.check(m)
    require(n >= 1, f'tensor degree must be at least 1, got {n}')
    single = generator_matrix(g, m)
    if g.kind in ('K', 'Kinv'):
        return _kron_all([single] * n)
    ident = SparseMatrix.identity(2 * m, LAURENT)
    if g.kind == 'E':
        left, right = _k_tilde(g.i, m), ident
    else:
        left, right = ident, _k_tilde(g.i, m, inverse=True)
    total = None
    for k in range(1, n + 1):
        term = _kron_all([left] * (k - 1) + [single] + [right] * (n - k))
        total = term if total is None else total + term
    return total


@lru_cache(maxsize=None)
def divided_power(i, a, m, n, kind='E'):
    '''
    e_i^{(a)} = e_i^a / [a]_i! (or f_i^{(a)}), divided exactly over Z[q, q^-1]

    A remainder raises IntegralityError.
    '''
    require(a >= 0, f'divided power exponent must be non-negative, got {a}')
    generator = Generator(kind, i)
    power = SparseMatrix.identity((2 * m) ** n, LAURENT)
    base = tensor_generator(generator, m, n)
    for _ in range(a):
        power = power.matmul(base)
    factorial = quantum_factorial(a, long=(i == m))
    try:
        return power.map(lambda v: v.exquo(factorial))
    except IntegralityError as exc:
        raise IntegralityError(f'{kind}{i}^({a}) is not integral on V^(x){n} for m={m}', witness=exc.witness)


def letter_weight(j, m):
    '''
    eps_j for j <= m, -eps_{j'} otherwise
    '''
    coords = [0] * m
    if j <= m:
        coords[j - 1] = 1
    else:
        coords[_prime(j, m) - 1] = -1
    return Weight(coords)


def index_weight(index):
    total = Weight.zero(index.m)
    for j in index.entries:
        total = total + letter_weight(j, index.m)
    return total


def weight_table(m, n):
    '''
    Weight -> sorted basis indices of V^{(x)n}[weight], keyed in sorted weight order
    '''
    buckets = {}
    for index in all_multiindices(m, n):
        buckets.setdefault(index_weight(index), []).append(basis_index(index))
    return {w: sorted(buckets[w]) for w in sorted(buckets)}


def weights_occurring(m, n):
    '''
    X_n, the weights of V^{(x)n}
    '''
    return list(weight_table(m, n))


def weight_projector(weight, n, m=None, context=LAURENT):
    '''
    Diagonal 0/1 projection onto V^{(x)n}[weight]
    '''
    m = weight.m if m is None else m
    indices = weight_table(m, n).get(weight, [])
    one = context.one
    dim = (2 * m) ** n
    return SparseMatrix((dim, dim), {k: {k: one} for k in indices}, context)


def coroot_values(m, n, i):
    '''
    h = <weight, alpha_i^vee> of every basis vector, read off the diagonal of k_i
    '''
    k = tensor_generator(K(i), m, n)
    return [k[b, b].min_exponent for b in range((2 * m) ** n)]


class QuantumBracket:
    '''
    The operator [K_i; c, t] = prod_{s=1}^t (k~_i q_i^{c-s+1} - k~_i^-1 q_i^{-c+s-1}) / (q_i^s - q_i^-s)

    On a weight vector with h = <mu, alpha_i^vee> it acts by a scalar that must be a
    Laurent polynomial.

    Parameters
    ----------
    i: int
        Node index
    c: int
        Shift
    t: int
        Number of factors, t >= 0
    long: bool (default False)
        Whether i is the long node, where q_i = q^2
    '''

    def __init__(self, i, c, t, long=False):
        require(t >= 0, f'bracket length must be non-negative, got {t}')
        self.i = i
        self.c = c
        self.t = t
        self.long = long
        self._scalars = {}

    def scalar(self, h):
        if h not in self._scalars:
            step = 2 if self.long else 1
            numer, denom = LaurentPoly.one(), LaurentPoly.one()
            for s in range(1, self.t + 1):
                a = h + self.c - s + 1
                numer = numer * (q_power(step * a) - q_power(-step * a))
                denom = denom * (q_power(step * s) - q_power(-step * s))
            if not numer:
                self._scalars[h] = LaurentPoly.zero()
            else:
                try:
                    self._scalars[h] = numer.exquo(denom)
                except IntegralityError:
                    raise IntegralityError(f'bracket [K{self.i}; {self.c}, {self.t}] is not integral at h={h}',
                                           witness={'i': self.i, 'c': self.c, 't': self.t, 'h': h})
        return self._scalars[h]

    def operator(self, m, n):
        values = coroot_values(m, n, self.i)
        return SparseMatrix.diagonal([self.scalar(h) for h in values], LAURENT)

    def __repr__(self):
        return f'QuantumBracket(K{self.i}; {self.c}, {self.t})'


def quantum_binomial_bracket(i, c, t, m):
    return QuantumBracket(i, c, t, long=(i == m))


def projector_brackets(weight, n):
    '''
    The 2m brackets whose product is p'_lambda: ranges 2n on short nodes and 4n on the long node
    '''
    m = weight.m
    brackets = []
    for i in range(1, m + 1):
        t = 4 * n if i == m else 2 * n
        h = weight.coroot_pairing(i)
        brackets.append(quantum_binomial_bracket(i, -h - 1, t, m))
        brackets.append(quantum_binomial_bracket(i, -h + t, t, m))
    return brackets


def lusztig_projector(weight, m, n):
    '''
    psi_C(p'_lambda) as a diagonal Laurent matrix
    '''
    require(weight.m == m, f'weight {weight} does not belong to rank {m}')
    hs = {i: coroot_values(m, n, i) for i in range(1, m + 1)}
    diagonal = [LaurentPoly.one()] * ((2 * m) ** n)
    for bracket in projector_brackets(weight, n):
        values = hs[bracket.i]
        diagonal = [d * bracket.scalar(h) for d, h in zip(diagonal, values)]
    return SparseMatrix.diagonal(diagonal, LAURENT)


def cartan_matrix(m):
    '''
    a_ij = <alpha_j, alpha_i^vee>

    >>> cartan_matrix(2)
    [[2, -2], [-1, 2]]
    '''
    return [[Weight.simple_root(j, m).coroot_pairing(i) for j in range(1, m + 1)] for i in range(1, m + 1)]


def _residual(report, name, lhs, rhs):
    witness = lhs.first_difference(rhs)
    if witness is None:
        return report.add(name, 'zero residual', 'zero residual')
    i, j, mine, theirs = witness
    return report.add(name, 'zero residual', 'nonzero residual',
                      witness={'row': i, 'col': j, 'lhs': str(mine), 'rhs': str(theirs)})


def projector_report(m, n):
    '''
    psi_C(p'_lambda) = p_lambda for every lambda in X_n, completeness of the weight
    projectors, and integrality of divided powers up to a = n
    '''
    report = VerificationReport('lusztig_projectors', {'m': m, 'n': n}, LAURENT)
    with report.timer():
        dim = (2 * m) ** n
        total = SparseMatrix.zeros((dim, dim), LAURENT)
        for weight in weights_occurring(m, n):
            projector = weight_projector(weight, n, m)
            total = total + projector
            try:
                _residual(report, f'projector{weight}', lusztig_projector(weight, m, n), projector)
            except IntegralityError as exc:
                report.add(f'projector{weight}', 'integral', 'not integral', witness=exc.witness)
        _residual(report, 'completeness', total, SparseMatrix.identity(dim, LAURENT))
        for i in range(1, m + 1):
            for kind in ('E', 'F'):
                witness = None
                for a in range(n + 1):
                    try:
                        divided_power(i, a, m, n, kind)
                    except IntegralityError as exc:
                        witness = {'a': a, 'entry': exc.witness}
                        break
                report.add_flag(f'divided_power_{kind}{i}_integral', witness is None, witness)
    return report


def serre_check(m, n):
    '''
    Defining relations of U_q(sp_{2m}) on V^{(x)n}: Cartan conjugation, [e_i, f_j], the
    quantum Serre relations and the weight grading of e_i, f_i
    '''
    report = VerificationReport('quantum_group_relations', {'m': m, 'n': n}, LAURENT)
    with report.timer():
        dim = (2 * m) ** n
        a = cartan_matrix(m)
        zero = SparseMatrix.zeros((dim, dim), LAURENT)
        for i in range(1, m + 1):
            k, kinv = tensor_generator(K(i), m, n), tensor_generator(Kinv(i), m, n)
            _residual(report, f'K{i}Kinv{i}', k.matmul(kinv), SparseMatrix.identity(dim, LAURENT))
            for j in range(1, m + 1):
                e, f = tensor_generator(E(j), m, n), tensor_generator(F(j), m, n)
                _residual(report, f'K{i}E{j}', k.matmul(e).matmul(kinv), e.scale(q_power(a[i - 1][j - 1])))
                _residual(report, f'K{i}F{j}', k.matmul(f).matmul(kinv), f.scale(q_power(-a[i - 1][j - 1])))
                ei = tensor_generator(E(i), m, n)
                expected = quantum_binomial_bracket(i, 0, 1, m).operator(m, n) if i == j else zero
                _residual(report, f'[E{i},F{j}]', ei.commutator(f), expected)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if i == j or a[i - 1][j - 1] == 0:
                    continue
                top = 1 - a[i - 1][j - 1]
                for kind in ('E', 'F'):
                    xj = tensor_generator(Generator(kind, j), m, n)
                    total = zero
                    for s in range(top + 1):
                        term = divided_power(i, s, m, n, kind).matmul(xj).matmul(divided_power(i, top - s, m, n, kind))
                        total = total + (term if s % 2 == 0 else -term)
                    _residual(report, f'serre_{kind}{i}{j}', total, zero)
        weights = {basis_index(index): index_weight(index) for index in all_multiindices(m, n)}
        for i in range(1, m + 1):
            root = Weight.simple_root(i, m)
            for kind, shift in (('E', root), ('F', Weight.zero(m) - root)):
                witness = None
                for row, col, _ in tensor_generator(Generator(kind, i), m, n).items():
                    if weights[row] != weights[col] + shift:
                        witness = {'row': row, 'col': col}
                        break
                report.add_flag(f'grading_{kind}{i}', witness is None, witness)
    return report


def bmw_commutation_check(m, n):
    '''
    Every generator action commutes with every beta'_k and gamma'_k
    '''
    report = VerificationReport('bmw_commutation', {'m': m, 'n': n}, LAURENT)
    with report.timer():
        space = TensorSpace(m, n)
        for g in all_generators(m):
            x = tensor_generator(g, m, n)
            for k in range(1, n):
                for label, op in (('beta_prime', space.beta_prime(k)), ('gamma_prime', space.gamma_prime(k))):
                    _residual(report, f'[{g},{label}_{k}]', x.commutator(op),
                              SparseMatrix.zeros(x.shape, LAURENT))
    return report
