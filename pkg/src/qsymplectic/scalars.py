'''
Exact scalars in three modes and the linear-algebra kernels every other module uses.

Laurent mode works in Q[q, q^-1] with the `LaurentPoly` type below; rational-function
mode uses sympy's fraction field ZZ(q); prime-field mode evaluates q at a unit of GF(p).
Operators are `SparseMatrix` values over one `ScalarContext`.
'''

import logging
import random

from sympy import Symbol, nextprime, isprime
from sympy.polys.domains import QQ, ZZ, GF
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import ExactQuotientFailed, NotInvertible, NotReversible

from .QSPException import QSPGuardError, ModeMismatchError, IntegralityError, BadEvaluationError
from .constants import MODE_LAURENT, MODE_RATFUNC, MODE_MODP, MODE_EXACT, MODE_AUTO, \
    MIN_PRIME_BITS, EVALUATION_RETRIES, AUTO_EXACT_DIM

logger = logging.getLogger(__name__)

Q = Symbol('q')
POLY_DOMAIN = QQ[Q]
RATFUNC_DOMAIN = ZZ.frac_field(Q)

# Failures raised by sympy when a prime-field evaluation degenerates
DEGENERATE_EVALUATION = (ZeroDivisionError, NotInvertible, NotReversible)


def _coeff_text(c):
    num, den = QQ.numer(c), QQ.denom(c)
    return f'{num}/{den}'


def _parse_coeff(text):
    if isinstance(text, int):
        return QQ(text)
    num, _, den = str(text).partition('/')
    return QQ(int(num), int(den or 1))


class LaurentPoly:
    '''
    Element of Q[q, q^-1], stored as a map exponent -> rational coefficient

    Zero coefficients are never stored, so two values are equal exactly when
    their maps are equal.

    >>> from qsymplectic.scalars import LaurentPoly
    >>> LaurentPoly({1: 1, -1: 1})
    LaurentPoly(q + q^-1)
    '''

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exponent, coeff in terms.items():
                coeff = QQ.convert(coeff)
                if coeff:
                    clean[int(exponent)] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent=1, coeff=1):
        '''
        coeff * q^exponent
        '''
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({0: QQ(1)})

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def min_exponent(self):
        return min(self._terms) if self._terms else 0

    @property
    def max_exponent(self):
        return max(self._terms) if self._terms else 0

    def is_monomial(self):
        return len(self._terms) == 1

    def is_integral(self):
        '''
        True when every coefficient is an integer, i.e. the value lies in Z[q, q^-1]
        '''
        return all(QQ.denom(c) == 1 for c in self._terms.values())

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            total = terms.get(e, 0) + c
            if total:
                terms[e] = total
            else:
                terms.pop(e, None)
        return LaurentPoly._raw(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            if not self.is_monomial():
                raise IntegralityError(f'{self} is not a unit of Z[q, q^-1]')
            (e, c), = self._terms.items()
            return LaurentPoly._raw({e * k: QQ(1) / c ** (-k)})
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def bar(self):
        '''
        The ring involution q -> q^-1
        '''
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def shift(self, k):
        '''
        Multiply by q^k
        '''
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def substitute_power(self, k):
        '''
        The value at q^k, e.g. k=2 rewrites a polynomial in q_i = q^2
        '''
        return LaurentPoly._raw({e * k: c for e, c in self._terms.items()})

    def exquo(self, other):
        '''
        Exact quotient in Q[q, q^-1]; a nonzero remainder raises IntegralityError
        '''
        other = _as_laurent(other)
        if not other:
            raise ZeroDivisionError('division of a Laurent polynomial by zero')
        if not self:
            return LaurentPoly.zero()
        a_shift, b_shift = self.min_exponent, other.min_exponent
        try:
            quotient = _to_poly(self, a_shift).exquo(_to_poly(other, b_shift))
        except ExactQuotientFailed:
            raise IntegralityError(
                f'{self} is not divisible by {other} in Z[q, q^-1]', witness=(str(self), str(other)))
        return _from_poly(quotient, a_shift - b_shift)

    def evaluate(self, value, domain):
        '''
        The image under q -> value in a sympy field domain

        Parameters
        ----------
        value: domain element
            The image of q; must be invertible when negative exponents occur
        domain: sympy Domain
            Target field
        '''
        result = domain.zero
        inverse = None
        for e, c in self._terms.items():
            coeff = domain.quo(domain.convert(QQ.numer(c)), domain.convert(QQ.denom(c)))
            if e >= 0:
                result += coeff * value ** e
            else:
                if inverse is None:
                    inverse = domain.revert(value)
                result += coeff * inverse ** (-e)
        return result

    def at_one(self):
        '''
        Specialization q -> 1
        '''
        return LaurentPoly.constant(sum(self._terms.values(), QQ(0)))

    def to_json(self):
        return {'coeffs': [[e, _coeff_text(self._terms[e])] for e in sorted(self._terms)]}

    @classmethod
    def from_json(cls, payload):
        return cls({int(e): _parse_coeff(c) for e, c in payload['coeffs']})

    def __str__(self):
        if not self._terms:
            return '0'
        pieces = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = '-' if c < 0 else '+'
            c = -c if c < 0 else c
            if e == 0:
                body = str(c)
            else:
                power = 'q' if e == 1 else f'q^{e}'
                body = power if c == 1 else f'{c}*{power}'
            pieces.append((sign, body))
        text = ('-' if pieces[0][0] == '-' else '') + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f' {sign} {body}'
        return text

    def __repr__(self):
        return f'LaurentPoly({self})'


def _as_laurent(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int) or QQ.of_type(value):
        return LaurentPoly.constant(value)
    return NotImplemented


def _to_poly(f, shift):
    return POLY_DOMAIN.ring.from_dict({(e - shift,): c for e, c in f._terms.items()})


def _from_poly(poly, shift):
    return LaurentPoly({monom[0] + shift: c for monom, c in poly.items()})


def q_power(exponent):
    '''
    The monomial q^exponent
    '''
    return LaurentPoly._raw({int(exponent): QQ(1)})


def bar(f):
    '''
    Exponent-negating involution of Z[q, q^-1]

    >>> bar(q_power(1)) == q_power(-1)
    True
    '''
    return f.bar()


def quantum_integer(k, long=False):
    '''
    The quantum integer [k]_i, with q_i = q^2 on the long node and q_i = q otherwise

    Parameters
    ----------
    k: int
        May be negative, [-k] = -[k]
    long: bool (default False)
        Whether the node is the long simple root alpha_m
    '''
    step = 2 if long else 1
    size = abs(k)
    terms = {step * (size - 1 - 2 * j): QQ(1 if k > 0 else -1) for j in range(size)}
    return LaurentPoly._raw(terms)


def quantum_factorial(k, long=False):
    '''
    [k]_i! = [k]_i [k-1]_i ... [1]_i, with [0]! = 1
    '''
    if k < 0:
        raise QSPGuardError(f'quantum factorial of a negative integer ({k})')
    result = LaurentPoly.one()
    for j in range(1, k + 1):
        result = result * quantum_integer(j, long)
    return result


def bmw_x(m):
    '''
    The loop parameter x = 1 - sum_{i=-m}^{m} q^{2i} of the specialized BMW algebra
    '''
    if m < 0:
        raise QSPGuardError(f'rank must be non-negative, got {m}')
    return LaurentPoly.one() - LaurentPoly({2 * i: 1 for i in range(-m, m + 1)})


def bmw_r(m):
    '''
    r = -q^{2m+1}
    '''
    return LaurentPoly.monomial(2 * m + 1, -1)


def bmw_z():
    '''
    z = q - q^-1
    '''
    return LaurentPoly({1: 1, -1: -1})


def to_ratfunc(f):
    '''
    Embed a Laurent polynomial into ZZ(q)

    The coefficients are cleared to integers and the minimal power of q is moved
    into the denominator; sympy cancels the fraction to its canonical form.
    '''
    field = RATFUNC_DOMAIN.field
    if not f:
        return field.zero
    lcm = ZZ(1)
    for c in f._terms.values():
        lcm = ZZ.lcm(lcm, QQ.denom(c))
    offset = min(f.min_exponent, 0)
    numer = field.ring.from_dict(
        {(e - offset,): QQ.numer(c) * (lcm // QQ.denom(c)) for e, c in f._terms.items()})
    denom = field.ring.from_dict({(-offset,): lcm})
    return field.new(numer, denom)


def ratfunc_to_laurent(r):
    '''
    Read a reduced fraction back as a Laurent polynomial

    The denominator has to be a monomial c*q^k; anything else raises IntegralityError.
    '''
    if not r:
        return LaurentPoly.zero()
    denom = r.denom
    if len(denom) != 1:
        raise IntegralityError(f'{r.as_expr()} is not a Laurent polynomial', witness=str(r.as_expr()))
    (monom, dcoeff), = denom.items()
    return LaurentPoly({mon[0] - monom[0]: QQ(int(c), int(dcoeff)) for mon, c in r.numer.items()})


def ratfunc_to_json(r):
    '''
    {"num": ..., "den": ...} in the Laurent coefficient encoding
    '''
    def encode(poly):
        return {'coeffs': [[mon[0], f'{c}/1'] for mon, c in sorted(poly.items())]}
    return {'num': encode(r.numer), 'den': encode(r.denom)}


class ScalarContext:
    '''
    One scalar mode: where matrix entries live and how Laurent inputs are coerced

    Parameters
    ----------
    mode: str (default 'laurent')
        One of 'laurent', 'ratfunc' or 'modp'
    prime: int or None (default None)
        The characteristic, prime-field mode only
    evaluation: int or None (default None)
        The image of q in GF(prime), prime-field mode only
    '''

    def __init__(self, mode=MODE_LAURENT, prime=None, evaluation=None):

        if mode not in (MODE_LAURENT, MODE_RATFUNC, MODE_MODP):
            raise QSPGuardError(f'unknown scalar mode {mode!r}')
        self.mode = mode
        self.prime = prime
        self.evaluation = evaluation
        self._cache = {}

        if mode == MODE_MODP:
            if prime is None or evaluation is None:
                raise QSPGuardError('prime-field mode needs both a prime and an evaluation point')
            self.domain = GF(prime)
            self._q = self.domain.convert(evaluation)
            if not self._q:
                raise BadEvaluationError('q evaluated to zero', tried=[(prime, evaluation)])
        elif mode == MODE_RATFUNC:
            self.domain = RATFUNC_DOMAIN
            self._q = None
        else:
            self.domain = None
            self._q = None

    @classmethod
    def laurent(cls):
        return cls(MODE_LAURENT)

    @classmethod
    def ratfunc(cls):
        return cls(MODE_RATFUNC)

    @classmethod
    def modp(cls, prime, evaluation):
        return cls(MODE_MODP, prime, evaluation)

    @property
    def is_field(self):
        return self.mode != MODE_LAURENT

    @property
    def zero(self):
        return LaurentPoly.zero() if self.domain is None else self.domain.zero

    @property
    def one(self):
        return LaurentPoly.one() if self.domain is None else self.domain.one

    def from_laurent(self, f):
        '''
        Coerce a Laurent polynomial into this mode
        '''
        if self.mode == MODE_LAURENT:
            return f
        cached = self._cache.get(f)
        if cached is None:
            if self.mode == MODE_RATFUNC:
                cached = to_ratfunc(f)
            else:
                cached = f.evaluate(self._q, self.domain)
            self._cache[f] = cached
        return cached

    def convert(self, value):
        '''
        Coerce an int, rational or Laurent polynomial into this mode
        '''
        if isinstance(value, LaurentPoly):
            return self.from_laurent(value)
        if isinstance(value, int) or QQ.of_type(value):
            return self.from_laurent(LaurentPoly.constant(value))
        return value

    def describe(self):
        return {'mode': self.mode, 'prime': self.prime, 'evaluation': self.evaluation}

    def __eq__(self, other):
        if not isinstance(other, ScalarContext):
            return NotImplemented
        return (self.mode, self.prime, self.evaluation) == (other.mode, other.prime, other.evaluation)

    def __hash__(self):
        return hash((self.mode, self.prime, self.evaluation))

    def __repr__(self):
        if self.mode == MODE_MODP:
            return f'ScalarContext(modp, p={self.prime}, q={self.evaluation})'
        return f'ScalarContext({self.mode})'


def sample_evaluation(seed, m, n, attempt=0, prime=None):
    '''
    Deterministically sample (p, c) with p > 2^30 and c^k != 1 for 1 <= k <= 8n(m+1)

    Parameters
    ----------
    seed: int
        Base seed
    m, n: int
        Rank and degree; they set the order bound on c
    attempt: int (default 0)
        Retry counter, mixed into the seed
    prime: int or None (default None)
        A fixed prime; only the evaluation point is resampled
    '''
    rng = random.Random(int(seed) * 7919 + attempt)
    if prime is None:
        prime = int(nextprime(rng.randrange(2 ** MIN_PRIME_BITS, 2 ** (MIN_PRIME_BITS + 1))))
    elif prime <= 2 ** MIN_PRIME_BITS or not isprime(prime):
        raise QSPGuardError(f'--prime must be a prime above 2^{MIN_PRIME_BITS}, got {prime}')
    bound = 8 * n * (m + 1)
    while True:
        c = rng.randrange(2, prime - 1)
        if all(pow(c, k, prime) != 1 for k in range(1, bound + 1)):
            return prime, c


def with_evaluation_retry(compute, seed, m, n, prime=None):
    '''
    Run compute(context) in prime-field mode, resampling (p, c) on degenerate evaluations

    Raises BadEvaluationError once the retry budget is spent.
    '''
    tried = []
    for attempt in range(EVALUATION_RETRIES):
        p, c = sample_evaluation(seed, m, n, attempt, prime)
        try:
            return compute(ScalarContext.modp(p, c))
        except DEGENERATE_EVALUATION as exc:
            logger.warning('evaluation q=%s mod %s degenerated (%s); resampling', c, p, exc)
            tried.append((p, c))
        except BadEvaluationError as exc:
            logger.warning('evaluation q=%s mod %s rejected (%s); resampling', c, p, exc)
            tried.append((p, c))
    raise BadEvaluationError(f'all {EVALUATION_RETRIES} prime-field evaluations degenerated', tried=tried)


def resolve_mode(mode, dim):
    '''
    Map the user-facing mode ('exact', 'modp', 'auto') to 'exact' or 'modp'
    '''
    if mode not in (MODE_EXACT, MODE_MODP, MODE_AUTO):
        raise QSPGuardError(f'unknown mode {mode!r}; expected exact, modp or auto')
    if mode == MODE_AUTO:
        return MODE_EXACT if dim <= AUTO_EXACT_DIM else MODE_MODP
    return mode


class SparseMatrix:
    '''
    Sparse matrix over one ScalarContext, stored as row -> {col -> value}

    Explicit zeros are never stored and instances are treated as immutable.
    Rows and columns are 0-based basis indices.

    Parameters
    ----------
    shape: tuple of int
        (rows, cols)
    rows: dict
        row -> {col -> nonzero value}
    context: ScalarContext
        The scalar mode of every entry
    '''

    __slots__ = ('shape', 'rows', 'context')

    def __init__(self, shape, rows, context):
        self.shape = (int(shape[0]), int(shape[1]))
        self.rows = rows
        self.context = context

    @classmethod
    def from_dok(cls, shape, entries, context):
        '''
        Build from {(row, col): value}, coercing values and dropping zeros
        '''
        rows = {}
        for (i, j), value in entries.items():
            value = context.convert(value)
            if value:
                rows.setdefault(i, {})[j] = value
        return cls(shape, rows, context)

    @classmethod
    def identity(cls, dim, context):
        one = context.one
        return cls((dim, dim), {i: {i: one} for i in range(dim)}, context)

    @classmethod
    def zeros(cls, shape, context):
        return cls(shape, {}, context)

    @classmethod
    def diagonal(cls, values, context):
        values = [context.convert(v) for v in values]
        return cls((len(values), len(values)), {i: {i: v} for i, v in enumerate(values) if v}, context)

    @classmethod
    def from_vector(cls, vector, shape, context):
        '''
        Inverse of vectorize: flat index row*cols + col
        '''
        cols = shape[1]
        rows = {}
        for index, value in vector.items():
            if value:
                rows.setdefault(index // cols, {})[index % cols] = value
        return cls(shape, rows, context)

    def __getitem__(self, key):
        i, j = key
        return self.rows.get(i, {}).get(j, self.context.zero)

    def items(self):
        '''
        (row, col, value) triples sorted by (row, col)
        '''
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    @property
    def nnz(self):
        return sum(len(row) for row in self.rows.values())

    def _check(self, other, same_shape=True):
        if not isinstance(other, SparseMatrix):
            raise TypeError(f'expected a SparseMatrix, got {type(other).__name__}')
        if self.context != other.context:
            raise ModeMismatchError(f'scalar modes differ: {self.context} vs {other.context}')
        if same_shape and self.shape != other.shape:
            raise QSPGuardError(f'shape mismatch: {self.shape} vs {other.shape}')

    def __add__(self, other):
        self._check(other)
        rows = {i: dict(row) for i, row in self.rows.items()}
        for i, orow in other.rows.items():
            row = rows.setdefault(i, {})
            for j, value in orow.items():
                total = row[j] + value if j in row else value
                if total:
                    row[j] = total
                else:
                    row.pop(j, None)
            if not row:
                del rows[i]
        return SparseMatrix(self.shape, rows, self.context)

    def __neg__(self):
        return SparseMatrix(self.shape, {i: {j: -v for j, v in row.items()} for i, row in self.rows.items()},
                            self.context)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        scalar = self.context.convert(scalar)
        if not scalar:
            return SparseMatrix.zeros(self.shape, self.context)
        rows = {}
        for i, row in self.rows.items():
            new = {j: v * scalar for j, v in row.items()}
            new = {j: v for j, v in new.items() if v}
            if new:
                rows[i] = new
        return SparseMatrix(self.shape, rows, self.context)

    def __mul__(self, other):
        if isinstance(other, SparseMatrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other):
        '''
        Matrix product self * other, accumulated row by row
        '''
        self._check(other, same_shape=False)
        if self.shape[1] != other.shape[0]:
            raise QSPGuardError(f'cannot multiply {self.shape} by {other.shape}')
        brows = other.rows
        out = {}
        for i, arow in self.rows.items():
            acc = {}
            for k, a in arow.items():
                brow = brows.get(k)
                if brow is None:
                    continue
                for j, b in brow.items():
                    if j in acc:
                        acc[j] = acc[j] + a * b
                    else:
                        acc[j] = a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return SparseMatrix((self.shape[0], other.shape[1]), out, self.context)

    def commutator(self, other):
        return self.matmul(other) - other.matmul(self)

    def kron(self, other):
        '''
        Tensor product, with self as the more significant factor
        '''
        self._check(other, same_shape=False)
        r2, c2 = other.shape
        rows = {}
        for i1, row1 in self.rows.items():
            for i2, row2 in other.rows.items():
                new = {}
                for j1, a in row1.items():
                    for j2, b in row2.items():
                        value = a * b
                        if value:
                            new[j1 * c2 + j2] = value
                if new:
                    rows[i1 * r2 + i2] = new
        return SparseMatrix((self.shape[0] * r2, self.shape[1] * c2), rows, self.context)

    def transpose(self):
        rows = {}
        for i, row in self.rows.items():
            for j, value in row.items():
                rows.setdefault(j, {})[i] = value
        return SparseMatrix((self.shape[1], self.shape[0]), rows, self.context)

    def is_symmetric(self):
        return self.shape[0] == self.shape[1] and self == self.transpose()

    def is_zero(self):
        return not self.rows

    def first_nonzero(self):
        '''
        (row, col, value) of the first stored entry in (row, col) order, or None
        '''
        return next(self.items(), None)

    def first_difference(self, other):
        '''
        The first (row, col, mine, theirs) where the two matrices disagree, or None
        '''
        witness = (self - other).first_nonzero()
        if witness is None:
            return None
        i, j, _ = witness
        return i, j, self[i, j], other[i, j]

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.context == other.context and self.rows == other.rows

    __hash__ = None

    def map(self, func, context=None):
        '''
        Apply func to every entry, optionally landing in another context
        '''
        context = context or self.context
        rows = {}
        for i, row in self.rows.items():
            new = {j: func(v) for j, v in row.items()}
            new = {j: v for j, v in new.items() if v}
            if new:
                rows[i] = new
        return SparseMatrix(self.shape, rows, context)

    def convert(self, context):
        '''
        Coerce a Laurent-mode matrix into another mode
        '''
        if context == self.context:
            return self
        if self.context.mode != MODE_LAURENT:
            raise ModeMismatchError(f'only Laurent matrices can be coerced, not {self.context}')
        return self.map(context.from_laurent, context)

    def bar(self):
        return self.map(lambda v: v.bar())

    def vectorize(self):
        '''
        Flat {row*cols + col: value} view
        '''
        cols = self.shape[1]
        return {i * cols + j: v for i, row in self.rows.items() for j, v in row.items()}

    def to_domain_matrix(self):
        '''
        The sympy DomainMatrix over the context's field
        '''
        if not self.context.is_field:
            raise ModeMismatchError('Laurent matrices have no field domain; coerce first')
        return DomainMatrix.from_dod({i: dict(row) for i, row in self.rows.items()},
                                     self.shape, self.context.domain)

    def dump(self):
        '''
        Text lines "row col scalar" sorted by (row, col)
        '''
        return [f'{i} {j} {v}' for i, j, v in self.items()]

    def __repr__(self):
        return f'SparseMatrix(shape={self.shape}, nnz={self.nnz}, {self.context})'


def stack_rows(vectors, ncols, context):
    '''
    A SparseMatrix whose rows are the given {col: value} vectors
    '''
    return SparseMatrix((len(vectors), ncols), {i: dict(v) for i, v in enumerate(vectors) if v}, context)


def rank(matrix):
    '''
    Exact rank

    Laurent matrices go through fraction-free elimination over Q[q] after each
    row is shifted by a power of q; field modes use sympy's sparse rref.
    '''
    if matrix.context.mode == MODE_LAURENT:
        dod = {}
        for i, row in matrix.rows.items():
            shift = min(v.min_exponent for v in row.values())
            dod[i] = {j: _to_poly(v, shift) for j, v in row.items()}
        dm = DomainMatrix.from_dod(dod, matrix.shape, POLY_DOMAIN)
        _, _, pivots = dm.rref_den()
        return len(pivots)
    return matrix.to_domain_matrix().rank()


def nullspace(matrix):
    '''
    Basis of {x : matrix * x = 0} as a list of {col: value} vectors

    Pivots are the first nonzero entries scanning columns left to right, so the
    basis only depends on the input.
    '''
    if not matrix.context.is_field:
        raise ModeMismatchError('nullspace needs a field mode (ratfunc or modp)')
    if not matrix.rows:
        one = matrix.context.one
        return [{j: one} for j in range(matrix.shape[1])]
    basis = matrix.to_domain_matrix().nullspace().to_dod()
    rows = len(basis)
    return [basis[r] for r in sorted(basis)] if rows else []


def solve(matrix, rhs):
    '''
    One solution x of matrix * x = rhs, or None when the system is inconsistent

    Parameters
    ----------
    matrix: SparseMatrix
        Coefficients over a field mode
    rhs: dict
        row -> value
    '''
    if not matrix.context.is_field:
        raise ModeMismatchError('solve needs a field mode (ratfunc or modp)')
    nrows, ncols = matrix.shape
    rows = {i: dict(row) for i, row in matrix.rows.items()}
    for i, value in rhs.items():
        if value:
            rows.setdefault(i, {})[ncols] = value
    augmented = DomainMatrix.from_dod(rows, (nrows, ncols + 1), matrix.context.domain)
    reduced, pivots = augmented.rref()
    if ncols in pivots:
        return None
    dod = reduced.to_dod()
    solution = {}
    for r, p in enumerate(pivots):
        value = dod.get(r, {}).get(ncols)
        if value:
            solution[p] = value
    return solution


class EchelonBasis:
    '''
    Incrementally maintained reduced row-echelon basis of sparse vectors

    Every stored row has a one at its pivot (its first nonzero column) and zeros
    at all other pivots, so reduction never reintroduces eliminated pivots.

    Parameters
    ----------
    context: ScalarContext
        A field mode
    '''

    def __init__(self, context):
        if not context.is_field:
            raise ModeMismatchError('echelon bases need a field mode (ratfunc or modp)')
        self.context = context
        self._rows = {}

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, vector):
        vec = {c: v for c, v in vector.items() if v}
        for col in [c for c in vec if c in self._rows]:
            coeff = vec.get(col)
            if not coeff:
                continue
            for c, v in self._rows[col].items():
                if c in vec:
                    value = vec[c] - coeff * v
                    if value:
                        vec[c] = value
                    else:
                        del vec[c]
                else:
                    vec[c] = -(coeff * v)
        return vec

    def contains(self, vector):
        return not self.reduce(vector)

    def add(self, vector):
        '''
        Insert a vector; returns True when it was independent of the current span
        '''
        vec = self.reduce(vector)
        if not vec:
            return False
        pivot = min(vec)
        inverse = self.context.one / vec[pivot]
        row = {c: v * inverse for c, v in vec.items()}
        for other in self._rows.values():
            coeff = other.get(pivot)
            if coeff:
                for c, v in row.items():
                    value = other.get(c, self.context.zero) - coeff * v
                    if value:
                        other[c] = value
                    else:
                        other.pop(c, None)
        self._rows[pivot] = row
        return True


def span_rank(vectors, context):
    '''
    Rank of a family of {col: value} vectors
    '''
    basis = EchelonBasis(context)
    for vector in vectors:
        basis.add(vector)
    return basis.rank


def run_with_mode(compute, mode, dim, seed, m, n, prime=None):
    '''
    Resolve the user-facing mode for a problem of dimension dim and run compute(context)

    Exact runs use the rational-function field; prime-field runs sample (p, c) from the
    seed and retry on degenerate evaluations.

    Parameters
    ----------
    compute: callable
        Takes a ScalarContext
    mode: str
        'exact', 'modp' or 'auto'
    dim: int
        Size used by 'auto'
    seed: int
        Seed for the prime-field sampling
    m, n: int
        Rank and degree, bounding the multiplicative order of the evaluation point
    prime: int or None (default None)
        Fixed prime for prime-field runs
    '''
    if resolve_mode(mode, dim) == MODE_EXACT:
        return compute(ScalarContext.ratfunc())
    return with_evaluation_retry(compute, seed, m, n, prime)
