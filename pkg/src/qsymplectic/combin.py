'''
Index combinatorics: partitions, multi-indices over {1, ..., 2m}, permutations under the
right action (a)(st) = ((a)s)t, coset representatives and symplectic tableaux.
'''

from itertools import product, combinations, permutations
from math import factorial, prod
import logging

from .QSPException import QSPGuardError
from .utils import require

logger = logging.getLogger(__name__)

INCOMPARABLE = 'incomparable'


class Partition:
    '''
    A weakly decreasing sequence of positive integers

    >>> Partition([3, 1, 1]).transpose()
    Partition([3,1,1])
    '''

    __slots__ = ('parts',)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise QSPGuardError(f'not a partition: {list(parts)}')
        self.parts = parts

    @classmethod
    def parse(cls, text):
        '''
        Read the text form "[3,1,1]"
        '''
        body = text.strip().strip('[]()').strip()
        return cls([int(p) for p in body.split(',') if p.strip()] if body else [])

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def transpose(self):
        if not self.parts:
            return Partition()
        return Partition([sum(1 for p in self.parts if p > c) for c in range(self.parts[0])])

    def cells(self):
        '''
        (row, col) pairs, 1-based, in column-major order
        '''
        return [(r + 1, c + 1) for c, height in enumerate(self.transpose()) for r in range(height)]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __str__(self):
        return '[' + ','.join(str(p) for p in self.parts) + ']'

    def __repr__(self):
        return f'Partition({self})'


class MultiIndex:
    '''
    An element of I(2m, n): a length-n sequence over {1, ..., 2m}

    Entries above m print with a prime, i' = 2m + 1 - i.

    Parameters
    ----------
    entries: sequence of int
        Values in 1..2m
    m: int
        The rank
    '''

    __slots__ = ('entries', 'm')

    def __init__(self, entries, m):
        entries = tuple(int(e) for e in entries)
        if m < 1 or any(e < 1 or e > 2 * m for e in entries):
            raise QSPGuardError(f'multi-index {list(entries)} out of range for m={m}')
        self.entries = entries
        self.m = m

    @classmethod
    def parse(cls, text, m):
        '''
        Read "1 2 1'"
        '''
        entries = []
        for token in text.split():
            if token.endswith("'"):
                entries.append(prime_of(int(token[:-1]), m))
            else:
                entries.append(int(token))
        return cls(entries, m)

    @property
    def n(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __add__(self, other):
        if self.m != other.m:
            raise QSPGuardError('cannot concatenate multi-indices of different rank')
        return MultiIndex(self.entries + other.entries, self.m)

    def reversed(self):
        return MultiIndex(self.entries[::-1], self.m)

    def place_permute(self, w):
        '''
        The place permutation i.w with (i.w)_k = i_{(k)w^-1}
        '''
        require(w.n == self.n, f'permutation of degree {w.n} on a multi-index of length {self.n}')
        out = [0] * self.n
        for k, image in enumerate(w.images):
            out[image - 1] = self.entries[k]
        return MultiIndex(out, self.m)

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and (self.entries, self.m) == (other.entries, other.m)

    def __hash__(self):
        return hash((self.entries, self.m))

    def __lt__(self, other):
        return self.entries < other.entries

    def __str__(self):
        return ' '.join(entry_text(e, self.m) for e in self.entries)

    def __repr__(self):
        return f'MultiIndex({self})'


def prime_of(i, m):
    '''
    i' = 2m + 1 - i
    '''
    return 2 * m + 1 - i


def entry_text(e, m):
    return str(e) if e <= m else f"{prime_of(e, m)}'"


def all_multiindices(m, n):
    '''
    I(2m, n) in lexicographic order
    '''
    return [MultiIndex(entries, m) for entries in product(range(1, 2 * m + 1), repeat=n)]


class Permutation:
    '''
    A permutation of {1, ..., n} stored by its images (1)w, ..., (n)w

    Products follow the right action, so the images of s*t are ((a)s)t.

    >>> Permutation.from_word([2, 1], 3).images
    (2, 3, 1)
    '''

    __slots__ = ('images',)

    def __init__(self, images):
        images = tuple(int(a) for a in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise QSPGuardError(f'not a permutation: {list(images)}')
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n):
        return cls(range(n, 0, -1))

    @classmethod
    def simple(cls, j, n):
        require(1 <= j < n, f's_{j} is not a simple reflection of S_{n}')
        images = list(range(1, n + 1))
        images[j - 1], images[j] = images[j], images[j - 1]
        return cls(images)

    @classmethod
    def from_word(cls, word, n):
        '''
        The product s_{j1} s_{j2} ... built left to right
        '''
        images = list(range(1, n + 1))
        for j in word:
            require(1 <= j < n, f's_{j} is not a simple reflection of S_{n}')
            images = [j + 1 if a == j else j if a == j + 1 else a for a in images]
        return cls(images)

    @property
    def n(self):
        return len(self.images)

    def __call__(self, a):
        return self.images[a - 1]

    def __mul__(self, other):
        require(self.n == other.n, 'permutations of different degree')
        return Permutation(other.images[a - 1] for a in self.images)

    def inverse(self):
        out = [0] * self.n
        for a, image in enumerate(self.images, start=1):
            out[image - 1] = a
        return Permutation(out)

    def length(self):
        '''
        Number of inversions
        '''
        return sum(1 for a, b in combinations(self.images, 2) if a > b)

    def reduced_word(self):
        '''
        Lexicographically smallest reduced word, by repeated smallest-descent extraction
        '''
        images = list(self.images)
        word = []
        while True:
            descent = next((j for j in range(len(images) - 1) if images[j] > images[j + 1]), None)
            if descent is None:
                return word
            word.append(descent + 1)
            images[descent], images[descent + 1] = images[descent + 1], images[descent]

    def is_identity(self):
        return self.images == tuple(range(1, self.n + 1))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f'Permutation{self.images}'


def word_text(word):
    return '[' + ','.join(f's{j}' for j in word) + ']'


def symmetric_group(n, letters=None):
    '''
    All permutations of {1..n} in lexicographic order of images; `letters` restricts
    the moved points to a block {a, ..., b}
    '''
    if letters is None:
        return [Permutation(p) for p in permutations(range(1, n + 1))]
    letters = list(letters)
    out = []
    for arrangement in permutations(letters):
        images = list(range(1, n + 1))
        for a, b in zip(letters, arrangement):
            images[a - 1] = b
        out.append(Permutation(images))
    return out


def column_group(partition):
    '''
    The column stabilizer S_{lambda^t} acting on column-major positions
    '''
    blocks = []
    start = 1
    for height in partition.transpose():
        blocks.append(list(range(start, start + height)))
        start += height
    n = partition.size
    out = []
    for pieces in product(*[symmetric_group(n, block) for block in blocks]):
        w = Permutation.identity(n)
        for piece in pieces:
            w = w * piece
        out.append(w)
    return out


class Weight:
    '''
    Integer weight in the epsilon basis of the sp_{2m} weight lattice
    '''

    __slots__ = ('coords',)

    def __init__(self, coords):
        self.coords = tuple(int(c) for c in coords)

    @classmethod
    def zero(cls, m):
        return cls([0] * m)

    @classmethod
    def simple_root(cls, i, m):
        '''
        alpha_i = eps_i - eps_{i+1} for i < m, alpha_m = 2 eps_m
        '''
        coords = [0] * m
        if i < m:
            coords[i - 1], coords[i] = 1, -1
        else:
            coords[m - 1] = 2
        return cls(coords)

    @property
    def m(self):
        return len(self.coords)

    def coroot_pairing(self, i):
        '''
        <lambda, alpha_i^vee>
        '''
        if i < self.m:
            return self.coords[i - 1] - self.coords[i]
        return self.coords[self.m - 1]

    def __add__(self, other):
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __str__(self):
        return '(' + ','.join(str(c) for c in self.coords) + ')'

    def __repr__(self):
        return f'Weight{self}'


def partitions_bounded(k, m):
    '''
    Partitions of k into at most m parts, reverse-lexicographic

    Parameters
    ----------
    k: int
        The size
    m: int
        Maximal number of parts

    >>> [str(p) for p in partitions_bounded(3, 2)]
    ['[3]', '[2,1]']
    '''
    require(k >= 0 and m >= 0, f'partitions_bounded needs k, m >= 0, got ({k}, {m})')

    def build(remaining, largest, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in build(remaining - part, part, slots - 1):
                yield (part,) + rest

    return [Partition(parts) for parts in build(k, k, m)]


def lambda_n(m, n):
    '''
    The index set of pairs (lambda, l) with 0 <= l <= n/2 and lambda in Lambda^+(m, n - 2l)
    '''
    require(m >= 1 and n >= 0, f'lambda_n needs m >= 1 and n >= 0, got ({m}, {n})')
    return [(lam, l) for l in range(n // 2 + 1) for lam in partitions_bounded(n - 2 * l, m)]


def all_pairings(items):
    '''
    Every perfect matching of items, each pair ordered by position
    '''
    items = list(items)
    if not items:
        yield []
        return
    first = items.pop(0)
    for k, partner in enumerate(items):
        for rest in all_pairings(items[:k] + items[k + 1:]):
            yield [(first, partner)] + rest


def coset_reps_D_nu(f, n):
    '''
    The distinguished representatives of nu_f = ((2^f), (n - 2f)), sorted by images

    Their images read (a1, b1, ..., af, bf, c1 < c2 < ...) with a_k < b_k and
    a1 < a2 < ... < af.
    '''
    require(f >= 0 and 2 * f <= n, f'need 0 <= 2f <= n, got f={f}, n={n}')
    reps = []
    for support in combinations(range(1, n + 1), 2 * f):
        rest = [a for a in range(1, n + 1) if a not in support]
        for pairing in all_pairings(support):
            reps.append(Permutation([a for pair in pairing for a in pair] + rest))
    return sorted(reps)


def coset_reps_D_f(f):
    '''
    D_f = D_{nu_f} intersected with S_{2f}, as permutations of {1..2f}
    '''
    return coset_reps_D_nu(f, 2 * f)


def pairing_subsets(f, n):
    '''
    P_f: strictly increasing 2f-subsets of {1..n}
    '''
    require(f >= 0 and 2 * f <= n, f'need 0 <= 2f <= n, got f={f}, n={n}')
    return list(combinations(range(1, n + 1), 2 * f))


def d_J_word(J, n):
    '''
    The explicit reduced word (s_{2f} ... s_{i_{2f}-1}) ... (s_1 ... s_{i_1-1})
    '''
    J = tuple(J)
    if len(J) % 2 or any(a >= b for a, b in zip(J, J[1:])) or (J and (J[0] < 1 or J[-1] > n)):
        raise QSPGuardError(f'J must be an increasing subset of even size in 1..{n}, got {list(J)}')
    word = []
    for t in range(len(J), 0, -1):
        word.extend(range(t, J[t - 1]))
    return word


def d_J(J, n):
    '''
    The distinguished representative with images J followed by the complement

    >>> d_J((2, 3), 3).images
    (2, 3, 1)
    '''
    return Permutation.from_word(d_J_word(J, n), n)


def coset_factorization(d, f):
    '''
    Split d in D_{nu_f} as d1 * d_J with d1 in D_f (extended to n points) and J in P_f
    '''
    n = d.n
    J = tuple(sorted(d.images[:2 * f]))
    d1 = Permutation([J.index(a) + 1 for a in d.images[:2 * f]] + list(range(2 * f + 1, n + 1)))
    return d1, J


def coset_word(d, f):
    '''
    Reduced word of d in D_{nu_f}: the word of d1 followed by the explicit word of d_J
    '''
    d1, J = coset_factorization(d, f)
    return d1.reduced_word() + d_J_word(J, d.n)


def d_0_word(f):
    '''
    Reduced word of d_0: groups (s_{2f-2g} ... s_{2f-1}) for g = 1..f-1
    '''
    require(f >= 0, f'f must be non-negative, got {f}')
    word = []
    for g in range(1, f):
        word.extend(range(2 * f - 2 * g, 2 * f))
    return word


def d_0(f):
    '''
    The permutation with (a)d_0 = (a+1)/2 for odd a and 2f + 1 - a/2 for even a
    '''
    return Permutation([(a + 1) // 2 if a % 2 else 2 * f + 1 - a // 2 for a in range(1, 2 * f + 1)])


def rank_identity_terms(n):
    '''
    (f, |D_{nu_f}|, (n - 2f)!) for f = 0..n/2
    '''
    return [(f, len(coset_reps_D_nu(f, n)), factorial(n - 2 * f)) for f in range(n // 2 + 1)]


def _mys_key(e, m):
    # m < m' < m-1 < (m-1)' < ... < 1 < 1'
    if e <= m:
        return 2 * (m - e)
    return 2 * (m - prime_of(e, m)) + 1


def _row_limit(e, m):
    # i and i' may only sit in the first m - i + 1 rows
    base = e if e <= m else prime_of(e, m)
    return m - base + 1


def _fillings(partition, m, allowed, weak_row, strict_column):
    cells = partition.cells()
    position = {cell: k for k, cell in enumerate(cells)}
    filling = [0] * len(cells)
    out = []

    def fill(k):
        if k == len(cells):
            out.append(MultiIndex(filling, m))
            return
        r, c = cells[k]
        for e in range(1, 2 * m + 1):
            if not allowed(e, r):
                continue
            if c > 1 and not weak_row(filling[position[(r, c - 1)]], e):
                continue
            if r > 1 and not strict_column(filling[position[(r - 1, c)]], e):
                continue
            filling[k] = e
            fill(k + 1)
        filling[k] = 0

    fill(0)
    return out


def mys_tableaux(partition, m):
    '''
    I_lambda^{mys}: rows weakly increasing and columns strictly increasing under
    m < m' < (m-1) < (m-1)' < ... < 1 < 1', with i and i' limited to the first m - i + 1 rows.
    Fillings are read column by column.

    Parameters
    ----------
    partition: Partition
        The shape
    m: int
        The rank

    >>> len(mys_tableaux(Partition([1, 1]), 2))
    5
    '''
    return _fillings(
        partition, m,
        allowed=lambda e, r: r <= _row_limit(e, m),
        weak_row=lambda left, e: _mys_key(left, m) <= _mys_key(e, m),
        strict_column=lambda up, e: _mys_key(up, m) < _mys_key(e, m),
    )


def column_strict_tableaux(partition, m):
    '''
    I_lambda^<: columns strictly increasing in the usual order, rows unconstrained
    '''
    return _fillings(
        partition, m,
        allowed=lambda e, r: True,
        weak_row=lambda left, e: True,
        strict_column=lambda up, e: up < e,
    )


def i_lambda(partition, m):
    '''
    Row j filled with j, read column by column
    '''
    require(len(partition) <= m, f'{partition} has more than {m} rows')
    return MultiIndex([r for r, _ in partition.cells()], m)


def hat_i_lambda(partition, m):
    '''
    i_lambda with every column reversed
    '''
    require(len(partition) <= m, f'{partition} has more than {m} rows')
    entries = []
    for height in partition.transpose():
        entries.extend(range(height, 0, -1))
    return MultiIndex(entries, m)


def c_vector(m, f):
    '''
    ((m-f+1)', ..., m', m, ..., m-f+1), of symplectic length f
    '''
    require(0 <= f <= m, f'c_vector needs 0 <= f <= m, got f={f}, m={m}')
    primed = [prime_of(i, m) for i in range(m - f + 1, m + 1)]
    plain = list(range(m, m - f, -1))
    return MultiIndex(primed + plain, m)


def symplectic_length(index):
    '''
    Maximal number of disjoint position pairs (s, t) with i_s = (i_t)'

    Any two complementary entries can be paired, so this is the sum over a of
    min(#a, #a').
    '''
    m = index.m
    counts = [index.entries.count(e) for e in range(1, 2 * m + 1)]
    return sum(min(counts[a - 1], counts[prime_of(a, m) - 1]) for a in range(1, m + 1))


def wt(index):
    '''
    mu_s = #{j : i_j = s} - #{j : i_j = s'}
    '''
    m = index.m
    return Weight(index.entries.count(s) - index.entries.count(prime_of(s, m)) for s in range(1, m + 1))


def bwt(index):
    '''
    GL_{2m} weight: occurrence counts of 1, ..., 2m
    '''
    return tuple(index.entries.count(e) for e in range(1, 2 * index.m + 1))


def is_pair_free(index):
    return symplectic_length(index) == 0


def std_count(partition):
    '''
    Number of standard tableaux, by the hook length formula
    '''
    conj = partition.transpose()
    hooks = prod(partition[r] - c + conj[c] - r - 1 for r in range(len(partition)) for c in range(partition[r]))
    return factorial(partition.size) // hooks


def weyl_dim_sp(partition, m):
    '''
    Dimension of the irreducible sp_{2m} module of highest weight lambda

    Parameters
    ----------
    partition: Partition
        At most m parts
    m: int
        The rank
    '''
    require(len(partition) <= m, f'{partition} has more than {m} rows')
    parts = list(partition) + [0] * (m - len(partition))
    ell = [parts[i] + m - i for i in range(m)]
    ell0 = [m - i for i in range(m)]
    numer, denom = 1, 1
    for i in range(m):
        numer *= ell[i]
        denom *= ell0[i]
        for j in range(i + 1, m):
            numer *= ell[i] ** 2 - ell[j] ** 2
            denom *= ell0[i] ** 2 - ell0[j] ** 2
    return numer // denom


def order_prec(lam, mu):
    '''
    True when lam precedes mu, False when it does not, INCOMPARABLE otherwise

    Equal sizes compare the transposes lexicographically; for unequal sizes lam precedes
    mu exactly when |lam| - |mu| is a positive even number, and odd differences are
    incomparable.
    '''
    gap = lam.size - mu.size
    if gap == 0:
        return lam.transpose().parts < mu.transpose().parts
    if gap % 2:
        return INCOMPARABLE
    return gap > 0
