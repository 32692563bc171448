'''
Subalgebra spans and commutants of operator families, and the double centralizer
reports comparing the quantum group image with the BMW image.
'''

from math import factorial
import logging

from .constants import EXACT_DIM_LIMIT, MODP_DIM_LIMIT, AUTO_EXACT_DIM, MODE_RATFUNC
from .QSPException import QSPGuardError, ModeMismatchError
from .scalars import SparseMatrix, ScalarContext, EchelonBasis, nullspace, span_rank, run_with_mode
from .combin import lambda_n, mys_tableaux, partitions_bounded, coset_reps_D_nu, weyl_dim_sp, std_count
from .tensorspace import TensorSpace
from .qaction import all_generators, tensor_generator
from .reports import VerificationReport
from .utils import require, double_factorial, ordered_map

logger = logging.getLogger(__name__)


class AlgebraSpan:
    '''
    A linearly independent family of square matrices over a field mode

    Parameters
    ----------
    basis: list of SparseMatrix
        Independent matrices of one shape
    context: ScalarContext
        Their scalar mode
    dim: int
        Side length of the matrices
    '''

    def __init__(self, basis, context, dim):
        self.basis = list(basis)
        self.context = context
        self.size = dim
        self._echelon = None

    @property
    def dim(self):
        return len(self.basis)

    def echelon(self):
        if self._echelon is None:
            self._echelon = EchelonBasis(self.context)
            for matrix in self.basis:
                self._echelon.add(matrix.vectorize())
        return self._echelon

    def contains(self, matrix):
        return self.echelon().contains(matrix.vectorize())

    def contains_span(self, other):
        '''
        Containment by one combined row reduction: rank(self + other) == dim(self)
        '''
        combined = [m.vectorize() for m in self.basis] + [m.vectorize() for m in other.basis]
        return span_rank(combined, self.context) == self.dim

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __repr__(self):
        return f'AlgebraSpan(dim={self.dim}, size={self.size}, {self.context})'


def _field_context(generators, context):
    if generators:
        context = context or generators[0].context
        if any(g.context != context for g in generators):
            raise ModeMismatchError('generators live in different scalar modes')
    if context is None:
        raise QSPGuardError('an empty generator list needs an explicit context')
    if not context.is_field:
        raise ModeMismatchError('spans and commutants need a field mode (ratfunc or modp)')
    return context


def algebra_closure(generators, context=None, dim=None, threads=None):
    '''
    Basis of the unital algebra generated by the given matrices

    Starting from the identity, every new basis element is multiplied on the right by
    every generator and kept when it is independent of the span so far.

    Parameters
    ----------
    generators: list of SparseMatrix
        Square matrices of one shape over a field mode
    context: ScalarContext or None (default None)
        Required when generators is empty
    dim: int or None (default None)
        Side length; required when generators is empty
    threads: int or None (default None)
        Workers for the products of one round
    '''
    context = _field_context(generators, context)
    dim = generators[0].shape[0] if generators else dim
    require(dim is not None, 'an empty generator list needs an explicit dimension')
    echelon = EchelonBasis(context)
    ident = SparseMatrix.identity(dim, context)
    echelon.add(ident.vectorize())
    basis = [ident]
    frontier = [ident]
    rounds = 0
    while frontier:
        rounds += 1
        products = ordered_map(lambda pair: pair[0].matmul(pair[1]),
                               [(x, g) for x in frontier for g in generators], threads)
        frontier = []
        for product in products:
            if echelon.add(product.vectorize()):
                basis.append(product)
                frontier.append(product)
        logger.debug('closure round %d: span dimension %d', rounds, len(basis))
    return AlgebraSpan(basis, context, dim)


def commutant(generators, context=None, dim=None):
    '''
    Basis of {X : XG = GX for every generator G}

    Unknowns X_ij with i, j separated by a diagonal generator are zero and are dropped
    before the homogeneous system is solved.

    Parameters
    ----------
    generators: list of SparseMatrix
        Square matrices over a field mode
    context: ScalarContext or None (default None)
        Required when generators is empty
    dim: int or None (default None)
        Side length; required when generators is empty
    '''
    context = _field_context(generators, context)
    dim = generators[0].shape[0] if generators else dim
    require(dim is not None, 'an empty generator list needs an explicit dimension')
    limit = EXACT_DIM_LIMIT if context.mode == MODE_RATFUNC else MODP_DIM_LIMIT
    if dim > limit:
        raise QSPGuardError(f'commutant of {dim}x{dim} matrices refused in {context.mode} mode (limit {limit})')

    # Diagonal generators split the basis into classes with equal eigenvalue signatures
    is_diagonal = [all(set(row) <= {i} for i, row in g.rows.items()) for g in generators]
    diagonals = [g for g, flag in zip(generators, is_diagonal) if flag]
    signature = {i: tuple(g[i, i] for g in diagonals) for i in range(dim)}
    classes = {}
    for i in range(dim):
        classes.setdefault(signature[i], []).append(i)
    unknowns = [(i, j) for members in classes.values() for i in members for j in members]
    unknowns.sort()
    column = {pair: k for k, pair in enumerate(unknowns)}
    others = [g for g, flag in zip(generators, is_diagonal) if not flag]
    logger.debug('commutant: %d unknowns, %d non-diagonal generators', len(unknowns), len(others))

    equations = []
    for g in others:
        gt = g.transpose()
        for i in range(dim):
            for j in range(dim):
                row = {}
                # (XG)_ij = sum_k X_ik G_kj
                for k, value in gt.rows.get(j, {}).items():
                    key = column.get((i, k))
                    if key is not None:
                        row[key] = row.get(key, context.zero) + value
                # (GX)_ij = sum_k G_ik X_kj
                for k, value in g.rows.get(i, {}).items():
                    key = column.get((k, j))
                    if key is not None:
                        row[key] = row.get(key, context.zero) - value
                row = {k: v for k, v in row.items() if v}
                if row:
                    equations.append(row)
    system = SparseMatrix((len(equations), len(unknowns)), dict(enumerate(equations)), context)
    basis = []
    for vector in nullspace(system):
        entries = {}
        for k, value in vector.items():
            i, j = unknowns[k]
            entries.setdefault(i, {})[j] = value
        basis.append(SparseMatrix((dim, dim), entries, context))
    return AlgebraSpan(basis, context, dim)


def psi_generators(m, n, context):
    '''
    e_i, f_i, k_i, k_i^-1 acting on V^{(x)n}
    '''
    return [tensor_generator(g, m, n).convert(context) for g in all_generators(m)]


def phi_generators(m, n, context):
    '''
    beta'_i and gamma'_i
    '''
    return TensorSpace(m, n, context).bmw_generators()


def psi_image(m, n, context, threads=None):
    return algebra_closure(psi_generators(m, n, context), threads=threads)


def phi_image(m, n, context, threads=None):
    return algebra_closure(phi_generators(m, n, context), context, (2 * m) ** n, threads)


def oehms_count(m, n):
    '''
    sum over (lambda, l) in Lambda_n of |I_lambda^{mys}|^2
    '''
    return sum(len(mys_tableaux(lam, m)) ** 2 for lam, _ in lambda_n(m, n))


def duality_report(m, n, mode='auto', seed=0, prime=None, threads=None):
    '''
    Schur-Weyl duality at (m, n) as rank equalities

    Checks that the two actions commute, that each image is the commutant of the other
    side, that the BMW image has dimension (2n-1)!! when m >= n, and that the quantum
    group image has the dimension predicted by the symplectic tableaux.

    Parameters
    ----------
    m, n: int
        Rank and degree
    mode: str (default 'auto')
        'exact', 'modp' or 'auto' (exact up to dimension 16)
    seed: int (default 0)
        Prime-field sampling seed
    prime: int or None (default None)
        Fixed prime
    threads: int or None (default None)
        Workers for closure rounds
    '''
    require(m >= 1 and n >= 1, f'duality needs m, n >= 1, got ({m}, {n})')
    dim = (2 * m) ** n
    report = VerificationReport('duality', {'m': m, 'n': n})

    def compute(context):
        report.set_context(context)
        psi_gens = psi_generators(m, n, context)
        phi_gens = phi_generators(m, n, context)
        witness = None
        for a, x in enumerate(psi_gens):
            for b, y in enumerate(phi_gens):
                if not x.commutator(y).is_zero():
                    witness = {'psi_generator': a, 'phi_generator': b}
                    break
            if witness:
                break
        report.add_flag('actions_commute', witness is None, witness)

        psi = psi_image(m, n, context, threads)
        phi = phi_image(m, n, context, threads)
        comm_phi = commutant(phi_gens, context, dim)
        comm_psi = commutant(psi_gens, context, dim)
        logger.info('duality (%d, %d): psi %d, phi %d, commutants %d / %d',
                    m, n, psi.dim, phi.dim, comm_phi.dim, comm_psi.dim)

        report.add('psi_equals_commutant_of_phi', comm_phi.dim, psi.dim)
        psi_inside = comm_phi.contains_span(psi)
        report.add_flag('psi_inside_commutant_of_phi', psi_inside)
        report.add('phi_equals_commutant_of_psi', comm_psi.dim, phi.dim)
        report.add_flag('phi_inside_commutant_of_psi', comm_psi.contains_span(phi))
        if m >= n:
            report.add('phi_dimension', double_factorial(2 * n - 1), phi.dim)
        else:
            report.skip('phi_dimension', 'faithfulness needs m >= n')
        report.add('psi_dimension', oehms_count(m, n), psi.dim)
        report.add_flag('dimensions_bounded', psi.dim <= dim ** 2 and phi.dim <= dim ** 2)
        if dim <= AUTO_EXACT_DIM:
            # comm(phi) == psi as spans makes comm(comm(phi)) == comm(psi gens)
            if psi_inside and psi.dim == comm_phi.dim:
                report.add('double_commutant', phi.dim, comm_psi.dim)
            else:
                report.skip('double_commutant', 'commutant of phi is not spanned by the quantum group image')
        report.extra.update({'psi_dim': psi.dim, 'phi_dim': phi.dim})
        return report

    with report.timer():
        run_with_mode(compute, mode, dim, seed, m, n, prime)
    return report


def bimodule_dimension_check(m, n):
    '''
    (2m)^n = sum_f sum_{lambda |- n-2f} dim Delta(lambda) * |D_{nu_f}| * #Std(lambda^t)

    Partitions with more than m rows contribute nothing. The report flags whether m >= n.
    '''
    require(m >= 1 and n >= 0, f'bimodule check needs m >= 1, n >= 0, got ({m}, {n})')
    report = VerificationReport('bimodule_dimension', {'m': m, 'n': n})
    with report.timer():
        terms = []
        for f in range(n // 2 + 1):
            cosets = len(coset_reps_D_nu(f, n))
            for lam in partitions_bounded(n - 2 * f, m):
                terms.append({'f': f, 'lambda': str(lam), 'weyl_dim': weyl_dim_sp(lam, m),
                              'cosets': cosets, 'std': std_count(lam.transpose())})
        total = sum(t['weyl_dim'] * t['cosets'] * t['std'] for t in terms)
        report.add('dimension', (2 * m) ** n, total)
        report.extra.update({'hypothesis_m_ge_n': m >= n, 'terms': terms})
    return report


def hecke_image_check(m, n, mode='auto', seed=0, prime=None):
    '''
    The algebra generated by the beta-hat_i has dimension n! when 2m >= n
    '''
    dim = (2 * m) ** n
    report = VerificationReport('hecke_image', {'m': m, 'n': n})

    def compute(context):
        report.set_context(context)
        space = TensorSpace(m, n, context)
        span = algebra_closure([space.beta_hat(i) for i in range(1, n)], context, dim)
        if 2 * m >= n:
            report.add('dimension', factorial(n), span.dim)
        else:
            report.skip('dimension', 'faithfulness needs 2m >= n')
        report.extra['dimension'] = span.dim
        return report

    with report.timer():
        run_with_mode(compute, mode, dim, seed, m, n, prime)
    return report
