'''
Rank-changing maps between V (rank m) and V~ (rank m0 > m) and the check that the
compression Theta_0 intertwines the two BMW representations.
'''

import logging

from .scalars import SparseMatrix, ScalarContext, q_power, run_with_mode
from .bmw import enyang_indices, enyang_word, represent, label_text
from .tensorspace import TensorSpace
from .centralizer import commutant, psi_generators
from .reports import VerificationReport
from .utils import require

logger = logging.getLogger(__name__)

LAURENT = ScalarContext.laurent()


def _check_ranks(m, m0):
    require(1 <= m < m0, f'truncation needs 1 <= m < m0, got m={m}, m0={m0}')


def iota(m, m0, context=LAURENT):
    '''
    The 2m0 x 2m injection v_i -> v_{i + m0 - m}
    '''
    _check_ranks(m, m0)
    one = context.one
    return SparseMatrix((2 * m0, 2 * m), {c + m0 - m: {c: one} for c in range(2 * m)}, context)


def pi(m, m0, context=LAURENT):
    '''
    The 2m x 2m0 surjection, left inverse of iota
    '''
    return iota(m, m0, context).transpose()


def iota_scaled(m, m0, context=LAURENT):
    return iota(m, m0, context).scale(q_power(m))


def pi_scaled(m, m0, context=LAURENT):
    return pi(m, m0, context).scale(q_power(m0))


def _power(matrix, n):
    result = matrix
    for _ in range(n - 1):
        result = result.kron(matrix)
    return result


def theta_scale(m, m0, n):
    '''
    q^{(m + m0) n}
    '''
    return q_power((m + m0) * n)


def theta0(F, m, m0, n):
    '''
    Theta_0(F) = pi~^{(x)n} F iota~^{(x)n}

    Parameters
    ----------
    F: SparseMatrix
        Operator on V~^{(x)n}, in any scalar mode
    m, m0: int
        Small and large rank
    n: int
        Degree
    '''
    _check_ranks(m, m0)
    require(n >= 1, f'degree must be at least 1, got {n}')
    require(F.shape == ((2 * m0) ** n,) * 2, f'operator of shape {F.shape} is not on the rank-{m0} space')
    context = F.context
    return _power(pi_scaled(m, m0, context), n).matmul(F).matmul(_power(iota_scaled(m, m0, context), n))


def theta1_on_basis(idx, m, m0, n):
    '''
    Theta_1 on an Enyang label: (q^{(m0 + m) n}, the same label)
    '''
    _check_ranks(m, m0)
    require(idx.n == n, f'label on {idx.n} strands used at n={n}')
    return theta_scale(m, m0, n), idx


def diagram_check(m, m0, n, mode='auto', seed=0, prime=None):
    '''
    Theta_0 of the rank-m0 image of every Enyang basis element equals the Theta_1 scale times
    its rank-m image, together with the scale of Theta_0(id)

    Parameters
    ----------
    m, m0: int
        Small and large rank, m < m0
    n: int
        Strands
    mode: str (default 'auto')
        'exact', 'modp' or 'auto'; the large space decides 'auto'
    seed: int (default 0)
        Prime-field sampling seed
    prime: int or None (default None)
        Fixed prime
    '''
    _check_ranks(m, m0)
    report = VerificationReport('truncation', {'m': m, 'm0': m0, 'n': n})
    labels = enyang_indices(n)

    def compute(context):
        report.set_context(context)
        big = TensorSpace(m0, n, context)
        small = TensorSpace(m, n, context)
        scaled = small.identity().scale(theta_scale(m, m0, n))
        report.add_flag('identity_scale', theta0(big.identity(), m, m0, n) == scaled)
        witness = None
        for idx in labels:
            word = enyang_word(idx)
            scale, same = theta1_on_basis(idx, m, m0, n)
            lhs = theta0(represent(word, m0, n, big), m, m0, n)
            rhs = represent(enyang_word(same), m, n, small).scale(scale)
            difference = lhs.first_difference(rhs)
            if difference is not None:
                row, col, mine, theirs = difference
                witness = {'label': label_text(idx), 'row': row, 'col': col, 'lhs': str(mine), 'rhs': str(theirs)}
                break
        report.add_flag('diagram_commutes', witness is None, witness)
        report.extra.update({'labels': len(labels), 'hypothesis_m0_ge_n': m0 >= n})
        return report

    with report.timer():
        run_with_mode(compute, mode, (2 * m0) ** n, seed, m0, n, prime)
    return report


def commutant_invariance_check(m, m0, n):
    '''
    Theta_0 sends the commutant of the rank-m0 quantum group generators to operators
    commuting with the rank-m generators
    '''
    _check_ranks(m, m0)
    context = ScalarContext.ratfunc()
    report = VerificationReport('truncation_commutant', {'m': m, 'm0': m0, 'n': n}, context)
    with report.timer():
        big = commutant(psi_generators(m0, n, context), context, (2 * m0) ** n)
        small_gens = psi_generators(m, n, context)
        witness = None
        for k, F in enumerate(big.basis):
            image = theta0(F, m, m0, n)
            for g, gen in enumerate(small_gens):
                if not image.commutator(gen).is_zero():
                    witness = {'commutant_element': k, 'generator': g}
                    break
            if witness:
                break
        report.add_flag('commutes', witness is None, witness)
        report.extra['commutant_dimension'] = big.dim
        logger.info('truncation commutant (%d, %d, %d): %d elements checked', m, m0, n, big.dim)
    return report
