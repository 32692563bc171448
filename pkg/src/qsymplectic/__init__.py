"""
Exact verification of type C Schur-Weyl duality at desk scale.

This package is based around the 'QSPVerifier' class, which runs the checks relating the
BMW algebra B_n(-q^{2m+1}, q), the quantum group U_q(sp_2m) acting on V^{(x)n}, and the
symplectic q-Schur and coordinate algebras, by exact linear algebra over Z[q, q^-1] and Q(q).
"""

__version__ = '0.1.0'

from .QSPException import QSPException
from .QSPVerifier import QSPVerifier

__all__ = ['QSPVerifier', 'QSPException']
