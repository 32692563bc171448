class QSPException(Exception):
    '''
    Exception specific to the quantum symplectic verifier
    '''
    pass


class QSPGuardError(QSPException):
    '''
    A usage or size guard was violated (bad rank or degree, matrix too large
    for the selected mode, malformed label)
    '''
    pass


class ModeMismatchError(QSPGuardError):
    '''
    Operands of a matrix or linear-algebra operation live in different scalar modes
    '''
    pass


class IntegralityError(QSPException):
    '''
    A division that has to be exact over Z[q, q^-1] left a remainder
    '''

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BadEvaluationError(QSPException):
    '''
    Every sampled prime-field evaluation of q degenerated

    Parameters
    ----------
    message: str
        Description of the failure
    tried: list of tuple
        The (prime, evaluation) pairs that were discarded
    '''

    def __init__(self, message, tried=None):
        super().__init__(message)
        self.tried = list(tried or [])
