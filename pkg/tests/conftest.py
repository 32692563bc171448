import random

import pytest

from qsymplectic.scalars import LaurentPoly, ScalarContext, sample_evaluation


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: desk-scale instances that take minutes')


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def laurent():
    return ScalarContext.laurent()


@pytest.fixture
def ratfunc():
    return ScalarContext.ratfunc()


@pytest.fixture
def modp():
    return ScalarContext.modp(*sample_evaluation(0, 2, 3))


@pytest.fixture
def random_laurent(rng):
    def build(terms=4, spread=5):
        return LaurentPoly({rng.randint(-spread, spread): rng.randint(-9, 9) for _ in range(terms)})
    return build
