import numpy as np
import pytest

from fluxlab.maps import make_ham_flow, make_twist, compose_words


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def twist_word():
    return make_twist(1, (1.0,))


@pytest.fixture(scope="session")
def ham_word():
    q = ((0.3, 0.1, 0.2), (0.2, 0.4, 0.0), (-0.3, 0.0, 0.0))
    return make_ham_flow(1, q, 0.3)


@pytest.fixture(scope="session")
def rel_ham_word():
    q = ((0.5, 0.0, 0.3), (0.1, -0.2, 0.0), (0.4, 0.0, 0.0))
    return make_ham_flow(2, q, 0.3)


@pytest.fixture(scope="session")
def mixed_word(twist_word, ham_word):
    return compose_words(twist_word, ham_word)
