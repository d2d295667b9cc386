import random
from fractions import Fraction

import pytest

from haraeq import CrraSymmetricSpec
from haraeq.sampling import random_gamma_range_economy


@pytest.fixture(scope="session")
def toda_walsh():
    """The classic three-equilibrium CRRA example: alpha=1/7, e=1/49,
    gamma=3, symmetric endowments."""
    return CrraSymmetricSpec(Fraction(1, 7), Fraction(1, 49)).to_economy()


@pytest.fixture(scope="session")
def uniqueness_range_corpus():
    """1000 seeded random rational economies per c in {2..6} with gamma
    inside (1, c/(c-1)]; shared between the certification suite and the
    Descartes bound checks."""
    rng = random.Random(20240817)
    corpus = {}
    for c in range(2, 7):
        corpus[c] = [random_gamma_range_economy(rng, c) for _ in range(1000)]
    return corpus
