"""Seeded random economy corpora.

Everything is drawn rational so the certification path stays exact: the
sigma weights are the primitives (beta = sigma^gamma is implied), since
drawing beta directly would make sigma irrational for almost every
curvature and forfeit exactness.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .model import Economy
from .reduction import RationalExponent

__all__ = [
    "random_rational", "random_ordered_exponent",
    "random_gamma_range_economy", "random_two_type_ordered_economy",
    "random_economy", "with_intercept",
]


def random_rational(rng: random.Random, lo, hi, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    lo_n = math.ceil(lo * den)
    hi_n = math.floor(hi * den)
    if hi_n < lo_n:
        hi_n = lo_n
    return Fraction(rng.randint(lo_n, hi_n), den)


def random_ordered_exponent(rng: random.Random, c: int,
                            max_n: int = 14) -> RationalExponent:
    """Exponent m/n in [(c-1)/c, 1), so gamma = n/m lies in (1, c/(c-1)]."""
    n = rng.randint(c, max(max_n, c))
    m_lo = -((-(c - 1) * n) // c)        # ceil((c-1) n / c)
    m = rng.randint(m_lo, n - 1)
    return RationalExponent(m, n)


def _endowment(rng: random.Random, allow_zero: bool) -> Fraction:
    if allow_zero and rng.random() < 0.08:
        return Fraction(0)
    return random_rational(rng, Fraction(1, 8), 4)


def random_economy(rng: random.Random, c: int, gamma,
                   with_intercept: bool = True) -> Economy:
    """Economy with rational sigma/endowments at the given curvature."""
    a = random_rational(rng, Fraction(1, 2), 3)
    b = random_rational(rng, Fraction(1, 8), 2) if (
        with_intercept and rng.random() < 0.5) else Fraction(0)
    types = []
    for _ in range(c):
        sigma = random_rational(rng, Fraction(1, 4), 4)
        e = _endowment(rng, allow_zero=True)
        f = _endowment(rng, allow_zero=e > 0)
        types.append((e, f, sigma))
    if all(t[0] == 0 for t in types):
        types[0] = (Fraction(1), types[0][1], types[0][2])
    if all(t[1] == 0 for t in types):
        types[0] = (types[0][0], Fraction(1), types[0][2])
    return Economy.from_sigmas(a, b, gamma, types)


def random_gamma_range_economy(rng: random.Random, c: int):
    """(economy, exponent) with gamma inside the uniqueness range."""
    eps = random_ordered_exponent(rng, c)
    gamma = Fraction(eps.n, eps.m)
    return random_economy(rng, c, gamma), eps


def random_two_type_ordered_economy(rng: random.Random,
                                    b=Fraction(0)) -> Economy:
    """c = 2, gamma = 3 economy satisfying the ordering hypotheses
    beta1 < beta2, e1 <= e2, f1 >= f2, with the given intercept."""
    s1 = random_rational(rng, Fraction(1, 4), 2)
    s2 = s1 + random_rational(rng, Fraction(1, 8), 2)
    e1 = random_rational(rng, Fraction(1, 8), 2)
    e2 = e1 + random_rational(rng, 0, 2)
    f2 = random_rational(rng, Fraction(1, 8), 2)
    f1 = f2 + random_rational(rng, 0, 2)
    a = random_rational(rng, Fraction(1, 2), 3)
    return Economy.from_sigmas(a, b, 3, [(e1, f1, s1), (e2, f2, s2)])


def with_intercept(econ: Economy, b) -> Economy:
    """Same economy, different risk-tolerance intercept."""
    return Economy.from_sigmas(
        econ.hara.a, b, econ.hara.gamma,
        [(t.e, t.f, t.sigma) for t in econ.types])
