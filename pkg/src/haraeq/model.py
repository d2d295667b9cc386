"""Two-good exchange economy with HARA impatience types.

Good y is the numeraire; p is the price of good x, so type i's budget
constraint is p*x + y = p*e_i + f_i.  Felicity is
u(w) = (gamma/(1-gamma)) * (b + (a/gamma) w)^(1-gamma), type i weighs the
second good by beta_i, and every downstream formula consumes
sigma_i = beta_i^(1/gamma) rather than beta_i itself.

All values are immutable after construction; every operation here is a
pure function of its arguments.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (EconomyInvalid, GammaEqualsOne, NegativeDemandWarning,
                     NonPositivePrice)
from .rationals import all_rational, as_fraction, exact_pow, is_rational

__all__ = [
    "HaraParams", "ConsumerType", "Economy",
    "demand", "excess_demand_x", "excess_demand_y", "excess_demand_x_at_root",
]


@dataclass(frozen=True)
class HaraParams:
    """Shared felicity parameters: scale a > 0, intercept b >= 0,
    curvature gamma > 0 with gamma != 1.  epsilon = 1/gamma is derived
    once and stored."""

    a: object
    b: object
    gamma: object
    epsilon: object = field(init=False)

    def __post_init__(self):
        if not self.a > 0:
            raise EconomyInvalid(f"marginal-utility scale a must be positive, got {self.a}")
        if self.b < 0:
            raise EconomyInvalid(f"risk-tolerance intercept b must be nonnegative, got {self.b}")
        if not self.gamma > 0:
            raise EconomyInvalid(f"curvature gamma must be positive, got {self.gamma}")
        if self.gamma == 1:
            raise GammaEqualsOne("gamma = 1 (logarithmic felicity) is not supported")
        if is_rational(self.gamma):
            eps = Fraction(1, 1) / as_fraction(self.gamma)
        else:
            eps = 1.0 / self.gamma
        object.__setattr__(self, "epsilon", eps)

    @property
    def is_rational(self) -> bool:
        return all_rational(self.a, self.b, self.gamma)


@dataclass(frozen=True)
class ConsumerType:
    """One impatience type: endowments (e, f), patience weight beta,
    and the cached sigma = beta^epsilon."""

    e: object
    f: object
    beta: object
    sigma: object

    def __post_init__(self):
        if self.e < 0 or self.f < 0:
            raise EconomyInvalid("endowments must be nonnegative")
        if self.e + self.f <= 0:
            raise EconomyInvalid("each type needs a positive total endowment")
        if not self.beta > 0:
            raise EconomyInvalid("patience weight beta must be positive")
        if not self.sigma > 0:
            raise EconomyInvalid("sigma must be positive")


@dataclass(frozen=True)
class Economy:
    """c >= 2 consumer types (kept sorted by ascending beta) plus the
    shared HARA parameters.  rx, ry are the total endowments."""

    hara: HaraParams
    types: tuple

    def __post_init__(self):
        if len(self.types) < 2:
            raise EconomyInvalid("need at least two consumer types")
        ordered = tuple(sorted(self.types, key=lambda t: (t.beta, t.sigma)))
        object.__setattr__(self, "types", ordered)
        if not self.rx > 0:
            raise EconomyInvalid("total endowment of good x must be positive")
        if not self.ry > 0:
            raise EconomyInvalid("total endowment of good y must be positive")

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_betas(cls, a, b, gamma, types):
        """types: iterable of (e, f, beta).  sigma = beta^epsilon is kept
        exact when beta has an exact n-th root (epsilon = m/n), otherwise
        computed in floating point."""
        hara = HaraParams(a, b, gamma)
        built = []
        for e, f, beta in types:
            sigma = None
            if is_rational(beta) and isinstance(hara.epsilon, Fraction):
                sigma = exact_pow(beta, hara.epsilon)
            if sigma is None:
                sigma = float(beta) ** float(hara.epsilon)
            built.append(ConsumerType(e, f, beta, sigma))
        return cls(hara, tuple(built))

    @classmethod
    def from_sigmas(cls, a, b, gamma, types):
        """types: iterable of (e, f, sigma).  beta = sigma^gamma; kept
        exact for rational sigma and integral gamma."""
        hara = HaraParams(a, b, gamma)
        built = []
        for e, f, sigma in types:
            beta = None
            if is_rational(sigma) and is_rational(gamma):
                g = as_fraction(gamma)
                beta = exact_pow(sigma, g)
            if beta is None:
                beta = float(sigma) ** float(gamma)
            built.append(ConsumerType(e, f, beta, sigma))
        return cls(hara, tuple(built))

    # -- views ------------------------------------------------------------

    @property
    def c(self) -> int:
        return len(self.types)

    @property
    def rx(self):
        return sum(t.e for t in self.types)

    @property
    def ry(self):
        return sum(t.f for t in self.types)

    @property
    def sigmas(self) -> tuple:
        return tuple(t.sigma for t in self.types)

    @property
    def endowments_x(self) -> tuple:
        return tuple(t.e for t in self.types)

    @property
    def endowments_y(self) -> tuple:
        return tuple(t.f for t in self.types)

    @property
    def is_rational(self) -> bool:
        """True when every quantity the polynomial route consumes is exact."""
        return self.hara.is_rational and all(
            all_rational(t.e, t.f, t.sigma) for t in self.types
        )

    def float_arrays(self):
        """(e, f, sigma) as float tuples for the numeric kernels."""
        e = tuple(float(t.e) for t in self.types)
        f = tuple(float(t.f) for t in self.types)
        s = tuple(float(t.sigma) for t in self.types)
        return e, f, s


def _check_price(p):
    if not p > 0:
        raise NonPositivePrice(f"price must be positive, got {p}")


def _sigma_price_power(econ: Economy, p):
    """p^epsilon matching the arithmetic of p: exact for rational p with
    an exact root, float otherwise."""
    eps = econ.hara.epsilon
    if is_rational(p) and isinstance(eps, Fraction):
        exact = exact_pow(p, eps)
        if exact is not None:
            return exact
    return float(p) ** float(eps)


def demand(econ: Economy, i: int, p):
    """Type i's demanded bundle (x, y) at price p.

    Closed form of the interior first-order condition: with
    X = b + (a/gamma) x the tangency condition reads
    b + (a/gamma) y = sigma_i p^eps X, and the budget pins X down.  The
    y-coordinate is returned as the exact budget complement, so
    p*x + y = p*e_i + f_i holds to machine precision by construction.
    Negative demands (possible for large b at extreme prices) are
    flagged with NegativeDemandWarning, never clamped.
    """
    _check_price(p)
    t = econ.types[i]
    a, b, eps = econ.hara.a, econ.hara.b, econ.hara.epsilon
    peps = _sigma_price_power(econ, p)
    aeps = a * eps
    wealth = p * t.e + t.f
    x = (b - b * t.sigma * peps + aeps * wealth) / (aeps * (p + t.sigma * peps))
    y = wealth - p * x
    if x < 0 or y < 0:
        warnings.warn(
            f"corner: type {i} demands ({x}, {y}) at p={p}; interior assumption violated",
            NegativeDemandWarning,
            stacklevel=2,
        )
    return x, y


def excess_demand_x(econ: Economy, p):
    """Aggregate excess demand for good x at price p."""
    _check_price(p)
    a, b, eps = econ.hara.a, econ.hara.b, econ.hara.epsilon
    peps = _sigma_price_power(econ, p)
    aeps = a * eps
    total = 0
    for t in econ.types:
        total += (b - b * t.sigma * peps + aeps * (p * t.e + t.f)) / (
            aeps * (p + t.sigma * peps)
        )
    return total - econ.rx


def excess_demand_y(econ: Economy, p):
    """Aggregate excess demand for good y; satisfies the budget identity
    p*Zx(p) + Zy(p) = 0 for every positive p."""
    _check_price(p)
    total = 0
    for i in range(econ.c):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NegativeDemandWarning)
            _, y = demand(econ, i, p)
        total += y
    return total - econ.ry


def excess_demand_x_at_root(econ: Economy, q, n: int, m: int):
    """Zx evaluated at p = q^n with p^epsilon = q^m, staying exact for
    rational q.  Only meaningful when epsilon = m/n; this is the exact
    evaluation path used to certify polynomial roots."""
    if not q > 0:
        raise NonPositivePrice(f"substituted variable must be positive, got {q}")
    a, b = econ.hara.a, econ.hara.b
    eps = Fraction(m, n)
    aeps = a * eps
    p = q ** n
    peps = q ** m
    total = 0
    for t in econ.types:
        total += (b - b * t.sigma * peps + aeps * (p * t.e + t.f)) / (
            aeps * (p + t.sigma * peps)
        )
    return total - econ.rx


def budget_residual(econ: Economy, p) -> float:
    """|p*Zx + Zy| as a float, for diagnostics and tests."""
    return abs(float(p) * float(excess_demand_x(econ, p)) + float(excess_demand_y(econ, p)))
