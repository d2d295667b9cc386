"""Reduction of the aggregate excess demand to a sparse polynomial.

With a rational exponent epsilon = m/n (0 < m < n) and the substitution
q = p^(1/n), clearing denominators of the excess demand yields

    P(q) =  sum_{t=1}^{c-1} y_weight[t] * q^((c-1-t)(n-m))
          + y_weight[0] * q^((c-1)(n-m))
          - x_weight[c] * q^m
          - sum_{t=1}^{c-1} x_weight[t] * q^((c-1-t)(n-m)+n)

whose sign agrees with Zx(q^n) for every q > 0.  Exponent collisions are
merged by coefficient addition; merging can only lower the sign-change
count, so the Descartes bound stays valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import GammaOutOfRange, ZeroPolynomial
from .rationals import format_number, is_rational, parse_number
from .sympoly import build_coefficients, build_sigma_tables

if TYPE_CHECKING:
    from .model import Economy

__all__ = [
    "RationalExponent", "SparsePolynomial",
    "approximate_epsilon", "reduce_to_polynomial", "ladder_is_ordered",
]


@dataclass(frozen=True)
class RationalExponent:
    """Reduced fraction m/n standing in for the demand exponent 1/gamma."""

    m: int
    n: int

    def __post_init__(self):
        fr = Fraction(self.m, self.n)
        if not 0 < fr < 1:
            raise GammaOutOfRange(f"exponent {self.m}/{self.n} outside (0, 1)")
        object.__setattr__(self, "m", fr.numerator)
        object.__setattr__(self, "n", fr.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.m, self.n)

    def __str__(self):
        return f"{self.m}/{self.n}"


def approximate_epsilon(gamma, max_denominator: int = 64) -> RationalExponent:
    """Best rational m/n with n <= max_denominator for 1/gamma.

    Uses the continued-fraction convergent machinery behind
    Fraction.limit_denominator, so the result minimises |1/gamma - m/n|
    over the allowed denominators; exact rationals within range pass
    through untouched.  Requires gamma > 1 so the target lies in (0, 1).
    """
    if not gamma > 1:
        raise GammaOutOfRange(f"polynomial reduction needs gamma > 1, got {gamma}")
    if max_denominator < 2:
        raise GammaOutOfRange("max_denominator must be at least 2")
    if is_rational(gamma):
        eps = Fraction(1, 1) / Fraction(gamma)
    else:
        eps = Fraction(1.0 / float(gamma))
    best = eps.limit_denominator(max_denominator)
    if best >= 1:
        # epsilon this close to 1 rounds up; take the largest admissible
        # fraction below 1 instead so m < n is preserved
        best = Fraction(max_denominator - 1, max_denominator)
    elif best <= 0:
        best = Fraction(1, max_denominator)
    return RationalExponent(best.numerator, best.denominator)


@dataclass(frozen=True)
class SparsePolynomial:
    """Exponent-coefficient ladder, ascending exponents, no zero terms."""

    terms: tuple

    def __post_init__(self):
        merged = {}
        for exp, coeff in self.terms:
            if exp < 0 or exp != int(exp):
                raise ValueError(f"exponents must be nonnegative integers, got {exp}")
            merged[int(exp)] = merged.get(int(exp), 0) + coeff
        cleaned = tuple((e, c) for e, c in sorted(merged.items()) if c != 0)
        object.__setattr__(self, "terms", cleaned)

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return all(is_rational(c) for _, c in self.terms)

    def coefficients(self) -> tuple:
        """Coefficients in ascending exponent order (sparse view)."""
        return tuple(c for _, c in self.terms)

    def dense(self) -> list:
        """Dense ascending coefficient list, length degree + 1."""
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no dense form")
        out = [0] * (self.degree + 1)
        for e, c in self.terms:
            out[e] = c
        return out

    def __call__(self, x):
        return sum(c * x ** e for e, c in self.terms)

    def derivative(self) -> "SparsePolynomial":
        return SparsePolynomial(tuple((e - 1, e * c) for e, c in self.terms if e > 0))

    def scaled(self, factor) -> "SparsePolynomial":
        return SparsePolynomial(tuple((e, factor * c) for e, c in self.terms))

    def serialize(self) -> str:
        return "\n".join(f"{e}:{format_number(c)}" for e, c in self.terms)

    @classmethod
    def parse(cls, text: str) -> "SparsePolynomial":
        terms = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            e, c = line.split(":", 1)
            terms.append((int(e), parse_number(c)))
        return cls(tuple(terms))


def reduce_to_polynomial(econ: "Economy", exponent: RationalExponent) -> SparsePolynomial:
    """Build P(q) for the economy under the substituted exponent.

    The sigma weights stay those of the economy (the perturbation moves
    only the exponent), while the b/(a*eps) scale inside the coefficients
    uses the substituted m/n so that P is exactly the polynomial of the
    perturbed demand function.
    """
    m, n = exponent.m, exponent.n
    coeffs = build_coefficients(econ, build_sigma_tables(econ.sigmas),
                                epsilon=exponent.value)
    c = coeffs.c
    step = n - m
    terms = []
    for t in range(1, c):
        terms.append(((c - 1 - t) * step, coeffs.y_weight[t]))
    terms.append(((c - 1) * step, coeffs.y_weight[0]))
    terms.append((m, -coeffs.x_weight[c]))
    for t in range(1, c):
        terms.append(((c - 1 - t) * step + n, -coeffs.x_weight[t]))
    return SparsePolynomial(tuple(terms))


def ladder_is_ordered(exponent: RationalExponent, c: int) -> bool:
    """True when (c-1)(n-m) <= m, i.e. every positive-coefficient
    exponent precedes every negative one, leaving exactly one sign change
    regardless of the economy."""
    return (c - 1) * (exponent.n - exponent.m) <= exponent.m
