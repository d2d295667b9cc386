"""Checkable uniqueness certificates.

Four closed-form rules plus a counting fallback:

  gamma-range      gamma in (1, c/(c-1)] forces a single sign change in
                   the reduced polynomial, hence a unique equilibrium,
                   for arbitrary endowments and patience weights.
  hara-two-type    c = 2, gamma = 3: ordered patience and endowments
                   plus a large enough risk-tolerance intercept
                   (b >= (a/3) (beta2/beta1)^(2/3) (e2 + f1)) give
                   uniqueness via a negative cubic cross product AD - BC.
  cubic-cross-test c = 2, gamma = 3: AD - BC < 0 alone (three sign
                   changes are automatic for a valid economy) already
                   pins the discriminant negative, hence one real root.
  crra-symmetric   the symmetric CRRA family at gamma = 3 classified
                   exactly through delta(alpha, e) and the cubic
                   discriminant.
  descartes-direct reduce, count, isolate; the safety net.

Every certificate records its hypotheses with signed margins (positive
means satisfied strictly) so callers can see how close a verdict is to
flipping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParameterOutOfRange, UnsupportedGamma, WrongArity
from .model import Economy
from .rationals import all_rational, as_fraction, is_rational
from .reduction import approximate_epsilon, reduce_to_polynomial
from .roots import cubic_discriminant, isolate_positive_roots
from .sympoly import build_coefficients

__all__ = [
    "Certificate", "Hypothesis", "CrraSymmetricSpec",
    "RULE_GAMMA_RANGE", "RULE_TWO_TYPE_HARA", "RULE_CUBIC_CROSS",
    "RULE_CRRA_SYMMETRIC", "RULE_DESCARTES", "RULE_NONE",
    "UNIQUE", "AT_MOST_THREE", "THREE", "CRITICAL", "INCONCLUSIVE",
    "certify_gamma_range", "certify_two_type_hara", "ad_minus_bc",
    "ad_minus_bc_parts", "cubic_coefficients", "classify_crra_symmetric",
    "certify", "crra_symmetric_from_economy",
]

RULE_GAMMA_RANGE = "gamma-range"
RULE_TWO_TYPE_HARA = "hara-two-type"
RULE_CUBIC_CROSS = "cubic-cross-test"
RULE_CRRA_SYMMETRIC = "crra-symmetric"
RULE_DESCARTES = "descartes-direct"
RULE_NONE = "none"

UNIQUE = "unique"
AT_MOST_THREE = "at-most-three"
THREE = "three"
CRITICAL = "critical"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Hypothesis:
    name: str
    satisfied: bool
    margin: object   # signed slack; positive = satisfied strictly


@dataclass(frozen=True)
class Certificate:
    rule: str
    hypotheses: tuple
    verdict: str
    details: dict = field(default_factory=dict)
    secondary: tuple = ()

    def hypothesis(self, name: str) -> Hypothesis:
        for h in self.hypotheses:
            if h.name == name:
                return h
        raise KeyError(name)

    def to_record(self) -> dict:
        from .rationals import format_number
        return {
            "rule": self.rule,
            "verdict": self.verdict,
            "hypotheses": [
                {"name": h.name, "satisfied": h.satisfied,
                 "margin": format_number(h.margin)}
                for h in self.hypotheses
            ],
            "details": {k: format_number(v) if not isinstance(v, (str, bool, int))
                        else v for k, v in self.details.items()},
        }


# ---------------------------------------------------------------------------
# curvature-range rule

def certify_gamma_range(econ: Economy) -> Certificate:
    """Unique when gamma lies in (1, c/(c-1)], any endowments, any betas."""
    gamma = econ.hara.gamma
    c = econ.c
    upper = Fraction(c, c - 1) if is_rational(gamma) else c / (c - 1)
    low = Hypothesis("gamma-above-one", gamma > 1, gamma - 1)
    high = Hypothesis("gamma-at-most-boundary", upper - gamma >= 0, upper - gamma)
    verdict = UNIQUE if (low.satisfied and high.satisfied) else INCONCLUSIVE
    return Certificate(RULE_GAMMA_RANGE, (low, high), verdict,
                       {"c": c, "boundary": upper})


# ---------------------------------------------------------------------------
# two-type cubic machinery (c = 2, gamma = 3)

def _require_two_type_cubic(econ: Economy):
    if econ.c != 2:
        raise WrongArity(f"rule specialised to two consumer types, got {econ.c}")
    if econ.hara.gamma != 3:
        raise UnsupportedGamma(
            f"rule is exact at gamma = 3 only, got {econ.hara.gamma}")


def cubic_coefficients(econ: Economy):
    """(A, B, C, D) of P(q) = A q^3 + B q^2 + C q + D for c = 2, gamma = 3."""
    _require_two_type_cubic(econ)
    eps = Fraction(1, 3) if econ.is_rational else econ.hara.epsilon
    co = build_coefficients(econ, epsilon=eps)
    return (-co.x_weight[1], co.y_weight[0], -co.x_weight[2], co.y_weight[1])


def ad_minus_bc(econ: Economy):
    """Cross product A*D - B*C of the two-type cubic."""
    A, B, C, D = cubic_coefficients(econ)
    return A * D - B * C


def ad_minus_bc_parts(econ: Economy):
    """The cross product split as (patience-endowment term, intercept term).

    First part: (sigma2 - sigma1)(e1 f2 sigma1 - e2 f1 sigma2).
    Second part: -(9 b^2/a^2)(sigma1 - sigma2)^2
                 + (3 b/a)[(e1+e2+f1+f2) sigma1 sigma2
                           - (e1+f2) sigma1^2 - (e2+f1) sigma2^2].
    Their sum equals ad_minus_bc exactly; kept separate because each
    factor is sign-analysable on its own under the ordering hypotheses.
    """
    _require_two_type_cubic(econ)
    (t1, t2) = econ.types
    s1, s2 = t1.sigma, t2.sigma
    e1, e2, f1, f2 = t1.e, t2.e, t1.f, t2.f
    a, b = econ.hara.a, econ.hara.b
    k = 3 * b / a
    first = (s2 - s1) * (e1 * f2 * s1 - e2 * f1 * s2)
    second = (-(k * k) * (s1 - s2) ** 2
              + k * ((e1 + e2 + f1 + f2) * s1 * s2
                     - (e1 + f2) * s1 ** 2 - (e2 + f1) * s2 ** 2))
    return first, second


def certify_two_type_hara(econ: Economy) -> Certificate:
    """Ordered-heterogeneity rule for c = 2, gamma = 3.

    Hypotheses as printed: beta1 < beta2 strict, e1 <= e2, f1 >= f2, and
    b >= (a/3)(beta2/beta1)^(2/3)(e2 + f1).  When they hold the verdict
    is unique; with b = 0 (CRRA) the ordering alone plus a checked
    negative cross product certifies uniqueness; otherwise the cubic
    degree bound is all that applies and the verdict is at-most-three.
    """
    _require_two_type_cubic(econ)
    (t1, t2) = econ.types
    a, b = econ.hara.a, econ.hara.b
    # (beta2/beta1)^(2/3) = (sigma2/sigma1)^2, exact through sigma
    threshold = (as_fraction(a) / 3 if is_rational(a) else a / 3) \
        * (t2.sigma / t1.sigma) ** 2 * (t2.e + t1.f)
    cross = ad_minus_bc(econ)

    hyps = (
        Hypothesis("patience-ordered", t1.beta < t2.beta, t2.beta - t1.beta),
        Hypothesis("x-endowment-ordered", t1.e <= t2.e, t2.e - t1.e),
        Hypothesis("y-endowment-ordered", t1.f >= t2.f, t1.f - t2.f),
        Hypothesis("intercept-threshold", b >= threshold, b - threshold),
        Hypothesis("cross-product-negative", cross < 0, -cross),
    )
    ordered = all(h.satisfied for h in hyps[:3])
    if ordered and hyps[3].satisfied:
        verdict = UNIQUE
    elif ordered and b == 0 and hyps[4].satisfied:
        # homothetic route: ordering alone forces AD - BC < 0 when b = 0
        verdict = UNIQUE
    else:
        verdict = AT_MOST_THREE
    return Certificate(RULE_TWO_TYPE_HARA, hyps, verdict,
                       {"threshold": threshold, "cross_product": cross})


def certify_cubic_cross(econ: Economy) -> Certificate:
    """Uniqueness from the cross product alone: a valid two-type economy
    at gamma = 3 always has the sign pattern (-, +, -, +), so AD - BC < 0
    makes the discriminant negative and the single real root positive."""
    A, B, C, D = cubic_coefficients(econ)
    cross = A * D - B * C
    disc = cubic_discriminant(A, B, C, D)
    hyps = (
        Hypothesis("three-sign-changes",
                   A < 0 and B > 0 and C < 0 and D > 0,
                   min(-A, B, -C, D)),
        Hypothesis("cross-product-negative", cross < 0, -cross),
    )
    verdict = UNIQUE if all(h.satisfied for h in hyps) else AT_MOST_THREE
    return Certificate(RULE_CUBIC_CROSS, hyps, verdict,
                       {"cross_product": cross, "discriminant": disc})


# ---------------------------------------------------------------------------
# symmetric CRRA classification (gamma = 3)

@dataclass(frozen=True)
class CrraSymmetricSpec:
    """Symmetric two-type CRRA family: utility weights alpha / 1-alpha,
    endowments (e, 1-e) and (1-e, e), curvature gamma."""

    alpha: object
    e: object
    gamma: object = 3

    def __post_init__(self):
        if not (0 < self.alpha < 1):
            raise ParameterOutOfRange(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (0 < self.e < 1):
            raise ParameterOutOfRange(f"e must lie in (0, 1), got {self.e}")

    @property
    def sigmas(self):
        one = Fraction(1) if is_rational(self.alpha) else 1.0
        return ((one - self.alpha) / self.alpha, self.alpha / (one - self.alpha))

    def to_economy(self) -> Economy:
        s1, s2 = self.sigmas
        one = Fraction(1) if all_rational(self.alpha, self.e) else 1.0
        return Economy.from_sigmas(1, 0, self.gamma, [
            (self.e, one - self.e, s1),
            (one - self.e, self.e, s2),
        ])


def delta_of(alpha, e):
    """The single parameter classifying the symmetric CRRA cubic:
    delta = (alpha^2 - (2 alpha - 1) e) / (alpha - alpha^2).  The cubic
    is -delta q^3 + q^2 - q + delta."""
    if all_rational(alpha, e):
        alpha, e = as_fraction(alpha), as_fraction(e)
    return (alpha * alpha - (2 * alpha - 1) * e) / (alpha - alpha * alpha)


def critical_endowment(alpha):
    """The e putting (alpha, e) on the critical locus delta = 1/3, i.e.
    e = alpha (4 alpha - 1) / (3 (2 alpha - 1)); None when that value
    falls outside (0, 1) (so the alpha-line carries no critical point)."""
    if alpha == Fraction(1, 2) or alpha == 0.5:
        return None
    if is_rational(alpha):
        alpha = as_fraction(alpha)
    e = alpha * (4 * alpha - 1) / (3 * (2 * alpha - 1))
    return e if 0 < e < 1 else None


def classify_crra_symmetric(spec: CrraSymmetricSpec) -> Certificate:
    """Exact trichotomy for the symmetric CRRA family at gamma = 3.

    delta > 1/3 gives a unique equilibrium, delta = 1/3 a critical one
    (the cubic degenerates to a triple root at q = 1), delta < 1/3 three
    equilibria; equivalently the discriminant -(3 delta - 1)^3 (delta + 1)
    is negative / zero / positive.  Both are computed and asserted
    consistent.

    The planar expression (alpha - 3e)(2 alpha - 1) is recorded alongside
    for reference, but it does not reproduce this trichotomy: it differs
    from the numerator of delta - 1/3 by 2 alpha^2, so its sign deviates
    from the discriminant's on a full-measure region (for example
    alpha = 3/5, e = 1/2, where both types hold identical endowments and
    the equilibrium is provably unique).  Verdicts therefore come from
    delta alone.
    """
    if spec.gamma != 3:
        raise UnsupportedGamma(
            f"classification is exact at gamma = 3 only, got {spec.gamma}")
    alpha, e = spec.alpha, spec.e
    d = delta_of(alpha, e)
    third = Fraction(1, 3) if is_rational(d) else 1.0 / 3.0
    gap = d - third
    # -(3d - 1)^3 (d + 1), written through gap so the sign agrees with
    # gap's even under float rounding (d + 1 > 0 on the open square)
    disc = -((3 * gap) ** 3) * (d + 1)
    planar = (alpha - 3 * e) * (2 * alpha - 1)
    if gap > 0:
        verdict = UNIQUE
        split = Hypothesis("delta-above-one-third", True, gap)
    elif gap == 0:
        verdict = CRITICAL
        split = Hypothesis("delta-at-one-third", True, gap)
    else:
        verdict = THREE
        split = Hypothesis("delta-below-one-third", True, -gap)
    # the discriminant must tell the same story; delta + 1 > 0 on the
    # open square so sign(disc) = -sign(3 delta - 1)^3
    assert (disc < 0) == (verdict == UNIQUE)
    assert (disc == 0) == (verdict == CRITICAL)
    assert (disc > 0) == (verdict == THREE)

    hyps = (
        Hypothesis("alpha-in-range", 0 < alpha < 1, min(alpha, 1 - alpha)),
        Hypothesis("e-in-range", 0 < e < 1, min(e, 1 - e)),
        split,
    )
    return Certificate(RULE_CRRA_SYMMETRIC, hyps, verdict, {
        "delta": d,
        "discriminant": disc,
        "planar_split": planar,
        "planar_matches_discriminant":
            (planar > 0) == (disc < 0) and (planar == 0) == (disc == 0),
        "critical_e": critical_endowment(alpha),
    })


def crra_symmetric_from_economy(econ: Economy):
    """Recover the (alpha, e) parametrisation when the economy matches
    the symmetric CRRA pattern exactly, else None."""
    if econ.c != 2 or econ.hara.b != 0 or econ.hara.gamma != 3:
        return None
    t1, t2 = econ.types
    if t1.sigma * t2.sigma != 1:
        return None
    if not (t1.e == t2.f and t1.f == t2.e and t1.e + t2.e == 1):
        return None
    one = Fraction(1) if is_rational(t1.sigma) else 1.0
    alpha = one / (one + t1.sigma)    # sigma1 = (1 - alpha)/alpha
    e = t1.e
    if not (0 < alpha < 1 and 0 < e < 1):
        return None
    return CrraSymmetricSpec(alpha, e, econ.hara.gamma)


# ---------------------------------------------------------------------------
# dispatcher

def certify(econ: Economy, max_denominator: int = 64) -> Certificate:
    """Strongest certificate available for the economy.

    Closed-form rules are preferred over direct counting; everything that
    was evaluated rides along in .secondary so nothing is hidden.  The
    counting fallback derives its verdict from the isolation report, so
    it can never contradict it.
    """
    tried = []

    cert = certify_gamma_range(econ)
    if cert.verdict == UNIQUE:
        return cert
    tried.append(cert)

    if econ.c == 2 and econ.hara.gamma == 3:
        two = certify_two_type_hara(econ)
        if two.verdict == UNIQUE:
            return Certificate(two.rule, two.hypotheses, two.verdict,
                               two.details, tuple(tried))
        tried.append(two)

        spec = crra_symmetric_from_economy(econ)
        if spec is not None:
            sym = classify_crra_symmetric(spec)
            return Certificate(sym.rule, sym.hypotheses, sym.verdict,
                               sym.details, tuple(tried))

        cross = certify_cubic_cross(econ)
        if cross.verdict == UNIQUE:
            return Certificate(cross.rule, cross.hypotheses, cross.verdict,
                               cross.details, tuple(tried))
        tried.append(cross)

    if econ.hara.gamma > 1:
        eps = approximate_epsilon(econ.hara.gamma, max_denominator)
        exact_exp = (is_rational(econ.hara.gamma)
                     and eps.value * as_fraction(econ.hara.gamma) == 1)
        poly = reduce_to_polynomial(econ, eps)
        report = isolate_positive_roots(poly)
        details = {
            "descartes_bound": report.descartes_bound,
            "count": report.count,
            "certified": report.certified,
            "exponent": str(eps),
            "exponent_exact": exact_exp,
        }
        if report.classification == "critical":
            verdict = CRITICAL
        elif report.count == 1:
            verdict = UNIQUE
        elif report.count == 3:
            verdict = THREE
        else:
            verdict = INCONCLUSIVE
        if not (report.certified and exact_exp):
            # counts from float isolation or from a substituted exponent
            # are evidence about a perturbed economy, not a certificate
            verdict = INCONCLUSIVE
        hyp = Hypothesis("isolation-certified", report.certified and exact_exp,
                         report.count)
        return Certificate(RULE_DESCARTES, (hyp,), verdict, details,
                           tuple(tried))

    return Certificate(RULE_NONE, (), INCONCLUSIVE, {}, tuple(tried))
