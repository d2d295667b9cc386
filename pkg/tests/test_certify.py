import random
from fractions import Fraction

import pytest

from haraeq import (CrraSymmetricSpec, Economy, approximate_epsilon, certify,
                    certify_gamma_range, certify_two_type_hara,
                    classify_crra_symmetric, isolate_positive_roots,
                    prices_from_roots, reduce_to_polynomial)
from haraeq.certify import (AT_MOST_THREE, CRITICAL, INCONCLUSIVE,
                            RULE_CRRA_SYMMETRIC, RULE_CUBIC_CROSS,
                            RULE_DESCARTES, RULE_GAMMA_RANGE,
                            RULE_TWO_TYPE_HARA, THREE, UNIQUE, ad_minus_bc,
                            ad_minus_bc_parts, critical_endowment,
                            crra_symmetric_from_economy, cubic_coefficients,
                            delta_of)
from haraeq.errors import ParameterOutOfRange, UnsupportedGamma, WrongArity
from haraeq.sampling import (random_economy, random_gamma_range_economy,
                             random_rational, random_two_type_ordered_economy,
                             with_intercept)


def test_gamma_range_boundary_and_interior():
    econ = random_economy(random.Random(1), 2, 2)
    cert = certify_gamma_range(econ)
    assert cert.verdict == UNIQUE
    assert cert.hypothesis("gamma-at-most-boundary").margin == 0

    econ4 = random_economy(random.Random(2), 4, 1.3)
    assert certify_gamma_range(econ4).verdict == UNIQUE

    econ3 = random_economy(random.Random(3), 2, 3)
    cert3 = certify_gamma_range(econ3)
    assert cert3.verdict == INCONCLUSIVE
    assert cert3.hypothesis("gamma-at-most-boundary").margin < 0


def test_two_type_threshold_example():
    # beta = (1, 8) so (beta2/beta1)^(2/3) = 4; threshold = (1/3)*4*2 = 8/3
    def build(b):
        return Economy.from_betas(1, b, 3, [(1, 1, 1), (1, 1, 8)])

    cert = certify_two_type_hara(build(Fraction(8, 3)))
    assert cert.verdict == UNIQUE
    assert cert.hypothesis("intercept-threshold").margin == 0
    assert cert.details["threshold"] == Fraction(8, 3)
    assert cert.details["cross_product"] < 0

    below = certify_two_type_hara(build(Fraction(8, 3) - Fraction(1, 100)))
    assert below.hypothesis("intercept-threshold").margin < 0
    assert below.verdict == AT_MOST_THREE


def test_two_type_example_cross_product_value():
    econ = Economy.from_betas(1, Fraction(8, 3), 3, [(1, 1, 1), (1, 1, 8)])
    assert ad_minus_bc(econ) == -81


def test_crra_ordering_route():
    # b = 0 with ordered patience and endowments: the checked cross
    # product certifies uniqueness without any intercept condition
    rng = random.Random(5)
    for _ in range(50):
        econ = random_two_type_ordered_economy(rng)
        assert econ.hara.b == 0
        cert = certify_two_type_hara(econ)
        assert cert.verdict == UNIQUE
        assert cert.hypothesis("cross-product-negative").satisfied
        assert isolate_positive_roots(
            reduce_to_polynomial(econ, approximate_epsilon(3))).exact_count == 1


def test_violated_ordering_gives_degree_bound_only():
    # e1 > e2 breaks the ordering; no uniqueness claim regardless of b
    econ = Economy.from_sigmas(1, 50, 3, [(3, 1, 1), (1, 1, 2)])
    cert = certify_two_type_hara(econ)
    assert not cert.hypothesis("x-endowment-ordered").satisfied
    assert cert.verdict == AT_MOST_THREE


def test_two_type_guards():
    rng = random.Random(7)
    with pytest.raises(WrongArity):
        certify_two_type_hara(random_economy(rng, 3, 3))
    with pytest.raises(UnsupportedGamma):
        certify_two_type_hara(random_economy(rng, 2, 2))


def test_cross_product_decomposition_identity():
    rng = random.Random(11)
    for _ in range(200):
        econ = random_economy(rng, 2, 3)
        first, second = ad_minus_bc_parts(econ)
        assert first + second == ad_minus_bc(econ)


def test_cross_product_symmetric_degenerate():
    econ = Economy.from_sigmas(2, Fraction(3, 2), 3, [(1, 2, 3), (1, 2, 3)])
    first, second = ad_minus_bc_parts(econ)
    assert first == 0 and second == 0
    A, B, C, D = cubic_coefficients(econ)
    assert ad_minus_bc(econ) == A * D - B * C == 0


def test_cross_product_sign_not_implied_without_ordering(toda_walsh):
    # three equilibria exist here, so the cross product must not be negative
    assert ad_minus_bc(toda_walsh) == Fraction(45, 49)


def test_threshold_margin_scales_jointly():
    # (a, b, e, f) -> (a, t b, t e, t f) rescales the threshold margin by t
    rng = random.Random(13)
    for _ in range(30):
        econ = random_two_type_ordered_economy(rng, b=random_rational(rng, 0, 3))
        t = random_rational(rng, Fraction(1, 3), 5)
        scaled = Economy.from_sigmas(
            econ.hara.a, t * econ.hara.b, 3,
            [(t * ty.e, t * ty.f, ty.sigma) for ty in econ.types])
        m1 = certify_two_type_hara(econ).hypothesis("intercept-threshold").margin
        m2 = certify_two_type_hara(scaled).hypothesis("intercept-threshold").margin
        assert m2 == t * m1


# ---------------------------------------------------------------------------
# symmetric CRRA classification

def test_classify_toda_walsh_point():
    cert = classify_crra_symmetric(CrraSymmetricSpec(Fraction(1, 7), Fraction(1, 49)))
    assert cert.verdict == THREE
    assert cert.details["delta"] == Fraction(2, 7)
    assert cert.details["discriminant"] == Fraction(9, 2401)


def test_classify_unique_point():
    cert = classify_crra_symmetric(CrraSymmetricSpec(Fraction(3, 4), Fraction(1, 8)))
    assert cert.verdict == UNIQUE
    assert cert.details["delta"] == Fraction(8, 3)


def test_classify_critical_locus_exact():
    for alpha in (Fraction(4, 5), Fraction(7, 8), Fraction(1, 5), Fraction(1, 7)):
        e = critical_endowment(alpha)
        assert e is not None and 0 < e < 1
        cert = classify_crra_symmetric(CrraSymmetricSpec(alpha, e))
        assert cert.verdict == CRITICAL
        assert cert.details["discriminant"] == 0
        assert cert.details["delta"] == Fraction(1, 3)


def test_no_critical_point_on_middle_alphas():
    for alpha in (Fraction(1, 2), Fraction(2, 5), Fraction(3, 5), Fraction(1, 4)):
        assert critical_endowment(alpha) is None


def test_planar_shortcut_diverges_from_discriminant():
    """The factored planar expression (alpha - 3e)(2 alpha - 1) does not
    reproduce the discriminant trichotomy: at alpha = 3/5, e = 1/2 both
    consumers hold the identical bundle (1/2, 1/2), so the equilibrium is
    unique, yet the planar expression is negative.  The classifier must
    side with the discriminant and the actual root count."""
    spec = CrraSymmetricSpec(Fraction(3, 5), Fraction(1, 2))
    econ = spec.to_economy()
    assert econ.types[0].e == econ.types[1].e == Fraction(1, 2)
    cert = classify_crra_symmetric(spec)
    planar = cert.details["planar_split"]
    assert planar < 0                       # would read "three"
    assert cert.details["delta"] == Fraction(13, 12)
    assert cert.verdict == UNIQUE
    assert not cert.details["planar_matches_discriminant"]
    rep = isolate_positive_roots(reduce_to_polynomial(econ, approximate_epsilon(3)))
    assert rep.exact_count == 1             # ground truth sides with delta


def test_alpha_half_line_is_unique_not_critical():
    """On alpha = 1/2 both weights equal 1 and the cubic is
    -(q - 1)(q^2 + 1) for every e: a single simple root, so the line is
    not a critical locus (delta = 1 there, discriminant -16)."""
    for e in (Fraction(3, 10), Fraction(1, 6), Fraction(9, 10)):
        spec = CrraSymmetricSpec(Fraction(1, 2), e)
        cert = classify_crra_symmetric(spec)
        assert cert.details["delta"] == 1
        assert cert.details["discriminant"] == -16
        assert cert.verdict == UNIQUE
        rep = isolate_positive_roots(
            reduce_to_polynomial(spec.to_economy(), approximate_epsilon(3)))
        assert rep.exact_count == 1 and rep.roots[0].value == 1


def test_classify_guards():
    with pytest.raises(ParameterOutOfRange):
        CrraSymmetricSpec(Fraction(3, 2), Fraction(1, 2))
    with pytest.raises(ParameterOutOfRange):
        CrraSymmetricSpec(Fraction(1, 2), 0)
    with pytest.raises(UnsupportedGamma):
        classify_crra_symmetric(CrraSymmetricSpec(Fraction(1, 3), Fraction(1, 3), 2))


def test_pattern_recovery_round_trip():
    spec = CrraSymmetricSpec(Fraction(2, 7), Fraction(3, 11))
    back = crra_symmetric_from_economy(spec.to_economy())
    assert back is not None
    assert delta_of(back.alpha, back.e) == delta_of(spec.alpha, spec.e)
    rng = random.Random(17)
    assert crra_symmetric_from_economy(random_economy(rng, 2, 3)) is None


# ---------------------------------------------------------------------------
# dispatcher

def test_dispatcher_prefers_range_rule():
    econ = random_economy(random.Random(19), 5, Fraction(6, 5))
    cert = certify(econ)
    assert cert.rule == RULE_GAMMA_RANGE and cert.verdict == UNIQUE


def test_dispatcher_on_toda_walsh(toda_walsh):
    cert = certify(toda_walsh)
    assert cert.verdict == THREE
    assert cert.rule == RULE_CRRA_SYMMETRIC
    assert any(c.rule == RULE_GAMMA_RANGE for c in cert.secondary)


def test_dispatcher_two_type_threshold():
    rng = random.Random(23)
    econ = random_two_type_ordered_economy(rng)
    thr = certify_two_type_hara(econ).details["threshold"]
    rich = with_intercept(econ, 2 * thr)
    cert = certify(rich)
    assert cert.rule == RULE_TWO_TYPE_HARA and cert.verdict == UNIQUE


def test_dispatcher_cross_rule_below_threshold():
    # ordered economy with 0 < b < threshold: the printed rule does not
    # fire but the cross product still certifies uniqueness
    rng = random.Random(29)
    econ = random_two_type_ordered_economy(rng)
    thr = certify_two_type_hara(econ).details["threshold"]
    poor = with_intercept(econ, thr / 2)
    cert = certify(poor)
    assert cert.rule == RULE_CUBIC_CROSS and cert.verdict == UNIQUE


def test_dispatcher_descartes_fallback():
    # c = 3 with gamma far above the range: only direct counting remains
    econ = Economy.from_sigmas(1, 0, 3, [(1, 1, Fraction(1, 2)),
                                         (1, 1, 1),
                                         (1, 1, 2)])
    cert = certify(econ)
    assert cert.rule == RULE_DESCARTES
    assert cert.details["exponent_exact"]
    assert cert.verdict in (UNIQUE, THREE, CRITICAL)


def test_dispatcher_never_contradicts_isolation():
    rng = random.Random(31)
    for _ in range(60):
        c = rng.randint(2, 4)
        gamma = Fraction(rng.randint(c + 1, 4 * c), c)   # anywhere above 1
        if gamma == 1:
            continue
        econ = random_economy(rng, c, gamma)
        cert = certify(econ)
        eps = approximate_epsilon(gamma, 64)
        rep = isolate_positive_roots(reduce_to_polynomial(econ, eps))
        if cert.verdict == UNIQUE:
            assert rep.exact_count == 1
        elif cert.verdict == THREE:
            assert rep.exact_count == 3
        elif cert.verdict == CRITICAL:
            assert rep.classification == "critical"


def test_certificate_serialization(toda_walsh):
    rec = certify(toda_walsh).to_record()
    assert rec["rule"] == RULE_CRRA_SYMMETRIC
    assert rec["verdict"] == THREE
    assert all({"name", "satisfied", "margin"} <= set(h) for h in rec["hypotheses"])
