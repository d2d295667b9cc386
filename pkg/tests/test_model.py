import math
import random
from fractions import Fraction

import numpy as np
import pytest

from haraeq import Economy, HaraParams, demand, excess_demand_x, excess_demand_y
from haraeq.errors import (EconomyInvalid, GammaEqualsOne,
                           NegativeDemandWarning, NonPositivePrice)
from haraeq.model import budget_residual, excess_demand_x_at_root
from haraeq.sampling import random_economy


def symmetric_economy():
    return Economy.from_betas(1, 0, 3, [(1, 1, 1), (1, 1, 1)])


def test_symmetric_fixed_point():
    econ = symmetric_economy()
    for i in range(2):
        x, y = demand(econ, i, 1)
        assert x == 1 and y == 1


def hara_utility(a, b, gamma, w):
    return (gamma / (1.0 - gamma)) * (b + (a / gamma) * w) ** (1.0 - gamma)


def test_demand_matches_grid_search_toda_walsh(toda_walsh):
    # independent oracle: maximise utility on the budget line at p = 1
    econ = toda_walsh
    p = 1.0
    for i in range(2):
        t = econ.types[i]
        beta = float(t.beta)
        w = p * float(t.e) + float(t.f)
        xs = np.linspace(w * 1e-6, w / p * (1 - 1e-6), 1_000_000)
        ys = w - p * xs
        u = hara_utility(1.0, 0.0, 3.0, xs) + beta * hara_utility(1.0, 0.0, 3.0, ys)
        best = xs[np.argmax(u)]
        x, _ = demand(econ, i, p)
        assert abs(float(x) - best) < 2 * (xs[1] - xs[0])


def test_demand_budget_and_foc():
    econ = Economy.from_betas(1, 5, 2, [(1, 3, 1), (1, 3, 1)])
    p = 2.0
    x, y = demand(econ, 0, p)
    assert abs(p * x + y - 5.0) < 1e-12
    # marginal utility u'(w) = a (b + (a/gamma) w)^(-gamma)
    a, b, gamma = 1.0, 5.0, 2.0
    du = lambda w: a * (b + (a / gamma) * w) ** (-gamma)
    assert abs(du(x) - p * 1.0 * du(y)) < 1e-9 * du(x)


def test_excess_demand_symmetric_zero():
    econ = symmetric_economy()
    assert abs(excess_demand_x(econ, 1.0)) < 1e-14
    assert abs(excess_demand_y(econ, 1.0)) < 1e-14


def test_excess_demand_toda_walsh_zeros(toda_walsh):
    for p in (0.125, 1.0, 8.0):
        assert abs(excess_demand_x(toda_walsh, p)) < 1e-10
        assert abs(excess_demand_y(toda_walsh, p)) < 1e-10
    for q in (Fraction(1, 2), Fraction(1), Fraction(2)):
        assert excess_demand_x_at_root(toda_walsh, q, 3, 1) == 0


def test_boundary_signs():
    rng = random.Random(7)
    for _ in range(20):
        econ = random_economy(rng, 3, Fraction(3, 2), with_intercept=False)
        assert excess_demand_x(econ, 1e-8) > 0
        assert excess_demand_x(econ, 1e8) < 0


def test_walras_law():
    rng = random.Random(11)
    for _ in range(25):
        c = rng.randint(2, 5)
        gamma = Fraction(rng.randint(5, 40), 4)
        econ = random_economy(rng, c, gamma)
        for p in np.geomspace(1e-4, 1e4, 9):
            pzx = p * float(excess_demand_x(econ, p))
            zy = float(excess_demand_y(econ, p))
            assert abs(pzx + zy) <= 1e-10 * (1 + abs(pzx))


@pytest.mark.filterwarnings("ignore::haraeq.errors.NegativeDemandWarning")
def test_budget_exhaustion():
    # corner-flag warnings are expected at extreme probes; the budget
    # identity must hold regardless
    rng = random.Random(13)
    for _ in range(10):
        econ = random_economy(rng, 4, Fraction(7, 3))
        for p in (0.01, 1.0, 37.5):
            for i in range(econ.c):
                x, y = demand(econ, i, p)
                w = p * float(econ.types[i].e) + float(econ.types[i].f)
                assert abs(p * float(x) + float(y) - w) <= 1e-12 * (1 + abs(w))


def test_crra_scale_free_in_a():
    rng = random.Random(17)
    for _ in range(10):
        base = random_economy(rng, 3, Fraction(5, 2), with_intercept=False)
        scaled = Economy.from_sigmas(10 * base.hara.a, 0, base.hara.gamma,
                                     [(t.e, t.f, t.sigma) for t in base.types])
        for p in (0.3, 1.0, 4.2):
            for i in range(base.c):
                x1, y1 = demand(base, i, p)
                x2, y2 = demand(scaled, i, p)
                assert math.isclose(float(x1), float(x2), rel_tol=1e-12)
                assert math.isclose(float(y1), float(y2), rel_tol=1e-12)


def test_negative_demand_is_flagged_not_clamped():
    # large intercept and price push the x-demand negative
    econ = Economy.from_betas(1, 5, 2, [(0, 1, 1), (1, 1, 1)])
    with pytest.warns(NegativeDemandWarning):
        x, _ = demand(econ, 0, 4.0)
    assert x < 0


def test_price_must_be_positive(toda_walsh):
    for bad in (0, -1.0):
        with pytest.raises(NonPositivePrice):
            excess_demand_x(toda_walsh, bad)
        with pytest.raises(NonPositivePrice):
            demand(toda_walsh, 0, bad)


def test_logarithmic_curvature_rejected():
    with pytest.raises(GammaEqualsOne):
        HaraParams(1, 0, 1)


def test_economy_invariants():
    with pytest.raises(EconomyInvalid):
        Economy.from_betas(1, 0, 3, [(1, 1, 1)])            # c >= 2
    with pytest.raises(EconomyInvalid):
        Economy.from_betas(1, 0, 3, [(0, 1, 1), (0, 1, 1)])  # rx > 0
    with pytest.raises(EconomyInvalid):
        Economy.from_betas(1, 0, 3, [(1, 0, 1), (1, 0, 1)])  # ry > 0
    with pytest.raises(EconomyInvalid):
        Economy.from_betas(-1, 0, 3, [(1, 1, 1), (1, 1, 1)])


def test_sigma_exact_when_beta_is_perfect_power():
    econ = Economy.from_betas(1, 0, 3, [(1, 1, 216), (1, 1, Fraction(1, 216))])
    assert econ.sigmas == (Fraction(1, 6), Fraction(6))
    assert econ.is_rational


def test_types_sorted_by_patience():
    econ = Economy.from_betas(1, 0, 3, [(1, 2, 8), (3, 4, 1)])
    assert [t.beta for t in econ.types] == [1, 8]
    assert econ.types[0].e == 3


def test_budget_residual_helper(toda_walsh):
    assert budget_residual(toda_walsh, 2.5) < 1e-12
