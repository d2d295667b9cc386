"""Independent equilibrium finder working directly on the excess demand.

Log-spaced sign scan plus bisection; exists to falsify the polynomial
route, so it shares no code with it beyond the demand formula itself.
The scan can densify when local curvature hints at a pair of crossings
hiding between grid points, but tangential equilibria are invisible to
any sign scan by construction; the Sturm side owns those.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import kernels
from .errors import RangeInvalid
from .roots import SUSPECTED_MULTIPLE, RootReport

if TYPE_CHECKING:
    from .model import Economy

__all__ = ["OracleResult", "Agreement", "scan", "agree",
           "DEFAULT_RANGE", "DEFAULT_POINTS"]

DEFAULT_RANGE = (1e-6, 1e6)
DEFAULT_POINTS = 1000


@dataclass(frozen=True)
class OracleResult:
    brackets: tuple               # (p_lo, p_hi) pairs with a sign change
    prices: tuple                 # bisection-refined roots, ascending
    scan_range: tuple
    grid_points: int              # density of the final scan
    densify_rounds: int
    count_history: tuple          # bracket count after each scan pass

    @property
    def count_stable(self) -> bool:
        return len(set(self.count_history)) <= 1


def _bracket_grid(ys, xs):
    sgn = np.sign(ys)
    brackets = []
    for i in range(len(xs) - 1):
        if sgn[i] == 0:
            brackets.append((xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]))
        elif sgn[i + 1] != 0 and sgn[i] != sgn[i + 1]:
            brackets.append((xs[i], xs[i + 1]))
    return brackets


def _suspicious_curvature(ys) -> bool:
    """Parabola through each grid triple; a vertex that pokes through
    zero while its endpoints agree in sign marks a possible missed
    double crossing."""
    y0, y1, y2 = ys[:-2], ys[1:-1], ys[2:]
    d2 = y2 - 2.0 * y1 + y0
    d1 = 0.5 * (y2 - y0)
    same_side = (np.sign(y0) == np.sign(y2)) & (np.sign(y0) == np.sign(y1)) & (np.sign(y1) != 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        tstar = -d1 / d2
        vertex = y1 + 0.5 * d1 * tstar
    inside = np.isfinite(tstar) & (np.abs(tstar) <= 1.0)
    dips = inside & same_side & (np.sign(vertex) != np.sign(y1))
    return bool(np.any(dips))


def scan(econ: "Economy", p_min: float = DEFAULT_RANGE[0],
         p_max: float = DEFAULT_RANGE[1], points: int = DEFAULT_POINTS) -> OracleResult:
    """Bracket and refine every transversal zero of Zx in [p_min, p_max]."""
    if not (0 < p_min < p_max):
        raise RangeInvalid(f"need 0 < p_min < p_max, got ({p_min}, {p_max})")
    if points < 100:
        raise RangeInvalid(f"need at least 100 grid points, got {points}")
    e, f, sigma = econ.float_arrays()
    a, b = float(econ.hara.a), float(econ.hara.b)
    eps = float(econ.hara.epsilon)

    counts = []
    rounds = 0
    npts = points
    while True:
        xs = np.geomspace(p_min, p_max, npts)
        ys = kernels.zx_grid(e, f, sigma, a, b, eps, xs)
        brackets = _bracket_grid(ys, xs)
        counts.append(len(brackets))
        if rounds >= 4 or not _suspicious_curvature(ys):
            break
        rounds += 1
        npts *= 2

    prices = tuple(
        kernels.zx_refine(e, f, sigma, a, b, eps, lo, hi, 1e-12, 200)
        for lo, hi in brackets
    )
    return OracleResult(tuple((float(lo), float(hi)) for lo, hi in brackets),
                        tuple(sorted(prices)), (p_min, p_max), npts,
                        rounds, tuple(counts))


@dataclass(frozen=True)
class Agreement:
    ok: bool
    discrepancies: tuple = ()
    notes: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def agree(report: RootReport, oracle: OracleResult, rtol: float = 1e-9,
          *, n: int = 1) -> Agreement:
    """Compare the polynomial route against the oracle.

    Prices match when within rtol relative of each other.  Roots the
    Sturm side flagged suspected-multiple may legitimately be invisible
    to the sign scan; those are noted, not counted as discrepancies.
    Everything else is itemised (extra-root, missing-root, shifted-root)
    and never silently reconciled.
    """
    poly_simple = []
    poly_critical = []
    for r in report.roots:
        p = float(r.value) ** n
        if r.multiplicity_flag == SUSPECTED_MULTIPLE:
            poly_critical.append(p)
        else:
            poly_simple.append(p)
    poly_simple.sort()
    oracle_prices = list(oracle.prices)

    def close(x, y):
        return abs(x - y) <= rtol * max(abs(x), abs(y), 1e-300)

    unmatched_oracle = oracle_prices[:]
    unmatched_poly = []
    discrepancies = []
    notes = []
    for p in poly_simple:
        hit = next((o for o in unmatched_oracle if close(p, o)), None)
        if hit is None:
            unmatched_poly.append(p)
        else:
            unmatched_oracle.remove(hit)
    for p in poly_critical:
        hit = next((o for o in unmatched_oracle if close(p, o)), None)
        if hit is not None:
            unmatched_oracle.remove(hit)
        else:
            notes.append(("critical-unseen-by-scan", p))

    # leftovers pair off in ascending order as shifted roots; the rest
    # are genuinely extra (polynomial-only) or missing (oracle-only)
    unmatched_poly.sort()
    unmatched_oracle.sort()
    while unmatched_poly and unmatched_oracle:
        discrepancies.append(("shifted-root",
                              (unmatched_poly.pop(0), unmatched_oracle.pop(0))))
    discrepancies.extend(("extra-root", p) for p in unmatched_poly)
    discrepancies.extend(("missing-root", o) for o in unmatched_oracle)

    return Agreement(not discrepancies, tuple(discrepancies), tuple(notes))
