"""Elementary symmetric sums of the sigma weights and the polynomial
coefficients built from them.

Two tables are maintained: esym(t) over all c weights and esym_omit(i, t)
over the c-1 weights with index i left out.  Both are filled by the
append-one-weight recurrences

    esym_k(t)         = esym_{k-1}(t) + sigma_k * esym_{k-1}(t-1)
    esym_omit_k(i, t) = esym_omit_{k-1}(i, t) + sigma_k * esym_omit_{k-1}(i, t-1)   (i < k)
    esym_omit_k(k, t) = esym_{k-1}(t)

which cost O(c^3) in total; brute-force subset enumeration survives only
as a test oracle.  Out-of-range orders read as zero so the boundary
conventions need no special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import IndexOutOfRange

if TYPE_CHECKING:
    from .model import Economy

__all__ = [
    "SigmaTables", "PolyCoefficients",
    "build_sigma_tables", "endowment_sigma_sum", "build_coefficients",
]


@dataclass(frozen=True)
class SigmaTables:
    """full[t] = esym(t) for t = 0..c; omit[i][t] = esym_omit(i, t) for
    t = 0..c (slot t = c is zero by convention)."""

    sigma: tuple
    full: tuple
    omit: tuple

    @property
    def c(self) -> int:
        return len(self.sigma)

    def esym(self, t: int):
        if 0 <= t <= self.c:
            return self.full[t]
        return 0

    def esym_omit(self, i: int, t: int):
        if 0 <= t < self.c:
            return self.omit[i][t]
        return 0

    def product(self):
        return self.full[self.c]


def build_sigma_tables(sigma) -> SigmaTables:
    """Fill both tables for a vector of positive weights, length >= 2."""
    sigma = tuple(sigma)
    c = len(sigma)
    if c < 2:
        raise IndexOutOfRange("need at least two weights")
    full = [1, sigma[0]]          # esym over the first weight only
    omit = [[1]]                  # omitting the only weight so far
    for k in range(1, c):
        sk = sigma[k]
        new_omit = []
        for i in range(k):
            prev = omit[i]
            row = [1]
            for t in range(1, k + 1):
                left = prev[t] if t < len(prev) else 0
                row.append(left + sk * prev[t - 1])
            new_omit.append(row)
        new_omit.append(list(full))          # omitting the new weight itself
        new_full = [1]
        for t in range(1, k + 2):
            left = full[t] if t < len(full) else 0
            new_full.append(left + sk * full[t - 1])
        full, omit = new_full, new_omit
    # pad omit rows with the zero convention at t = c
    omit_padded = tuple(tuple(row + [0] * (c + 1 - len(row))) for row in omit)
    return SigmaTables(sigma, tuple(full), omit_padded)


def endowment_sigma_sum(tables: SigmaTables, endowments, t: int, *, extended: bool = False):
    """rx * esym(t) - sum_i e_i * esym_omit(i, t).

    Strictly positive for 1 <= t <= c-1 whenever the endowments are
    nonnegative with a positive total; this positivity is what forces a
    single sign change in the ordered coefficient ladder.  Orders outside
    [1, c-1] raise unless extended=True (the recurrence tests need the
    t = c slot, where the value degenerates to rx * product(sigma)).
    """
    c = tables.c
    lo, hi = (0, c) if extended else (1, c - 1)
    if not lo <= t <= hi:
        raise IndexOutOfRange(f"order t={t} outside [{lo}, {hi}] for c={c}")
    endowments = tuple(endowments)
    if len(endowments) != c:
        raise IndexOutOfRange("one endowment per weight required")
    rx = sum(endowments)
    return rx * tables.esym(t) - sum(
        e_i * tables.esym_omit(i, t) for i, e_i in enumerate(endowments)
    )


@dataclass(frozen=True)
class PolyCoefficients:
    """Coefficient ladder of the reduced excess-demand polynomial.

    y_weight[t] (t = 0..c-1) multiplies the y-endowment side and is
    strictly positive; x_weight[t] (t = 1..c) multiplies the x side and
    is strictly positive as well, split as x_weight = x_endow + x_shift
    where x_shift carries the b/(a*eps) intercept terms (zero when b = 0).
    Index 0 of the x-side tuples is unused padding.
    """

    tables: SigmaTables
    x_endow: tuple
    x_shift: tuple
    x_weight: tuple
    y_weight: tuple

    @property
    def c(self) -> int:
        return self.tables.c


def build_coefficients(econ: "Economy", tables: SigmaTables | None = None,
                       epsilon=None) -> PolyCoefficients:
    """Evaluate every ladder coefficient for an economy.

    epsilon overrides the economy's own exponent in the b/(a*eps) scale
    factor; the reduction passes its rational surrogate here so the
    polynomial and the perturbed demand function share coefficients
    exactly.
    """
    if tables is None:
        tables = build_sigma_tables(econ.sigmas)
    if epsilon is None:
        epsilon = econ.hara.epsilon
    c = tables.c
    a, b = econ.hara.a, econ.hara.b
    ex, ey = econ.endowments_x, econ.endowments_y
    shift = b / (a * epsilon)

    x_endow = [0] * (c + 1)
    x_shift = [0] * (c + 1)
    x_weight = [0] * (c + 1)
    for t in range(1, c):
        x_endow[t] = endowment_sigma_sum(tables, ex, t)
        x_shift[t] = shift * sum(
            tables.sigma[i] * tables.esym_omit(i, t - 1) for i in range(c)
        )
        x_weight[t] = x_endow[t] + x_shift[t]
    x_weight[c] = tables.product() * (econ.rx + c * shift)

    y_weight = [0] * c
    y_weight[0] = econ.ry + c * shift
    for t in range(1, c):
        y_weight[t] = sum(
            (ey[i] + shift) * tables.esym_omit(i, t) for i in range(c)
        )
    return PolyCoefficients(tables, tuple(x_endow), tuple(x_shift),
                            tuple(x_weight), tuple(y_weight))
