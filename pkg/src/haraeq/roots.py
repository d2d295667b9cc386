"""Positive real roots of the reduced polynomial.

Rational coefficients get the certified path: square-free decomposition,
a Sturm chain over primitive integer polynomials (signs evaluated in
exact integer arithmetic), bisection refinement, and an exact-value snap
for rational roots.  Float coefficients fall back to sign-change
bracketing on a log grid plus bisection and are reported non-certified.
Repeated roots are never refined; they are flagged suspected-multiple and
surface as a "critical" classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateLeadingCoefficient, ZeroPolynomial
from .rationals import as_fraction
from .reduction import SparsePolynomial

__all__ = [
    "IsolatedRoot", "RootReport",
    "descartes_sign_changes", "isolate_positive_roots",
    "count_positive_roots", "cubic_discriminant", "prices_from_roots",
]

SIMPLE = "simple"
SUSPECTED_MULTIPLE = "suspected-multiple"


def descartes_sign_changes(poly: SparsePolynomial) -> int:
    """Sign flips between consecutive coefficients, ascending exponents."""
    changes = 0
    prev = 0
    for c in poly.coefficients():
        s = 1 if c > 0 else -1
        if prev != 0 and s != prev:
            changes += 1
        prev = s
    return changes


@dataclass(frozen=True)
class IsolatedRoot:
    value: object                 # Fraction when exact, else float midpoint
    bracket: tuple                # (lo, hi) enclosing interval
    multiplicity_flag: str        # SIMPLE or SUSPECTED_MULTIPLE
    exact: bool


@dataclass(frozen=True)
class RootReport:
    descartes_bound: int
    roots: tuple
    exact_count: object           # int when certified, else None
    certified: bool
    classification: str           # unique | multiple(k) | critical | inconclusive

    @property
    def count(self) -> int:
        return len(self.roots)


# ---------------------------------------------------------------------------
# dense rational polynomial helpers (ascending coefficient lists)

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _divmod_exact(num, den):
    """Polynomial division over the rationals."""
    num = [as_fraction(c) for c in num]
    den = [as_fraction(c) for c in den]
    if not _trim(den):
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    r = num[:]
    dlead = den[-1]
    while True:
        _trim(r)
        if len(r) < len(den):
            break
        shift = len(r) - len(den)
        factor = r[-1] / dlead
        q[shift] = factor
        for i, dc in enumerate(den):
            r[shift + i] -= factor * dc
        r.pop()
    return _trim(q), _trim(r)


def _gcd_poly(p, q):
    """Monic gcd over the rationals via Euclid."""
    a = [as_fraction(c) for c in p]
    b = [as_fraction(c) for c in q]
    while _trim(b):
        _, rem = _divmod_exact(a, b)
        a, b = b, rem
    a = _trim(a)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _primitive_int(p):
    """Scale a rational polynomial to primitive integer coefficients,
    preserving sign."""
    fracs = [as_fraction(c) for c in p]
    lcm = 1
    for c in fracs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fracs]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    return [c // g for c in ints] if g > 1 else ints


def _sign_at(ip, x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, exactly:
    homogeneous Horner on sum_i c_i num^i den^(d-i)."""
    num, den = x.numerator, x.denominator
    acc = ip[-1]
    dpow = 1
    for c in reversed(ip[:-1]):
        acc = acc * num + c * dpow * den
        dpow *= den
    if acc > 0:
        return 1
    if acc < 0:
        return -1
    return 0


def _sturm_chain(ip):
    """Sturm chain of a square-free integer polynomial, each element
    normalised back to primitive integers (positive scaling only)."""
    chain = [ip, _primitive_int(_deriv(ip))]
    while len(chain[-1]) > 1:
        _, rem = _divmod_exact(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(_primitive_int([-c for c in rem]))
    if not chain[-1]:
        chain.pop()
    return chain


def _variations(signs) -> int:
    out, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev != 0 and s != prev:
            out += 1
        prev = s
    return out


def _var_at(chain, x: Fraction) -> int:
    return _variations(_sign_at(p, x) for p in chain)


def _var_at_inf(chain) -> int:
    return _variations((1 if p[-1] > 0 else -1) for p in chain)


def _count_on(chain, lo: Fraction, hi: Fraction) -> int:
    """Distinct roots in the half-open interval (lo, hi]."""
    return _var_at(chain, lo) - _var_at(chain, hi)


def _root_upper_bound(ip) -> Fraction:
    lead = abs(ip[-1])
    biggest = max(abs(c) for c in ip)
    bound = 1 + Fraction(biggest, lead)
    power = Fraction(1)
    while power < bound:
        power *= 2
    return power


def _exact_low_degree(ip):
    """Exact positive roots of degree <= 2 integer polynomials, or None
    when they are irrational."""
    if len(ip) == 2:
        r = Fraction(-ip[0], ip[1])
        return [r] if r > 0 else []
    if len(ip) == 3:
        c0, c1, c2 = ip
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            return []
        s = math.isqrt(disc)
        if s * s != disc:
            return None
        roots = {Fraction(-c1 + s, 2 * c2), Fraction(-c1 - s, 2 * c2)}
        return sorted(r for r in roots if r > 0)
    return None


_SNAP_DENOMS = (8, 64, 1000, 10 ** 6, 10 ** 9, 10 ** 12)


def _try_snap(ip, lo: Fraction, hi: Fraction):
    """Look for an exact rational root inside a refined bracket."""
    mid = float((lo + hi) / 2)
    for d in _SNAP_DENOMS:
        cand = Fraction(mid).limit_denominator(d)
        if lo < cand < hi and _sign_at(ip, cand) == 0:
            return cand
    return None


def _refine_bracket(ip, lo, hi, slo, shi, tol: Fraction, rel: Fraction,
                    max_steps: int = 256):
    """Bisection on a sign-change bracket; returns (lo, hi) or an exact
    root hit on a midpoint."""
    for _ in range(max_steps):
        width = hi - lo
        if width <= tol and (lo > 0 and width <= rel * lo):
            break
        mid = (lo + hi) / 2
        smid = _sign_at(ip, mid)
        if smid == 0:
            return mid
        if smid == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _isolate_square_free(ip, tol: Fraction, rel: Fraction):
    """All positive roots of a square-free primitive integer polynomial.
    Returns a list of (value_or_None, (lo, hi)) with exact values where
    they exist."""
    exact_roots = []
    work = [as_fraction(c) for c in ip]

    while True:
        work_int = _primitive_int(work)
        if len(work_int) <= 1:
            return exact_roots, [], work_int
        low = _exact_low_degree(work_int)
        if low is not None:
            exact_roots.extend(low)
            return exact_roots, [], work_int
        chain = _sturm_chain(work_int)
        bound = _root_upper_bound(work_int)
        zero = Fraction(0)
        total = _var_at(chain, zero) - _var_at(chain, bound)
        stack = [(zero, bound, _var_at(chain, zero), _var_at(chain, bound))]
        brackets = []
        restart = None
        while stack and restart is None:
            lo, hi, vlo, vhi = stack.pop()
            k = vlo - vhi
            if k <= 0:
                continue
            if k == 1:
                slo, shi = _sign_at(work_int, lo), _sign_at(work_int, hi)
                if shi == 0:
                    restart = hi
                    break
                brackets.append((lo, hi, slo, shi))
                continue
            mid = (lo + hi) / 2
            if _sign_at(work_int, mid) == 0:
                restart = mid
                break
            vmid = _var_at(chain, mid)
            stack.append((lo, mid, vlo, vmid))
            stack.append((mid, hi, vmid, vhi))
        if restart is not None:
            exact_roots.append(restart)
            work, rem = _divmod_exact(work, [-restart, Fraction(1)])
            assert not rem
            continue

        resolved = []
        pending_restart = None
        for lo, hi, slo, shi in brackets:
            got = _refine_bracket(work_int, lo, hi, slo, shi, tol, rel)
            if isinstance(got, Fraction):
                pending_restart = got
                break
            lo, hi = got
            snap = _try_snap(work_int, lo, hi)
            if snap is not None:
                pending_restart = snap
                break
            resolved.append((None, (lo, hi)))
        if pending_restart is not None:
            exact_roots.append(pending_restart)
            work, rem = _divmod_exact(work, [-pending_restart, Fraction(1)])
            assert not rem
            continue
        assert total == len(brackets), "every counted root must land in a bracket"
        return exact_roots, resolved, work_int


def _isolate_rational(poly: SparsePolynomial, tol) -> RootReport:
    bound = descartes_sign_changes(poly)
    dense = [as_fraction(c) for c in poly.dense()]
    # q = 0 is never a positive root; strip it so constant term != 0
    while dense and dense[0] == 0:
        dense.pop(0)
    # snap float tolerances to the nearest power of ten so brackets stay
    # readable rationals
    tol = as_fraction(tol).limit_denominator(10 ** 15)
    rel = Fraction(1, 10 ** 13)

    gcd = _gcd_poly(dense, _deriv(dense))
    has_multiple = len(gcd) > 1
    square_free, rem = _divmod_exact(dense, gcd) if has_multiple else (dense, [])
    assert not _trim(list(rem))

    exact_roots, brackets, _ = _isolate_square_free(
        _primitive_int(square_free), tol, rel)

    gcd_int = _primitive_int(gcd) if has_multiple else None
    gcd_chain = _sturm_chain(gcd_int) if (gcd_int and len(gcd_int) > 1) else None

    def _is_repeated(value=None, lo=None, hi=None):
        if not has_multiple:
            return False
        if value is not None:
            return _sign_at(gcd_int, value) == 0
        return _count_on(gcd_chain, lo, hi) > 0 if gcd_chain else False

    roots = []
    for r in sorted(exact_roots):
        flag = SUSPECTED_MULTIPLE if _is_repeated(value=r) else SIMPLE
        pad = max(tol, abs(r) * rel)
        roots.append(IsolatedRoot(r, (r - pad, r + pad), flag, True))
    for _, (lo, hi) in brackets:
        flag = SUSPECTED_MULTIPLE if _is_repeated(lo=lo, hi=hi) else SIMPLE
        mid = (lo + hi) / 2
        roots.append(IsolatedRoot(mid, (lo, hi), flag, False))
    roots.sort(key=lambda ir: ir.value)

    exact_count = len(roots)
    if any(r.multiplicity_flag == SUSPECTED_MULTIPLE for r in roots):
        classification = "critical"
    elif exact_count == 1:
        classification = "unique"
    else:
        classification = f"multiple({exact_count})"
    return RootReport(bound, tuple(roots), exact_count, True, classification)


# ---------------------------------------------------------------------------
# float fallback

def _float_brackets(poly: SparsePolynomial, grid_points: int):
    coeffs = [float(c) for c in poly.dense()]
    lead = abs(coeffs[-1])
    k = 0
    while coeffs[k] == 0:
        k += 1
    trail = abs(coeffs[k])
    biggest = max(abs(c) for c in coeffs)
    hi = 2.0 * (1.0 + biggest / lead)
    lo = 0.5 / (1.0 + biggest / trail)
    from .kernels import poly_eval_grid
    import numpy as np

    exps = np.array([e for e, _ in poly.terms], dtype=np.int64)
    cs = np.array([float(c) for _, c in poly.terms], dtype=np.float64)
    xs = np.geomspace(lo, hi, grid_points)
    ys = poly_eval_grid(exps, cs, xs)
    sgn = np.sign(ys)
    out = []
    for i in range(len(xs) - 1):
        if sgn[i] == 0:
            continue
        if sgn[i + 1] != 0 and sgn[i] != sgn[i + 1]:
            out.append((float(xs[i]), float(xs[i + 1])))
    zeros = [float(xs[i]) for i in range(len(xs)) if sgn[i] == 0]
    return out, zeros, (exps, cs)


def _isolate_float(poly: SparsePolynomial, tol: float) -> RootReport:
    from .kernels import poly_refine

    bound = descartes_sign_changes(poly)
    points = 2048
    brackets, zeros, arrays = _float_brackets(poly, points)
    for _ in range(4):
        # parity mismatch with the Descartes bound means the grid is
        # blind to at least one crossing pair; densify and retry
        if (len(brackets) + len(zeros)) % 2 == bound % 2:
            break
        points *= 2
        brackets, zeros, arrays = _float_brackets(poly, points)
    exps, cs = arrays
    roots = [IsolatedRoot(z, (z, z), SIMPLE, False) for z in zeros]
    for lo, hi in brackets:
        lo, hi = poly_refine(exps, cs, lo, hi, tol, 1e-13, 200)
        roots.append(IsolatedRoot(0.5 * (lo + hi), (lo, hi), SIMPLE, False))
    roots.sort(key=lambda ir: ir.value)
    n = len(roots)
    if n % 2 != bound % 2:
        classification = "inconclusive"
    elif n == 1:
        classification = "unique"
    else:
        classification = f"multiple({n})"
    return RootReport(bound, tuple(roots), None, False, classification)


def isolate_positive_roots(poly: SparsePolynomial, tol=1e-12,
                           mode: str = "auto") -> RootReport:
    """Isolate and refine every positive real root of the polynomial.

    mode "rational" certifies the distinct-root count with a Sturm chain
    (requires rational coefficients); "float" uses grid bracketing and is
    never certified; "auto" picks by coefficient type.
    """
    if poly.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if mode == "auto":
        mode = "rational" if poly.is_rational else "float"
    if mode == "rational":
        if not poly.is_rational:
            raise ValueError("rational isolation needs rational coefficients")
        return _isolate_rational(poly, tol)
    return _isolate_float(poly, float(tol))


def count_positive_roots(poly: SparsePolynomial):
    """Exact number of distinct positive roots plus a square-free flag,
    via the Sturm chain alone (no bracketing or refinement).  Rational
    coefficients only."""
    if poly.is_zero:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    if not poly.is_rational:
        raise ValueError("exact counting needs rational coefficients")
    dense = [as_fraction(c) for c in poly.dense()]
    while dense and dense[0] == 0:
        dense.pop(0)
    if len(dense) <= 1:
        return 0, True
    gcd = _gcd_poly(dense, _deriv(dense))
    square_free = len(gcd) <= 1
    h = dense if square_free else _divmod_exact(dense, gcd)[0]
    ip = _primitive_int(h)
    if len(ip) <= 1:
        return 0, square_free
    chain = _sturm_chain(ip)
    count = _var_at(chain, Fraction(0)) - _var_at_inf(chain)
    return count, square_free


def cubic_discriminant(A, B, C, D):
    """B^2 C^2 - 4 A C^3 - 4 B^3 D - 27 A^2 D^2 + 18 A B C D."""
    if A == 0:
        raise DegenerateLeadingCoefficient("leading coefficient is zero")
    return (B * B * C * C - 4 * A * C ** 3 - 4 * B ** 3 * D
            - 27 * A * A * D * D + 18 * A * B * C * D)


def prices_from_roots(report: RootReport, n: int) -> list:
    """Map substituted-variable roots back to prices p = q^n; exact roots
    stay exact."""
    return [r.value ** n for r in report.roots]
