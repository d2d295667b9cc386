"""Pure Python / numpy fallback for the float hot paths.

Same signatures and semantics as the compiled haraeq._kernels module;
grid evaluation is vectorised with numpy, the scalar bisection loops are
plain Python.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def zx_value(e, f, sigma, a, b, eps, p):
    """Aggregate excess demand for good x at one price, floats only."""
    aeps = a * eps
    peps = p ** eps
    total = 0.0
    rx = 0.0
    for ei, fi, si in zip(e, f, sigma):
        total += (b - b * si * peps + aeps * (p * ei + fi)) / (aeps * (p + si * peps))
        rx += ei
    return total - rx


def zx_grid(e, f, sigma, a, b, eps, prices):
    p = np.asarray(prices, dtype=np.float64)
    peps = p ** eps
    aeps = a * eps
    out = np.zeros_like(p)
    for ei, fi, si in zip(e, f, sigma):
        out += (b - b * si * peps + aeps * (p * ei + fi)) / (aeps * (p + si * peps))
    return out - math.fsum(e)


def zx_refine(e, f, sigma, a, b, eps, lo, hi, rtol, max_iter):
    """Bisect a sign-change bracket of Zx down to relative width rtol."""
    ylo = zx_value(e, f, sigma, a, b, eps, lo)
    if ylo == 0.0:
        return lo
    for _ in range(max_iter):
        mid = math.sqrt(lo * hi) if lo > 0 else 0.5 * (lo + hi)
        ymid = zx_value(e, f, sigma, a, b, eps, mid)
        if ymid == 0.0:
            return mid
        if (ymid > 0.0) == (ylo > 0.0):
            lo, ylo = mid, ymid
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            break
    return 0.5 * (lo + hi)


def poly_eval(exps, coeffs, x):
    total = 0.0
    for e, c in zip(exps, coeffs):
        total += c * x ** int(e)
    return total


def poly_eval_grid(exps, coeffs, xs):
    xs = np.asarray(xs, dtype=np.float64)
    out = np.zeros_like(xs)
    for e, c in zip(exps, coeffs):
        out += c * xs ** int(e)
    return out


def poly_refine(exps, coeffs, lo, hi, tol_abs, tol_rel, max_iter):
    """Bisect a sign-change bracket of the sparse polynomial; returns the
    narrowed (lo, hi)."""
    ylo = poly_eval(exps, coeffs, lo)
    if ylo == 0.0:
        return lo, lo
    for _ in range(max_iter):
        if hi - lo <= tol_abs and hi - lo <= tol_rel * max(lo, 1e-300):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        ymid = poly_eval(exps, coeffs, mid)
        if ymid == 0.0:
            return mid, mid
        if (ymid > 0.0) == (ylo > 0.0):
            lo, ylo = mid, ymid
        else:
            hi = mid
    return lo, hi
