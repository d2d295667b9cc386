# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float kernels: excess-demand evaluation on price grids and
the scalar bisection loops.  Mirrors haraeq._kernels_py exactly."""

from libc.math cimport pow, sqrt

import numpy as np

BACKEND = "cython"


cdef double _zx(double[::1] e, double[::1] f, double[::1] sigma,
                double a, double b, double eps, double p) nogil:
    cdef Py_ssize_t i, c = e.shape[0]
    cdef double aeps = a * eps
    cdef double peps = pow(p, eps)
    cdef double total = 0.0
    cdef double rx = 0.0
    for i in range(c):
        total += (b - b * sigma[i] * peps + aeps * (p * e[i] + f[i])) / (
            aeps * (p + sigma[i] * peps))
        rx += e[i]
    return total - rx


def zx_value(e, f, sigma, double a, double b, double eps, double p):
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=np.float64)
    cdef double[::1] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef double[::1] sv = np.ascontiguousarray(sigma, dtype=np.float64)
    return _zx(ev, fv, sv, a, b, eps, p)


def zx_grid(e, f, sigma, double a, double b, double eps, prices):
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=np.float64)
    cdef double[::1] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef double[::1] sv = np.ascontiguousarray(sigma, dtype=np.float64)
    cdef double[::1] pv = np.ascontiguousarray(prices, dtype=np.float64)
    cdef Py_ssize_t k, npts = pv.shape[0]
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for k in range(npts):
            ov[k] = _zx(ev, fv, sv, a, b, eps, pv[k])
    return out


def zx_refine(e, f, sigma, double a, double b, double eps,
              double lo, double hi, double rtol, int max_iter):
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=np.float64)
    cdef double[::1] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef double[::1] sv = np.ascontiguousarray(sigma, dtype=np.float64)
    cdef double ylo = _zx(ev, fv, sv, a, b, eps, lo)
    cdef double mid, ymid
    cdef int it
    if ylo == 0.0:
        return lo
    for it in range(max_iter):
        mid = sqrt(lo * hi) if lo > 0.0 else 0.5 * (lo + hi)
        ymid = _zx(ev, fv, sv, a, b, eps, mid)
        if ymid == 0.0:
            return mid
        if (ymid > 0.0) == (ylo > 0.0):
            lo = mid
            ylo = ymid
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            break
    return 0.5 * (lo + hi)


cdef double _ipow(double x, long long n) nogil:
    cdef double result = 1.0
    cdef double base = x
    cdef long long k = n
    while k > 0:
        if k & 1:
            result *= base
        base *= base
        k >>= 1
    return result


cdef double _poly(long long[::1] exps, double[::1] coeffs, double x) nogil:
    cdef Py_ssize_t i, nterms = exps.shape[0]
    cdef double total = 0.0
    for i in range(nterms):
        total += coeffs[i] * _ipow(x, exps[i])
    return total


def poly_eval(exps, coeffs, double x):
    cdef long long[::1] ev = np.ascontiguousarray(exps, dtype=np.int64)
    cdef double[::1] cv = np.ascontiguousarray(coeffs, dtype=np.float64)
    return _poly(ev, cv, x)


def poly_eval_grid(exps, coeffs, xs):
    cdef long long[::1] ev = np.ascontiguousarray(exps, dtype=np.int64)
    cdef double[::1] cv = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef Py_ssize_t k, npts = xv.shape[0]
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for k in range(npts):
            ov[k] = _poly(ev, cv, xv[k])
    return out


def poly_refine(exps, coeffs, double lo, double hi,
                double tol_abs, double tol_rel, int max_iter):
    cdef long long[::1] ev = np.ascontiguousarray(exps, dtype=np.int64)
    cdef double[::1] cv = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef double ylo = _poly(ev, cv, lo)
    cdef double mid, ymid, floor_lo
    cdef int it
    if ylo == 0.0:
        return lo, lo
    for it in range(max_iter):
        floor_lo = lo if lo > 1e-300 else 1e-300
        if hi - lo <= tol_abs and hi - lo <= tol_rel * floor_lo:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        ymid = _poly(ev, cv, mid)
        if ymid == 0.0:
            return mid, mid
        if (ymid > 0.0) == (ylo > 0.0):
            lo = mid
            ylo = ymid
        else:
            hi = mid
    return lo, hi
