# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Lambert W kernel: same contract as the pure twin ``_wpure``.

Halley iteration with region-dependent seeds (Corless et al. 1996
conventions) and branch verification through the unwinding integer; hot
loop for the Borel-plane evaluators, where every quadrature node costs
two W evaluations.
"""

import numpy as np

cimport numpy as cnp
from libc.complex cimport cexp as ccexp, clog as cclog, csqrt as ccsqrt, cabs as ccabs
from libc.math cimport log as clogd, round as cround

BACKEND_NAME = "compiled"

cdef double _EM1 = 0.36787944117144233
cdef double _E = 2.718281828459045
cdef double _PI = 3.141592653589793


cdef inline double complex _log_ccc(double complex x) noexcept nogil:
    # principal log, cut values taken as limits from above
    if x.imag == 0.0 and x.real < 0.0:
        return clogd(-x.real) + 1j * _PI
    return cclog(x)


cdef double complex _seed(double complex x, long k) noexcept nogil:
    cdef double complex L, p
    cdef double Lr
    cdef double ax = ccabs(x)
    cdef bint near_bp
    if k == 0:
        near_bp = ccabs(x + _EM1) <= 1.5
        if ax <= 1e-3:
            return x * (1.0 - x)
        if near_bp:
            return ccsqrt(2.0 * (_E * x + 1.0)) - 1.0
        L = _log_ccc(x)
        return L - cclog(L)
    near_bp = ccabs(x + _EM1) <= 0.35
    # the sheet adjacent to the real values near -1/e:
    # k = -1 from Im x >= 0 (incl. the cut itself), k = +1 from Im x < 0
    if near_bp and ((k == -1 and x.imag >= 0.0) or (k == 1 and x.imag < 0.0)):
        p = ccsqrt(2.0 * (_E * x + 1.0))
        return -1.0 - p - p * p / 3.0
    if k == -1 and x.imag == 0.0 and -_EM1 < x.real < 0.0:
        Lr = clogd(-x.real)
        if Lr > -2.0:
            return -1.0 - ccsqrt(2.0 * (_E * x + 1.0))
        return Lr - clogd(-Lr)
    L = _log_ccc(x) + 2j * _PI * k
    return L - cclog(L)


cdef inline long _branch_of(double complex w, double complex x) noexcept nogil:
    # unwinding integer K: w + Log w = Log x + 2 pi i K
    cdef double complex val
    if w.imag == 0.0:
        w = w.real
    val = (w + _log_ccc(w) - _log_ccc(x)) / (2j * _PI)
    return <long>cround(val.real)


cdef inline bint _branch_ok(double complex w, double complex x, long k) noexcept nogil:
    cdef long kk = _branch_of(w, x)
    if kk == k:
        return 1
    # real slice of branch -1: the unwinding integer reads 0 there
    return (k == -1 and kk == 0 and x.imag == 0.0 and w.imag == 0.0
            and w.real <= -1.0 + 1e-12)


cdef int _halley(double complex x, double complex w0, double tol, int max_iter,
                 double complex *w_out, double *res_out) noexcept nogil:
    cdef double complex w = w0, ew, f, wp1, dw
    cdef double scale = ccabs(x)
    cdef int i
    if scale < 1e-290:
        scale = 1e-290
    for i in range(max_iter):
        ew = ccexp(w)
        f = w * ew - x
        if ccabs(f) <= tol * scale:
            w_out[0] = w
            res_out[0] = ccabs(f)
            return 1
        wp1 = w + 1.0
        if wp1 == 0:
            w = w + 1e-8
            continue
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w = w - dw
        if ccabs(dw) <= 1e-16 * (2.0 + ccabs(w)):
            ew = ccexp(w)
            f = w * ew - x
            w_out[0] = w
            res_out[0] = ccabs(f)
            return 1 if ccabs(f) <= tol * scale else 0
    ew = ccexp(w)
    f = w * ew - x
    w_out[0] = w
    res_out[0] = ccabs(f)
    return 1 if ccabs(f) <= tol * scale else 0


cdef int _w_branch(double complex x, long k, double tol,
                   double complex *w_out, double *res_out) noexcept nogil:
    cdef double complex L
    cdef int ok
    if x.imag == 0.0:
        x = x.real   # cut values are limits from above
    if x == 0:
        w_out[0] = 0
        res_out[0] = 0.0 if k == 0 else 1e308
        return 1 if k == 0 else 0
    ok = _halley(x, _seed(x, k), tol, 100, w_out, res_out)
    if ok and _branch_ok(w_out[0], x, k):
        return 1
    # retry from the plain asymptotic seed of the requested branch
    L = _log_ccc(x) + 2j * _PI * k
    if L != 0:
        ok = _halley(x, L - cclog(L), tol, 100, w_out, res_out)
        if ok and _branch_ok(w_out[0], x, k):
            return 1
    return 0


def w_polish(x, w0, double tol, int max_iter=100):
    cdef double complex w
    cdef double res
    cdef int ok = _halley(x, w0, tol, max_iter, &w, &res)
    return w, res, bool(ok)


def w_scalar(x, long k, double tol=1e-13):
    cdef double complex w
    cdef double res
    cdef int ok = _w_branch(x, k, tol, &w, &res)
    return w, res, bool(ok)


def w_many(xs, long k, double tol=1e-13):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] flat = \
        np.ascontiguousarray(np.asarray(xs, dtype=np.complex128).ravel())
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty_like(flat)
    cdef Py_ssize_t i, n = flat.shape[0]
    cdef double complex w
    cdef double res, worst = 0.0, scale
    cdef int ok_all = 1, ok
    for i in range(n):
        ok = _w_branch(flat[i], k, tol, &w, &res)
        out[i] = w
        scale = ccabs(flat[i])
        if scale < 1e-290:
            scale = 1e-290
        if res / scale > worst:
            worst = res / scale
        ok_all = ok_all and ok
    shaped = out.reshape(np.asarray(xs).shape)
    return shaped, worst, bool(ok_all)
