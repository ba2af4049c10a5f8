# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled closed-loop kernels; same contract as _kernels_py."""

from libc.math cimport exp, log1p, sqrt, INFINITY

import numpy as np

KIND_IDEAL, KIND_PLASMA, KIND_DRUDE = 0, 1, 2
POL_TE, POL_TM, POL_BOTH = 0, 1, 2

COMPILED = True


cdef inline double _q_te(int kind, double alpha_p, double g, double y):
    if kind == 1:
        return alpha_p * alpha_p
    if y == 0.0:
        return 0.0
    return alpha_p * alpha_p * y / (y + g)


cdef inline double _r2_te(double q, double v):
    cdef double s = sqrt(v * v + q)
    cdef double r = q / ((s + v) * (s + v))
    return r * r


cdef inline double _r2_tm(double q, double y, double v):
    cdef double s, y2, num, den, r
    if y == 0.0:
        return 1.0
    s = sqrt(v * v + q)
    y2 = y * y
    num = q * (y2 * y2 - v * v * (2.0 * y2 + q))
    den = y2 * s + (y2 + q) * v
    r = num / (den * den)
    return r * r


def q_te(int kind, double alpha_p, double g, double y):
    if kind == 0:
        raise ValueError("q_te is defined for plasma and drude mirrors only")
    return _q_te(kind, alpha_p, g, y)


def eps_im(int kind, double alpha_p, double g, double y):
    if y <= 0.0:
        raise ValueError("eps_im requires y > 0; the y=0 limits live in q_te")
    if kind == 0:
        return INFINITY
    if kind == 1:
        return 1.0 + (alpha_p / y) * (alpha_p / y)
    return 1.0 + alpha_p * alpha_p / (y * (y + g))


def r_te(int kind, double alpha_p, double g, double y, double v):
    cdef double q, s
    if kind == 0:
        return 1.0
    q = _q_te(kind, alpha_p, g, y)
    s = sqrt(v * v + q)
    return q / ((s + v) * (s + v))


def r_tm(int kind, double alpha_p, double g, double y, double v):
    cdef double q, s, y2, num, den
    if kind == 0:
        return -1.0
    if y == 0.0:
        return -1.0
    q = _q_te(kind, alpha_p, g, y)
    s = sqrt(v * v + q)
    y2 = y * y
    num = q * (y2 * y2 - v * v * (2.0 * y2 + q))
    den = y2 * s + (y2 + q) * v
    return num / (den * den)


def clp(int kind, int pol, double alpha_p, double g, double y, double v):
    cdef double e, out, r, r2, q
    if v <= 0.0:
        raise ValueError("closed-loop function requires v > 0")
    e = exp(-2.0 * v)
    out = 0.0
    if kind == 0:
        if pol == 2:
            return 2.0 * e / (1.0 - e)
        return e / (1.0 - e)
    q = _q_te(kind, alpha_p, g, y)
    if pol == 0 or pol == 2:
        r2 = _r2_te(q, v)
        out += r2 * e / (1.0 - r2 * e)
    if pol == 1 or pol == 2:
        r2 = _r2_tm(q, y, v)
        out += r2 * e / (1.0 - r2 * e)
    return out


def phi_integrand(int kind, int pol, double alpha_p, double g, double y, t):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double v, e, q, r2, acc
    q = 0.0 if kind == 0 else _q_te(kind, alpha_p, g, y)
    for i in range(n):
        v = y + tv[i]
        e = exp(-2.0 * v)
        if kind == 0:
            acc = e / (1.0 - e)
            if pol == 2:
                acc += acc
        else:
            acc = 0.0
            if pol == 0 or pol == 2:
                r2 = _r2_te(q, v)
                acc += r2 * e / (1.0 - r2 * e)
            if pol == 1 or pol == 2:
                r2 = _r2_tm(q, y, v)
                acc += r2 * e / (1.0 - r2 * e)
        out[i] = v * v * acc
    return out_arr


def psi_integrand(int kind, int pol, double alpha_p, double g, double y, t):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double v, e, q, acc
    q = 0.0 if kind == 0 else _q_te(kind, alpha_p, g, y)
    for i in range(n):
        v = y + tv[i]
        e = exp(-2.0 * v)
        if kind == 0:
            acc = log1p(-e)
            if pol == 2:
                acc += acc
        else:
            acc = 0.0
            if pol == 0 or pol == 2:
                acc += log1p(-_r2_te(q, v) * e)
            if pol == 1 or pol == 2:
                acc += log1p(-_r2_tm(q, y, v) * e)
        out[i] = v * acc
    return out_arr


def delta_clp_te(double alpha_p, double x, u):
    cdef double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t n = uv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double v, e, q_p, q_d, r2, fp, fd
    q_p = alpha_p * alpha_p
    q_d = q_p * x / (x + 1.0) if x > 0.0 else 0.0
    for i in range(n):
        v = alpha_p * uv[i]
        e = exp(-2.0 * v)
        r2 = _r2_te(q_p, v)
        fp = r2 * e / (1.0 - r2 * e)
        if q_d == 0.0:
            fd = 0.0
        else:
            r2 = _r2_te(q_d, v)
            fd = r2 * e / (1.0 - r2 * e)
        out[i] = -v * v * (fd - fp)
    return out_arr
