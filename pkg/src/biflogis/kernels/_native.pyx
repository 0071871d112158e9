# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels in ``pure``.

Same algorithms, same branch cuts, scalar C loops instead of vectorized
NumPy. Selected automatically at package import when the extension built.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt, sinh, fabs, pow, expm1, log1p, copysign

cnp.import_array()

cdef double _SERIES_CUT = 0.02
cdef double _MID_CUT = 0.5
cdef int _SERIES_TERMS = 12


cdef double _c_scalar(double u, double p) noexcept nogil:
    cdef double val, term, coef, f, s
    cdef int m
    if u < _SERIES_CUT:
        val = 1.0
        term = 1.0
        coef = 1.0
        for m in range(1, _SERIES_TERMS + 1):
            if m == 1:
                coef = -p / 3.0
            else:
                coef = coef * (-(p - m) / (m + 2.0))
            term = term * u
            val = val + coef * term
        return val
    elif u < _MID_CUT:
        f = u * (2.0 - u) - (2.0 / (p + 1.0)) * (-expm1((p + 1.0) * log1p(-u)))
        return f / ((p - 1.0) * u * u)
    else:
        s = 1.0 - u
        f = (p - 1.0) / (p + 1.0) - s * s + (2.0 / (p + 1.0)) * pow(s, p + 1.0)
        return f / ((p - 1.0) * u * u)


def c_factor(u, double p):
    """Normalized well depth c(u) = f(1-u) / ((p-1) u^2); see ``pure.c_factor``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] uu = \
        np.ascontiguousarray(np.atleast_1d(np.asarray(u, dtype=np.float64)))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(uu.shape[0])
    cdef Py_ssize_t i, n = uu.shape[0]
    for i in range(n):
        out[i] = _c_scalar(uu[i], p)
    if np.ndim(u) == 0:
        return out[0]
    return out


def layer_integrand(v, double eps, double em, double p, double qpow):
    """Layer moment integrand on nodes v; see ``pure.layer_integrand``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vv = \
        np.ascontiguousarray(np.atleast_1d(np.asarray(v, dtype=np.float64)))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(vv.shape[0])
    cdef Py_ssize_t i, n = vv.shape[0]
    cdef double w0 = sqrt(2.0 * eps / (p - 1.0))
    cdef double x, u, h0, h, r
    with nogil:
        for i in range(n):
            x = w0 * sinh(vv[i])
            u = x * x
            if u > 1.0:
                u = 1.0
            h0 = 2.0 * eps + (p - 1.0) * u
            h = eps * (2.0 - u) + em * (p - 1.0) * u * _c_scalar(u, p)
            r = sqrt(h0 / h)
            if qpow != 0.0:
                r = r * pow(1.0 - u, qpow)
            out[i] = r
    return out


def rk4_shoot(double gamma, double slope, double p, int n_steps, double step):
    """Fixed-step RK4 shooting march; see ``pure.rk4_shoot``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ws = np.zeros(n_steps + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] zs = np.zeros(n_steps + 1)
    cdef double w = 0.0, z = slope, h = step
    cdef double k1w, k1z, k2w, k2z, k3w, k3z, k4w, k4z, w2, w3, w4
    cdef double overflow = 1e12
    cdef int i, filled = n_steps + 1, status = 0
    ws[0] = w
    zs[0] = z
    with nogil:
        for i in range(1, n_steps + 1):
            k1w = z
            k1z = copysign(pow(fabs(w), p), w) - gamma * w
            w2 = w + 0.5 * h * k1w
            k2w = z + 0.5 * h * k1z
            k2z = copysign(pow(fabs(w2), p), w2) - gamma * w2
            w3 = w + 0.5 * h * k2w
            k3w = z + 0.5 * h * k2z
            k3z = copysign(pow(fabs(w3), p), w3) - gamma * w3
            w4 = w + h * k3w
            k4w = z + h * k3z
            k4z = copysign(pow(fabs(w4), p), w4) - gamma * w4
            w = w + (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
            z = z + (h / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
            ws[i] = w
            zs[i] = z
            if fabs(w) > overflow:
                filled = i + 1
                status = 1
                break
    return ws, zs, filled, status
