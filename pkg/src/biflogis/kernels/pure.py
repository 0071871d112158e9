"""NumPy implementations of the two hot kernels.

``layer_integrand`` evaluates the regularized boundary-layer integrand that
every curve quantity reduces to, on an array of substitution nodes.
``rk4_shoot`` integrates the planar shooting ODE with a fixed-step RK4 march.
Both have compiled twins in ``_native``; the package selects one at import
time and the two must agree to near machine precision on identical inputs.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["c_factor", "layer_integrand", "rk4_shoot"]

# Branch cuts for c_factor. For u below the series cut the truncated power
# series is exact to <1e-18; between the cuts expm1/log1p keeps the
# cancellation in f(1-u) at full relative precision; above, direct powers
# are already well conditioned.
_SERIES_CUT = 0.02
_MID_CUT = 0.5
_SERIES_TERMS = 12


def c_factor(u, p: float):
    """Normalized well depth c(u) = f(1-u) / ((p-1) u^2).

    f(s) = (p-1)/(p+1) - s^2 + 2 s^(p+1)/(p+1) vanishes to second order at
    s = 1, and c is its regular part: c(0) = 1, c(1) = 1/(p+1), c analytic on
    [0, 1] for p > 1. Accepts scalars or arrays on [0, 1].
    """
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    out = np.empty_like(u)

    lo = u < _SERIES_CUT
    hi = u >= _MID_CUT
    mid = ~(lo | hi)

    if np.any(lo):
        ul = u[lo]
        val = np.ones_like(ul)
        term = np.ones_like(ul)
        coef = 1.0
        for m in range(1, _SERIES_TERMS + 1):
            coef = -p / 3.0 if m == 1 else coef * (-(p - m) / (m + 2.0))
            term = term * ul
            val = val + coef * term
        out[lo] = val
    if np.any(mid):
        um = u[mid]
        f = um * (2.0 - um) - (2.0 / (p + 1.0)) * (-np.expm1((p + 1.0) * np.log1p(-um)))
        out[mid] = f / ((p - 1.0) * um * um)
    if np.any(hi):
        uh = u[hi]
        s = 1.0 - uh
        f = (p - 1.0) / (p + 1.0) - s * s + (2.0 / (p + 1.0)) * s ** (p + 1.0)
        out[hi] = f / ((p - 1.0) * uh * uh)

    return out[0] if scalar else out


def layer_integrand(v, eps: float, em: float, p: float, qpow: float):
    """Integrand of the layer-regularized moment J_q after s = 1 - x^2,
    x = sqrt(2 eps/(p-1)) sinh(v).

    eps and em = 1 - eps are passed separately so callers can supply
    em = -expm1(-t) and keep full precision when eps is tiny. Returns
    (1-u)^qpow * sqrt(H0/H) with H0 = 2 eps + (p-1) u and
    H = eps (2-u) + em (p-1) u c(u), u = x^2 clamped to [0, 1].
    """
    v = np.atleast_1d(np.asarray(v, dtype=float))
    x = math.sqrt(2.0 * eps / (p - 1.0)) * np.sinh(v)
    u = np.minimum(x * x, 1.0)
    h0 = 2.0 * eps + (p - 1.0) * u
    h = eps * (2.0 - u) + em * (p - 1.0) * u * c_factor(u, p)
    r = np.sqrt(h0 / h)
    if qpow != 0.0:
        r = r * (1.0 - u) ** qpow
    return r


def rk4_shoot(gamma: float, slope: float, p: float, n_steps: int, step: float):
    """Fixed-step RK4 for w'' = sign(w)|w|^p - gamma w from w(0)=0, w'(0)=slope.

    Returns (ws, zs, n_filled, status): trajectory arrays of length
    n_steps + 1 (zero-padded past n_filled), the count of valid samples, and
    status 0 on completion or 1 if |w| exceeded the overflow guard.
    """
    ws = np.zeros(n_steps + 1)
    zs = np.zeros(n_steps + 1)
    w = 0.0
    z = slope
    ws[0] = w
    zs[0] = z
    h = step
    overflow = 1e12

    for i in range(1, n_steps + 1):
        k1w = z
        k1z = math.copysign(abs(w) ** p, w) - gamma * w
        w2 = w + 0.5 * h * k1w
        k2w = z + 0.5 * h * k1z
        k2z = math.copysign(abs(w2) ** p, w2) - gamma * w2
        w3 = w + 0.5 * h * k2w
        k3w = z + 0.5 * h * k2z
        k3z = math.copysign(abs(w3) ** p, w3) - gamma * w3
        w4 = w + h * k3w
        k4w = z + h * k3z
        k4z = math.copysign(abs(w4) ** p, w4) - gamma * w4
        w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        z += (h / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
        ws[i] = w
        zs[i] = z
        if abs(w) > overflow:
            return ws, zs, i + 1, 1

    return ws, zs, n_steps + 1, 0
