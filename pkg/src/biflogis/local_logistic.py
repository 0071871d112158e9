"""Exact solution curve of the local problem -w'' + w^p = gamma w on (0, 1).

Every positive Dirichlet solution is symmetric about x = 1/2 with amplitude
k = w(1/2), and quadrature of the first integral gives the half-interval
traversal time

    T(k, gamma) = gamma^{-1/2} * J0(eps),    eps = 1 - k^{p-1}/gamma,

where J0 is the q = 0 case of the moment family

    J_q(eps) = int_0^1 s^q F(s)^{-1/2} ds,
    F(s) = eps (1 - s^2) + (1 - eps) f(s),
    f(s) = (1 - s^2) - (2/(p+1)) (1 - s^{p+1}).

The solution condition T = 1/2 then pins the whole curve to one parameter.
This module parameterizes it by the layer coordinate t = -ln(eps) in (0, inf):

    gamma = 4 J0^2,  k^{p-1} = 4 em J0^2,  d^2 = k^2 J2/J0,
    ||w||_q^q = k^q J_q/J0,       em = 1 - eps = -expm1(-t),

so the small-amplitude end (t -> 0, gamma -> pi^2) and the boundary-layer end
(t -> inf, gamma ~ k^{p-1}) are both reachable without cancellation: eps is
never formed by subtraction, and beyond t = T_ASYM the moments switch to the
exact-to-float asymptote J_q = t/sqrt(p-1) + B_q with B_q calibrated once per
(p, q) by quadrature. All inverse problems (given k, gamma, or d) are single
Brent root-finds on a log-monotone residual in tau = ln t.

The moments themselves are computed after s = 1 - x^2, x = w0 sinh v with
w0 = sqrt(2 eps/(p-1)), which absorbs both the endpoint square root and the
eps-width layer; the transformed integrand lives in ``kernels``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidBracket, NoSolution
from .quadrature import GAUSS_LEGENDRE, QuadSpec, integrate
from .rootfind import solve_monotone

__all__ = [
    "LocalParams",
    "LocalPoint",
    "Profile",
    "T_ASYM",
    "phi",
    "time_map",
    "solve_gamma",
    "q_norm",
    "point_q_norm",
    "point_from_k",
    "point_from_gamma",
    "solve_for_d",
    "sample_profile",
]

PI2 = math.pi ** 2

# Switch point of the moment evaluator: for t >= T_ASYM (eps <= 1e-18) the
# linear asymptote in t is exact to well below float64 resolution of J_q.
T_ASYM = -math.log(1e-18)

# Walls for the tau = ln t root-finds. exp(-700) is still a normal double;
# exp(55) puts gamma near 1e47, far beyond any supported input.
_TAU_LO = -700.0
_TAU_HI = 55.0


@dataclass(frozen=True)
class LocalParams:
    """Problem exponent and quadrature policy for the local curve."""

    p: float
    quad: QuadSpec = QuadSpec()

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > 1.0):
            raise ValueError(f"p must be finite and > 1, got {self.p}")
        if self.quad.rule != GAUSS_LEGENDRE:
            # Moment integrands are analytic after the sinh substitution;
            # Gauss panels converge uniformly in eps there.
            object.__setattr__(self, "quad", self.quad.with_rule(GAUSS_LEGENDRE))


@dataclass(frozen=True)
class LocalPoint:
    """One point of the curve: amplitude k, eigenvalue gamma, L2 norm d.

    layer_t carries the internal coordinate t = -ln(1 - k^{p-1}/gamma) when
    the point came from a solver; it lets downstream sampling avoid
    re-deriving eps from a catastrophic subtraction.
    """

    k: float
    gamma: float
    d: float
    p: float
    layer_t: float | None = None

    def __post_init__(self):
        for name in ("k", "gamma", "d", "p"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be finite and positive, got {v}")
        if self.gamma < PI2 * (1.0 - 1e-12):
            raise ValueError(f"gamma must be >= pi^2, got {self.gamma}")
        # gamma > k^{p-1}, compared in log space with 1e-12 slack: at the
        # boundary-layer end the two coincide to the last float64 bit.
        if math.log(self.gamma) + 1e-12 < (self.p - 1.0) * math.log(self.k):
            raise ValueError("gamma must exceed k^(p-1)")
        if not (self.d < self.k):
            raise ValueError("d must lie strictly below k")


@dataclass(frozen=True)
class Profile:
    """Sampled solution profile w(x) on [0, 1], symmetric about x = 1/2."""

    xs: np.ndarray
    ws: np.ndarray
    k: float
    gamma: float
    p: float

    @property
    def nodes(self):
        """Ordered (x, w) pairs."""
        return list(zip(self.xs.tolist(), self.ws.tolist()))

    def __len__(self):
        return len(self.xs)


def phi(s, p: float):
    """(1 - s^{p+1}) / (1 - s^2), continued analytically to s = 1.

    Vectorized over s in [0, 1]; phi(1) = (p+1)/2. Near s = 1 the ratio is
    replaced by its expansion in u = 1 - s to avoid 0/0 noise.
    """
    s_arr = np.asarray(s, dtype=float)
    scalar = s_arr.ndim == 0
    s_arr = np.atleast_1d(s_arr)
    out = np.empty_like(s_arr)
    u = 1.0 - s_arr
    near = u < 1e-6
    mid = ~near & (u < 0.5)
    big = u >= 0.5
    if np.any(big):
        sb = s_arr[big]
        out[big] = (1.0 - sb ** (p + 1.0)) / (1.0 - sb * sb)
    if np.any(mid):
        um = u[mid]
        # 1 - s^{p+1} through expm1/log1p: exact cancellation control down
        # to the series handoff
        num = -np.expm1((p + 1.0) * np.log1p(-um))
        out[mid] = num / (um * (2.0 - um))
    if np.any(near):
        un = u[near]
        out[near] = 0.5 * (p + 1.0) * (
            1.0 - 0.5 * (p - 1.0) * un
            + (p - 1.0) * (2.0 * p - 3.0) / 12.0 * un * un
        )
    return float(out[0]) if scalar else out


# --- moment evaluation ------------------------------------------------------

_B_CACHE: dict = {}


def _layer_moment(eps: float, em: float, p: float, qpow: float,
                  quad: QuadSpec) -> float:
    """J_q(eps) by adaptive Gauss panels in the sinh variable.

    em = 1 - eps is passed separately so callers can hand over
    -expm1(-t) at full precision when eps is tiny.
    """
    v_top = math.asinh(math.sqrt((p - 1.0) / (2.0 * eps)))

    def f(v):
        return kernels.layer_integrand(v, eps, em, p, qpow)

    res = integrate(f, 0.0, v_top, quad)
    return (2.0 / math.sqrt(p - 1.0)) * res.value


def _b_shift(p: float, qpow: float, quad: QuadSpec) -> float:
    """Offset B_q of the large-t asymptote J_q = t/sqrt(p-1) + B_q.

    Calibrated once per (p, q, tolerance) at eps = 1e-18, where the residual
    O(eps log(1/eps)) sits far below float64 resolution of J_q itself.
    """
    key = (p, qpow, quad.rel_tol, quad.abs_tol)
    val = _B_CACHE.get(key)
    if val is None:
        eps0 = 1e-18
        val = _layer_moment(eps0, 1.0 - eps0, p, qpow, quad) \
            - T_ASYM / math.sqrt(p - 1.0)
        _B_CACHE[key] = val
    return val


def _moment_at_t(t: float, p: float, qpow: float, quad: QuadSpec) -> float:
    """J_q at layer coordinate t = -ln(eps)."""
    if t >= T_ASYM:
        return t / math.sqrt(p - 1.0) + _b_shift(p, qpow, quad)
    return _layer_moment(math.exp(-t), -math.expm1(-t), p, qpow, quad)


# --- curve quantities at a given t ------------------------------------------

def _ln_gamma_at_t(t: float, p: float, quad: QuadSpec) -> float:
    j0 = _moment_at_t(t, p, 0.0, quad)
    return math.log(4.0) + 2.0 * math.log(j0)


def _ln_k_at_t(t: float, p: float, quad: QuadSpec) -> float:
    em = -math.expm1(-t)
    j0 = _moment_at_t(t, p, 0.0, quad)
    return (math.log(4.0) + math.log(em) + 2.0 * math.log(j0)) / (p - 1.0)


def _ln_d_at_t(t: float, p: float, quad: QuadSpec) -> float:
    j0 = _moment_at_t(t, p, 0.0, quad)
    j2 = _moment_at_t(t, p, 2.0, quad)
    return _ln_k_at_t(t, p, quad) + 0.5 * (math.log(j2) - math.log(j0))


def _point_from_t(t: float, params: LocalParams) -> LocalPoint:
    p, quad = params.p, params.quad
    j0 = _moment_at_t(t, p, 0.0, quad)
    j2 = _moment_at_t(t, p, 2.0, quad)
    em = -math.expm1(-t)
    gamma = 4.0 * j0 * j0
    k = (4.0 * em * j0 * j0) ** (1.0 / (p - 1.0))
    d = k * math.sqrt(j2 / j0)
    return LocalPoint(k=k, gamma=gamma, d=d, p=p, layer_t=t)


def _qnorm_from_t(t: float, q: float, params: LocalParams) -> float:
    p, quad = params.p, params.quad
    j0 = _moment_at_t(t, p, 0.0, quad)
    jq = _moment_at_t(t, p, q, quad)
    em = -math.expm1(-t)
    k = (4.0 * em * j0 * j0) ** (1.0 / (p - 1.0))
    return k * (jq / j0) ** (1.0 / q)


# --- inverse problems: root-finds in tau = ln t ------------------------------

def _seed_tau_for_k(ln_k: float, p: float) -> float:
    # Small k: em ~ t, gamma ~ pi^2, so t ~ k^{p-1}/pi^2. Large k: em ~ 1 and
    # gamma ~ 4 t^2/(p-1), so t ~ sqrt(p-1) k^{(p-1)/2} / 2. The minimum of
    # the two exponents picks the right regime on both ends.
    tau_small = (p - 1.0) * ln_k - math.log(PI2)
    tau_large = 0.5 * (p - 1.0) * ln_k + 0.5 * math.log(p - 1.0) - math.log(2.0)
    return min(tau_small, tau_large)


def _t_from_k(k: float, params: LocalParams) -> float:
    if not (math.isfinite(k) and k > 0.0):
        raise ValueError(f"k must be finite and positive, got {k}")
    p, quad = params.p, params.quad
    ln_k = math.log(k)

    def resid(tau: float) -> float:
        return _ln_k_at_t(math.exp(tau), p, quad) - ln_k

    tau = solve_monotone(resid, _seed_tau_for_k(ln_k, p),
                         _TAU_LO, _TAU_HI, step0=2.0, xtol=1e-14)
    return math.exp(tau)


def _t_from_gamma(gamma: float, params: LocalParams) -> float:
    if not (math.isfinite(gamma) and gamma > 0.0):
        raise ValueError(f"gamma must be finite and positive, got {gamma}")
    if gamma <= PI2:
        raise NoSolution(f"no positive solution for gamma <= pi^2 (got {gamma})")
    p, quad = params.p, params.quad
    ln_g = math.log(gamma)
    tau_small = math.log(max(gamma / PI2 - 1.0, 1e-300))
    tau_large = 0.5 * ln_g + 0.5 * math.log(p - 1.0) - math.log(2.0)
    seed = min(tau_small, tau_large)

    def resid(tau: float) -> float:
        return _ln_gamma_at_t(math.exp(tau), p, quad) - ln_g

    tau = solve_monotone(resid, seed, _TAU_LO, _TAU_HI, step0=2.0, xtol=1e-14)
    return math.exp(tau)


def _t_from_d(d: float, params: LocalParams) -> float:
    if not (math.isfinite(d) and d > 0.0):
        raise ValueError(f"d must be finite and positive, got {d}")
    p, quad = params.p, params.quad
    ln_d = math.log(d)

    def resid(tau: float) -> float:
        return _ln_d_at_t(math.exp(tau), p, quad) - ln_d

    # d ~ k/sqrt(2) at both scale extremes is a good enough seed.
    seed = _seed_tau_for_k(ln_d + 0.5 * math.log(2.0), p)
    tau = solve_monotone(resid, seed, _TAU_LO, _TAU_HI, step0=2.0, xtol=1e-14)
    return math.exp(tau)


# --- public operations --------------------------------------------------------

def time_map(k: float, gamma: float, params: LocalParams) -> float:
    """Half-interval traversal time T(k, gamma); solution exists iff T = 1/2."""
    p, quad = params.p, params.quad
    if not (math.isfinite(k) and k > 0.0):
        raise ValueError(f"k must be finite and positive, got {k}")
    if not (math.isfinite(gamma) and gamma > 0.0):
        raise ValueError(f"gamma must be finite and positive, got {gamma}")
    nu = k ** (p - 1.0) / gamma
    if not nu < 1.0:
        raise InvalidBracket(f"time_map needs gamma > k^(p-1); got ratio {nu}")
    # nu < 1 in float64 forces eps >= ~1e-16, so the quadrature branch
    # always applies here.
    j0 = _layer_moment(1.0 - nu, nu, p, 0.0, quad)
    return j0 / math.sqrt(gamma)


def solve_gamma(k: float, params: LocalParams) -> float:
    """The unique gamma > max(k^{p-1}, pi^2) with time_map(k, gamma) = 1/2."""
    t = _t_from_k(k, params)
    # gamma = k^{p-1}/em is exact given t and keeps gamma >= k^{p-1} even
    # when em has rounded to 1 (deep-layer amplitudes, gamma ~ 1e8+).
    em = -math.expm1(-t)
    return k ** (params.p - 1.0) / em


def q_norm(k: float, gamma: float, q: float, params: LocalParams) -> float:
    """||w||_q of the amplitude-k solution at eigenvalue gamma.

    Accepts any gamma > k^{p-1}, on the solution curve or off it. When the
    two are equal to within a few ulp the layer coordinate is no longer
    recoverable from the pair and accuracy degrades; curve points should go
    through point_q_norm, which keeps the layer exactly.
    """
    if not q > 1.0:
        raise ValueError(f"q must be > 1, got {q}")
    p, quad = params.p, params.quad
    nu = k ** (p - 1.0) / gamma
    if not nu < 1.0:
        raise InvalidBracket(f"q_norm needs gamma > k^(p-1); got ratio {nu}")
    eps = 1.0 - nu
    j0 = _layer_moment(eps, nu, p, 0.0, quad)
    jq = _layer_moment(eps, nu, p, q, quad)
    return k * (jq / j0) ** (1.0 / q)


def point_q_norm(point: LocalPoint, q: float, params: LocalParams) -> float:
    """||w||_q at a curve point, evaluated in the layer coordinate.

    Uses the stored layer_t (recomputed from k when absent), so it stays
    accurate deep in the layer where gamma - k^{p-1} underflows float
    resolution and the (k, gamma) form cannot.
    """
    if not q > 1.0:
        raise ValueError(f"q must be > 1, got {q}")
    if point.p != params.p:
        raise ValueError("point and params disagree on p")
    t = point.layer_t
    if t is None:
        t = _t_from_k(point.k, params)
    return _qnorm_from_t(t, q, params)


def point_from_k(k: float, params: LocalParams) -> LocalPoint:
    """Curve point with amplitude k."""
    return _point_from_t(_t_from_k(k, params), params)


def point_from_gamma(gamma: float, params: LocalParams) -> LocalPoint:
    """Curve point with eigenvalue gamma; gamma must exceed pi^2."""
    return _point_from_t(_t_from_gamma(gamma, params), params)


def solve_for_d(d: float, params: LocalParams) -> LocalPoint:
    """Curve point with L2 norm d, via the strictly increasing map d(k)."""
    return _point_from_t(_t_from_d(d, params), params)


def sample_profile(point: LocalPoint, n: int, params: LocalParams) -> Profile:
    """Sample w(x) at n nodes on [0, 1/2], mirrored to [1/2, 1].

    Nodes are uniform in s = w/k; abscissae come from cumulative quadrature
    of x'(s) = gamma^{-1/2} F(s)^{-1/2}. Total node count is 2n - 1.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    p, quad = params.p, params.quad
    if point.p != p:
        raise ValueError("point and params disagree on p")
    t = point.layer_t
    if t is None:
        t = _t_from_k(point.k, params)
    gamma = point.gamma
    sqrt_g = math.sqrt(gamma)
    s_nodes = np.linspace(0.0, 1.0, n)
    xs_half = np.empty(n)
    xs_half[0] = 0.0

    if t < T_ASYM:
        # Layer-resolved route: cumulative segments in the sinh variable,
        # walked from v = V (s = 0) down to v = 0 (s = 1).
        eps = math.exp(-t)
        em = -math.expm1(-t)
        w0 = math.sqrt(2.0 * eps / (p - 1.0))
        vs = np.arcsinh(np.sqrt(np.maximum(1.0 - s_nodes, 0.0)) / w0)
        scale = 2.0 / (math.sqrt(p - 1.0) * sqrt_g)

        def f(v):
            return kernels.layer_integrand(v, eps, em, p, 0.0)

        for j in range(1, n):
            seg = integrate(f, vs[j], vs[j - 1], quad)
            xs_half[j] = xs_half[j - 1] + scale * seg.value
    else:
        # Boundary-layer regime: eps <= 1e-18 contributes nothing away from
        # s = 1, so interior segments integrate f(s)^{-1/2} directly and the
        # final node takes the layer crossing from the moment asymptote.
        def g(s):
            u = 1.0 - np.asarray(s, dtype=float)
            return 1.0 / (math.sqrt(p - 1.0) * u
                          * np.sqrt(kernels.c_factor(u, p)))

        for j in range(1, n - 1):
            seg = integrate(g, s_nodes[j - 1], s_nodes[j], quad)
            xs_half[j] = xs_half[j - 1] + seg.value / sqrt_g
        xs_half[n - 1] = _moment_at_t(t, p, 0.0, quad) / sqrt_g

    ws_half = point.k * s_nodes
    xs = np.concatenate([xs_half, 1.0 - xs_half[-2::-1]])
    ws = np.concatenate([ws_half, ws_half[-2::-1]])
    return Profile(xs=xs, ws=ws, k=point.k, gamma=gamma, p=p)
