"""The nonlocal problem in the L2 frame, reduced to local solves plus algebra.

-(a1 ||u||_q^2 + a2 ||u||_2^2) u'' + u^p = lambda u on (0,1), u > 0, Dirichlet,
parameterized by alpha = ||u||_2. Every solution is a rescaled local profile:
u = h w_d with h = (a1 ||w_d||_q^2 + a2 d^2)^{1/(p-3)} away from p = 3, so the
only analytic content here is a scalar root-find for the right local amplitude
and the bookkeeping beta = h^{p-1}, lambda = beta gamma, alpha = h d.

The module file carries a _curve suffix because the bare problem name is a
Python keyword; the solution field lam is serialized as "lambda" for the same
reason.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import local_logistic as ll
from .errors import InvalidRegime, MonotonicityViolation, ZeroCoefficients
from .local_logistic import LocalPoint, phi
from .quadrature import QuadSpec
from .rootfind import solve_monotone

__all__ = [
    "ProblemParams",
    "NonlocalSolution",
    "scale_factor",
    "g_of_k",
    "solve_alpha",
    "residual_check",
]

_CRITICAL_BAND = 1e-9

REGIMES = ("supercritical", "critical", "subcritical")


@dataclass(frozen=True)
class ProblemParams:
    """Problem data (p, q, a1, a2) plus numeric knobs."""

    p: float
    q: float
    a1: float
    a2: float
    quad: QuadSpec = QuadSpec()
    root_tol: float = 1e-10

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > 1.0):
            raise ValueError(f"p must be finite and > 1, got {self.p}")
        if not (math.isfinite(self.q) and self.q > 1.0):
            raise ValueError(f"q must be finite and > 1, got {self.q}")
        if self.a1 < 0.0 or self.a2 < 0.0:
            raise ValueError(
                f"a1, a2 must be nonnegative, got {self.a1}, {self.a2}")
        if self.a1 + self.a2 <= 0.0:
            raise ZeroCoefficients("a1 + a2 must be positive")
        if self.root_tol <= 0.0:
            raise ValueError("root_tol must be positive")

    @property
    def regime(self) -> str:
        if abs(self.p - 3.0) <= _CRITICAL_BAND:
            return "critical"
        return "supercritical" if self.p > 3.0 else "subcritical"


@dataclass(frozen=True)
class NonlocalSolution:
    """One point of the bifurcation curve: alpha with its scaled local data.

    lam holds the eigenvalue lambda(alpha). The defining relations
    beta = a1 (h ||w||_q)^2 + a2 (h d)^2, h^{p-1} = beta (p != 3),
    lam = beta gamma, alpha = h d all hold on every constructed instance.
    """

    alpha: float
    local: LocalPoint
    h: float
    beta: float
    lam: float
    regime: str

    def __post_init__(self):
        for name in ("alpha", "h", "beta", "lam"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be finite and positive, got {v}")
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")

    def to_record(self) -> dict:
        """Row of curve data keyed by the canonical column names."""
        return {
            "alpha": self.alpha,
            "k": self.local.k,
            "d": self.local.d,
            "gamma": self.local.gamma,
            "h": self.h,
            "beta": self.beta,
            "lambda": self.lam,
        }


def _local_params(params: ProblemParams) -> ll.LocalParams:
    return ll.LocalParams(p=params.p, quad=params.quad)


def _require_noncritical(p: float) -> None:
    if abs(p - 3.0) <= _CRITICAL_BAND:
        raise InvalidRegime(
            "the h-exponent 1/(p-3) is singular at p = 3; "
            "use the critical branch of solve_alpha")


def scale_factor(local: LocalPoint, q_norm_val: float,
                 params: ProblemParams) -> float:
    """h = (a1 ||w_d||_q^2 + a2 d^2)^{1/(p-3)} for p != 3."""
    _require_noncritical(params.p)
    if q_norm_val < 0.0:
        raise ValueError(f"q_norm_val must be nonnegative, got {q_norm_val}")
    n_val = params.a1 * q_norm_val ** 2 + params.a2 * local.d ** 2
    if n_val <= 0.0:
        raise ZeroCoefficients("a1 ||w||_q^2 + a2 d^2 must be positive")
    return math.exp(math.log(n_val) / (params.p - 3.0))


def _state_at_t(t: float, params: ProblemParams):
    """(LocalPoint, ||w||_q, N) at layer coordinate t."""
    lp = _local_params(params)
    point = ll._point_from_t(t, lp)
    wq = ll._qnorm_from_t(t, params.q, lp)
    n_val = params.a1 * wq * wq + params.a2 * point.d * point.d
    return point, wq, n_val


def _ln_g_at_t(t: float, params: ProblemParams) -> float:
    point, _, n_val = _state_at_t(t, params)
    return math.log(n_val) / (params.p - 3.0) + math.log(point.d)


def g_of_k(k: float, params: ProblemParams) -> float:
    """g = h(k) d(k), the alpha reached by local amplitude k (p != 3)."""
    _require_noncritical(params.p)
    if not (math.isfinite(k) and k > 0.0):
        raise ValueError(f"k must be finite and positive, got {k}")
    t = ll._t_from_k(k, _local_params(params))
    return math.exp(_ln_g_at_t(t, params))


def _subcritical_e1(params: ProblemParams) -> float:
    """E1 = a1 2^{(q+2)/q} A1^{2/q} + a2 pi^{2/q}, computed from the moment
    family at eps = 1 (where J_q degenerates to the A1 integral) so the seed
    needs nothing beyond this module's own dependencies."""
    p, q = params.p, params.q
    a1_val = ll._layer_moment(1.0, 0.0, p, q, params.quad)
    return params.a1 * 2.0 ** ((q + 2.0) / q) * a1_val ** (2.0 / q) \
        + params.a2 * math.pi ** (2.0 / q)


def _solve_noncritical(alpha: float, params: ProblemParams) -> NonlocalSolution:
    p = params.p
    xtol = min(params.root_tol, 1e-12)
    ln_alpha = math.log(alpha)
    if p > 3.0:
        # Large d: ||w||_q ~ d, so g ~ ((a1+a2) d^2)^{1/(p-3)} d.
        ln_d = ((p - 3.0) * ln_alpha - math.log(params.a1 + params.a2)) \
            / (p - 1.0)
    else:
        # Leading subcritical law d^{p-1} = alpha^{p-3} pi^{2/q} / E1.
        ln_d = ((p - 3.0) * ln_alpha + (2.0 / params.q) * math.log(math.pi)
                - math.log(_subcritical_e1(params))) / (p - 1.0)
    tau0 = ll._seed_tau_for_k(ln_d + 0.5 * math.log(2.0), p)

    def resid(tau: float) -> float:
        return _ln_g_at_t(math.exp(tau), params) - ln_alpha

    tau = solve_monotone(resid, tau0, ll._TAU_LO, ll._TAU_HI,
                         step0=2.0, xtol=xtol)
    point, wq, n_val = _state_at_t(math.exp(tau), params)

    g_lo = g_of_k(point.k * (1.0 - 1e-3), params)
    g_hi = g_of_k(point.k * (1.0 + 1e-3), params)
    slack = 1e-9 * alpha
    if p > 3.0:
        ok = g_lo < g_hi and g_lo < alpha + slack and g_hi > alpha - slack
    else:
        ok = g_hi < g_lo and g_hi < alpha + slack and g_lo > alpha - slack
    if not ok:
        raise MonotonicityViolation(
            f"g is not locally monotone around the root k = {point.k:.6g}: "
            f"g(k-) = {g_lo:.12g}, g(k+) = {g_hi:.12g}, alpha = {alpha:.12g}")

    h = math.exp(math.log(n_val) / (p - 3.0))
    beta = h * h * n_val
    lam = beta * point.gamma
    regime = "supercritical" if p > 3.0 else "subcritical"
    return NonlocalSolution(alpha=alpha, local=point, h=h, beta=beta,
                            lam=lam, regime=regime)


def _solve_critical(alpha: float, params: ProblemParams) -> NonlocalSolution:
    lp = _local_params(params)
    d_flat = 1.0 / math.sqrt(params.a1 + params.a2)
    if params.q == 2.0:
        # N = (a1 + a2) d^2, so the normalization point is explicit.
        t1 = ll._t_from_d(d_flat, lp)
    else:
        xtol = min(params.root_tol, 1e-12)

        def resid(tau: float) -> float:
            _, _, n_val = _state_at_t(math.exp(tau), params)
            return math.log(n_val)

        tau0 = ll._seed_tau_for_k(math.log(d_flat) + 0.5 * math.log(2.0),
                                  params.p)
        t1 = math.exp(solve_monotone(resid, tau0, ll._TAU_LO, ll._TAU_HI,
                                     step0=2.0, xtol=xtol))
    point = ll._point_from_t(t1, lp)
    h = alpha / point.d
    beta = h * h
    lam = beta * point.gamma
    return NonlocalSolution(alpha=alpha, local=point, h=h, beta=beta,
                            lam=lam, regime="critical")


def solve_alpha(alpha: float, params: ProblemParams) -> NonlocalSolution:
    """The unique curve point with ||u||_2 = alpha.

    p > 3 and p < 3 invert the strictly monotone map g(k) = h d; the solver
    re-probes monotonicity at the root and raises MonotonicityViolation if
    the bracket assumption fails. p within 1e-9 of 3 takes the critical
    branch: normalize a1 ||w||_q^2 + a2 d^2 = 1, then scale exactly.
    """
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise ValueError(f"alpha must be finite and positive, got {alpha}")
    if abs(params.p - 3.0) <= _CRITICAL_BAND:
        return _solve_critical(alpha, params)
    return _solve_noncritical(alpha, params)


def _phi_prime(s, p: float):
    """d/ds of phi(s, p), stable through s = 1."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    out = np.empty_like(s_arr)
    u = 1.0 - s_arr
    near = u < 1e-8
    far = ~near
    if np.any(far):
        uf = u[far]
        sf = s_arr[far]
        one_m_s2 = uf * (2.0 - uf)
        a = -np.expm1((p + 1.0) * np.log1p(-uf))
        sp = np.exp(p * np.log1p(-uf))
        out[far] = (2.0 * sf * a - (p + 1.0) * sp * one_m_s2) / one_m_s2 ** 2
    if np.any(near):
        un = u[near]
        out[near] = 0.5 * (p + 1.0) * (p - 1.0) \
            * (0.5 - (2.0 * p - 3.0) * un / 6.0)
    return out


def residual_check(sol: NonlocalSolution, n: int,
                   params: ProblemParams) -> float:
    """Defect of -beta u'' + u^p = lambda u at n interior amplitudes.

    u'' is NOT taken from the defining relation: it is reconstructed by
    differentiating the first-integral form (w')^2 = (k^2 - w^2)
    [gamma - 2 k^{p-1} phi(w/k)/(p+1)] through phi, an independent
    evaluation path. Returns max |defect| / (lambda ||u||_inf).
    """
    if n < 5:
        raise ValueError(f"need at least 5 sample points, got {n}")
    k = sol.local.k
    gamma = sol.local.gamma
    p = sol.local.p
    w = k * np.linspace(0.0, 1.0, n + 2)[1:-1]
    s = w / k
    kp1 = k ** (p - 1.0)
    w_dd = -w * (gamma - 2.0 * kp1 * phi(s, p) / (p + 1.0)) \
        - (k * k - w * w) * kp1 / ((p + 1.0) * k) * _phi_prime(s, p)
    u = sol.h * w
    defect = -sol.beta * sol.h * w_dd + u ** p - sol.lam * u
    return float(np.max(np.abs(defect)) / (sol.lam * sol.h * k))
