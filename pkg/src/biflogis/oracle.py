"""Shooting solver for the local problem, independent of the time-map route.

-w'' + w^p = gamma w on (0,1) with w(0) = w(1) = 0, w > 0, is solved here as
an initial-value problem w(0) = 0, w'(0) = m integrated by fixed-step
classical RK4, bisecting on m between "crosses zero before x = 1" (m too
small) and "fails to return by x = 1" (m too large). Nothing in this module
touches the moment integrals, so agreement with local_logistic is a real
two-route check, not a tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NoConvergence, NoSolution, Overflow
from .local_logistic import PI2, LocalPoint, Profile

__all__ = [
    "ShootConfig",
    "ShootResult",
    "shoot",
    "energy_drift",
    "solve_bvp",
    "norms_from_profile",
]


@dataclass(frozen=True)
class ShootConfig:
    """Knobs for the RK4 march and the slope bisection."""

    step: float = 1e-4
    slope_tol: float = 1e-12
    max_bisections: int = 200

    def __post_init__(self):
        if not (0.0 < self.step <= 1e-2):
            raise ValueError(f"step must be in (0, 1e-2], got {self.step}")
        if self.slope_tol <= 0.0:
            raise ValueError("slope_tol must be positive")
        if self.max_bisections < 1:
            raise ValueError("max_bisections must be >= 1")

    @property
    def n_steps(self) -> int:
        return max(1, round(1.0 / self.step))


@dataclass(frozen=True)
class ShootResult:
    """One RK4 trajectory of w'' = w^p - gamma w, w(0) = 0, w'(0) = m.

    xs, ws, zs sample x, w, w' on the uniform step grid. crossed reports
    whether w hit zero again strictly inside (0, 1]; x_cross locates that
    first crossing by one secant step between the bracketing nodes.
    """

    xs: np.ndarray
    ws: np.ndarray
    zs: np.ndarray
    gamma: float
    p: float
    m: float
    crossed: bool
    x_cross: float | None


def _march(gamma: float, m: float, p: float, cfg: ShootConfig):
    """Raw kernel run: (ws, zs, n_filled, status), status 1 = overflow."""
    n = cfg.n_steps
    return kernels.rk4_shoot(gamma, m, p, n, 1.0 / n)


def _first_crossing(ws: np.ndarray, n_filled: int) -> int:
    """Index of the first nonpositive sample after launch, or -1."""
    w = ws[1:n_filled]
    idx = np.nonzero(w <= 0.0)[0]
    return int(idx[0]) + 1 if idx.size else -1


def shoot(gamma: float, m: float, p: float,
          cfg: ShootConfig = ShootConfig()) -> ShootResult:
    """Integrate one trajectory across [0, 1].

    Raises Overflow if |w| exceeds 1e12 before reaching x = 1 (diverging
    slope); a crossing trajectory stays bounded by the energy level, so
    overflow always means m was too large.
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if m <= 0.0:
        raise ValueError(f"initial slope must be positive, got {m}")
    ws, zs, n_filled, status = _march(gamma, m, p, cfg)
    if status != 0:
        raise Overflow(
            f"|w| exceeded 1e12 at x = {(n_filled - 1) / cfg.n_steps:.6g} "
            f"(gamma = {gamma}, m = {m})")
    n = cfg.n_steps
    xs = np.linspace(0.0, 1.0, n + 1)
    ci = _first_crossing(ws, n_filled)
    if ci < 0:
        return ShootResult(xs, ws, zs, gamma, p, m, False, None)
    h = 1.0 / n
    wa, wb = ws[ci - 1], ws[ci]
    x_cross = xs[ci - 1] + h * wa / (wa - wb) if wa != wb else xs[ci]
    return ShootResult(xs, ws, zs, gamma, p, m, True, float(x_cross))


def energy_drift(res: ShootResult) -> float:
    """Max relative wander of (w')^2/2 + gamma w^2/2 - w^{p+1}/(p+1).

    The quantity is conserved exactly along true trajectories; its drift
    measures the integrator's error. Normalized by the launch value m^2/2.
    """
    stop = len(res.ws)
    if res.crossed:
        # Past the first crossing the trajectory is diagnostic junk; the
        # conservation claim only covers the physical arc.
        stop = _first_crossing(res.ws, stop) + 1
    w = res.ws[:stop]
    z = res.zs[:stop]
    e = 0.5 * z * z + 0.5 * res.gamma * w * w \
        - np.abs(w) ** (res.p + 1.0) / (res.p + 1.0)
    e0 = 0.5 * res.m * res.m
    return float(np.max(np.abs(e - e0)) / e0)


def _shot_state(gamma: float, m: float, p: float, cfg: ShootConfig):
    """(crossed, w_end, result_or_None) with Overflow folded into crossed=False."""
    try:
        res = shoot(gamma, m, p, cfg)
    except Overflow:
        return False, math.inf, None
    return res.crossed, float(res.ws[-1]), res


def solve_bvp(gamma: float, p: float,
              cfg: ShootConfig = ShootConfig()) -> tuple[LocalPoint, Profile]:
    """Find the positive two-point solution for gamma > pi^2 by slope bisection.

    Accepts the first non-crossing trajectory with w(1) <= slope_tol * m;
    the amplitude k is read off the grid maximum with one parabolic
    refinement, d and the profile come straight from the trajectory.
    """
    if gamma <= PI2:
        raise NoSolution(
            f"no positive solution for gamma = {gamma} <= pi^2")

    m_lo = 1e-12
    m_hi = 1.0
    crossed, _, _ = _shot_state(gamma, m_hi, p, cfg)
    grows = 0
    while crossed:
        m_hi *= 2.0
        grows += 1
        if grows > cfg.max_bisections:
            raise NoConvergence("upper slope bracket did not stop crossing")
        crossed, _, _ = _shot_state(gamma, m_hi, p, cfg)

    accepted = None
    for _ in range(cfg.max_bisections):
        mid = 0.5 * (m_lo + m_hi)
        if mid <= m_lo or mid >= m_hi:
            break
        crossed, w_end, res = _shot_state(gamma, mid, p, cfg)
        if crossed:
            m_lo = mid
            continue
        if res is not None and 0.0 < w_end <= cfg.slope_tol * mid:
            accepted = res
            break
        m_hi = mid
    if accepted is None:
        raise NoConvergence(
            f"slope bisection stalled before w(1) <= slope_tol * m "
            f"(gamma = {gamma}, bracket = [{m_lo}, {m_hi}])")

    ws = accepted.ws
    i = int(np.argmax(ws))
    if 0 < i < len(ws) - 1:
        a, b, c = ws[i - 1], ws[i], ws[i + 1]
        denom = a - 2.0 * b + c
        k = float(b - (a - c) ** 2 / (8.0 * denom)) if denom < 0.0 else float(b)
    else:
        k = float(ws[i])
    profile = Profile(xs=accepted.xs, ws=ws, k=k, gamma=gamma, p=p)
    d = norms_from_profile(profile, 2.0)
    point = LocalPoint(k=k, gamma=gamma, d=d, p=p)
    return point, profile


def norms_from_profile(profile: Profile, q: float) -> float:
    """||w||_q from the stored grid by composite Simpson.

    Handles non-uniform spacing (three-point weights per interval pair, a
    trapezoid sweep-up if an odd interval is left over).
    """
    if q <= 0.0:
        raise ValueError(f"norm exponent must be positive, got {q}")
    xs = np.asarray(profile.xs, dtype=float)
    ws = np.asarray(profile.ws, dtype=float)
    n = len(xs)
    if n < 101:
        raise ValueError(f"profile must carry >= 101 nodes, got {n}")
    f = np.abs(ws) ** q
    total = 0.0
    i = 0
    while i + 2 <= n - 1:
        h0 = xs[i + 1] - xs[i]
        h1 = xs[i + 2] - xs[i + 1]
        hs = h0 + h1
        total += hs / 6.0 * ((2.0 - h1 / h0) * f[i]
                             + hs * hs / (h0 * h1) * f[i + 1]
                             + (2.0 - h0 / h1) * f[i + 2])
        i += 2
    if i == n - 2:
        total += 0.5 * (xs[i + 1] - xs[i]) * (f[i] + f[i + 1])
    return float(total ** (1.0 / q))
