"""Bracketing scalar root solvers.

Classic Brent iteration (inverse-quadratic / secant step guarded by
bisection) plus a monotone bracket expander. Written against callables of one
float; used by the curve solvers on log-transformed, strictly monotone
residuals, so every root here is simple and bracketed once the expander
returns.
"""

from __future__ import annotations

import math

from .errors import BracketFailure, NoConvergence

_EPS = 2.220446049250313e-16


def brentq(f, xa: float, xb: float, fa=None, fb=None,
           xtol: float = 1e-13, rtol: float = 4 * _EPS, maxiter: int = 100) -> float:
    """Root of f in [xa, xb] with f(xa), f(xb) of opposite sign."""
    xpre, xcur = float(xa), float(xb)
    fpre = float(f(xpre)) if fa is None else float(fa)
    fcur = float(f(xcur)) if fb is None else float(fb)
    if fpre == 0.0:
        return xpre
    if fcur == 0.0:
        return xcur
    if fpre * fcur > 0.0:
        raise BracketFailure("brentq: endpoints do not bracket a sign change")

    xblk = fblk = spre = scur = 0.0
    for _ in range(maxiter):
        if fpre * fcur < 0.0:
            xblk, fblk = xpre, fpre
            spre = scur = xcur - xpre
        if abs(fblk) < abs(fcur):
            xpre, xcur = xcur, xblk
            xblk = xpre
            fpre, fcur = fcur, fblk
            fblk = fpre

        delta = 0.5 * (xtol + rtol * abs(xcur))
        sbis = 0.5 * (xblk - xcur)
        if fcur == 0.0 or abs(sbis) < delta:
            return xcur

        if abs(spre) > delta and abs(fcur) < abs(fpre):
            if xpre == xblk:
                # secant
                stry = -fcur * (xcur - xpre) / (fcur - fpre)
            else:
                # inverse quadratic interpolation
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                stry = -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            if 2.0 * abs(stry) < min(abs(spre), 3.0 * abs(sbis) - delta):
                spre, scur = scur, stry
            else:
                spre = scur = sbis
        else:
            spre = scur = sbis

        xpre, fpre = xcur, fcur
        if abs(scur) > delta:
            xcur += scur
        else:
            xcur += delta if sbis > 0 else -delta
        fcur = float(f(xcur))
        if fcur == 0.0:
            return xcur

    raise NoConvergence(f"brentq: no convergence in {maxiter} iterations")


def bracket_monotone(f, x0: float, lo_limit: float, hi_limit: float,
                     step0: float = 1.0, grow: float = 1.7, maxiter: int = 200):
    """Expand from x0 along a monotone f until the sign changes.

    Returns (a, b, fa, fb) with a < b and opposite signs. Raises
    BracketFailure if the sign never changes inside [lo_limit, hi_limit].
    """
    x0 = min(max(float(x0), lo_limit), hi_limit)
    y0 = float(f(x0))
    if y0 == 0.0:
        return x0, x0, 0.0, 0.0

    # Probe to find which way f moves toward zero.
    step = step0
    xp = x0 + step if x0 + step <= hi_limit else x0 - step
    yp = float(f(xp))
    if y0 * yp <= 0.0:
        a, b = (x0, xp) if x0 < xp else (xp, x0)
        fa, fb = (y0, yp) if x0 < xp else (yp, y0)
        return a, b, fa, fb
    slope_up = (yp - y0) * (xp - x0) > 0.0
    # Move in the direction that drives |f| down: f increasing and f>0 -> left.
    direction = -1.0 if (slope_up == (y0 > 0.0)) else 1.0

    xprev, yprev = x0, y0
    for _ in range(maxiter):
        xnext = xprev + direction * step
        if xnext <= lo_limit:
            xnext = lo_limit
        elif xnext >= hi_limit:
            xnext = hi_limit
        ynext = float(f(xnext))
        if y0 * ynext <= 0.0:
            a, b = (xprev, xnext) if xprev < xnext else (xnext, xprev)
            fa, fb = (yprev, ynext) if xprev < xnext else (ynext, yprev)
            return a, b, fa, fb
        if xnext in (lo_limit, hi_limit):
            raise BracketFailure(
                "bracket_monotone: no sign change inside the allowed interval"
            )
        xprev, yprev = xnext, ynext
        step *= grow

    raise BracketFailure("bracket_monotone: expansion budget exhausted")


def solve_monotone(f, x0: float, lo_limit: float, hi_limit: float,
                   step0: float = 1.0, xtol: float = 1e-13) -> float:
    """Bracket a monotone residual from a seed, then run Brent."""
    a, b, fa, fb = bracket_monotone(f, x0, lo_limit, hi_limit, step0=step0)
    if a == b:
        return a
    return brentq(f, a, b, fa=fa, fb=fb, xtol=xtol)
