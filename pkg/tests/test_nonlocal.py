"""Curve points of the nonlocal problem: scaling invariants and defects.

Every constructed solution must satisfy the defining algebra exactly
(alpha = h d, lambda = beta gamma, beta = h^{p-1} away from p = 3), and its
scaled profile must solve the differential equation when checked through an
independent reconstruction of u''.
"""

import dataclasses
import math

import pytest

from biflogis.errors import (InvalidRegime, MonotonicityViolation,
                             ZeroCoefficients)
from biflogis.local_logistic import LocalParams, point_from_gamma, point_q_norm
from biflogis.nonlocal_curve import (NonlocalSolution, ProblemParams, g_of_k,
                                     residual_check, scale_factor, solve_alpha)


def rel(a, b):
    return abs(a - b) / abs(b)


def wq_of(sol, params):
    # layer-aware norm: the (k, gamma) route loses the layer for the large
    # amplitudes the supercritical curve reaches
    lp = LocalParams(p=params.p, quad=params.quad)
    return point_q_norm(sol.local, params.q, lp)


def assert_invariants(sol, params):
    assert rel(sol.alpha, sol.h * sol.local.d) < 1e-12
    assert rel(sol.lam, sol.beta * sol.local.gamma) < 1e-12
    wq = wq_of(sol, params)
    n_scaled = params.a1 * (sol.h * wq) ** 2 \
        + params.a2 * (sol.h * sol.local.d) ** 2
    assert rel(sol.beta, n_scaled) < 1e-9
    if params.regime == "critical":
        assert rel(sol.beta, sol.h ** 2) < 1e-12
        # the local point is pinned at the normalization a1||w||_q^2+a2 d^2=1
        n_val = params.a1 * wq * wq + params.a2 * sol.local.d ** 2
        assert abs(n_val - 1.0) < 1e-8
    else:
        assert rel(sol.beta, sol.h ** (params.p - 1.0)) < 1e-12


# -------------------------------------------------------------- validation


def test_params_validation():
    with pytest.raises(ValueError):
        ProblemParams(p=1.0, q=2.0, a1=1.0, a2=0.0)
    with pytest.raises(ValueError):
        ProblemParams(p=5.0, q=1.0, a1=1.0, a2=0.0)
    with pytest.raises(ValueError):
        ProblemParams(p=5.0, q=2.0, a1=-0.1, a2=1.0)
    with pytest.raises(ZeroCoefficients):
        ProblemParams(p=5.0, q=2.0, a1=0.0, a2=0.0)
    with pytest.raises(ValueError):
        ProblemParams(p=5.0, q=2.0, a1=1.0, a2=0.0, root_tol=0.0)


def test_regime_property():
    def regime(p):
        return ProblemParams(p=p, q=2.0, a1=1.0, a2=1.0).regime

    assert regime(5.0) == "supercritical"
    assert regime(3.1) == "supercritical"
    assert regime(2.0) == "subcritical"
    assert regime(3.0) == "critical"
    # the critical branch owns a small band, not just the exact value
    assert regime(3.0 + 5e-10) == "critical"
    assert regime(3.0 - 5e-10) == "critical"


def test_solve_alpha_validation():
    params = ProblemParams(p=5.0, q=2.0, a1=1.0, a2=0.0)
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            solve_alpha(bad, params)


def test_solution_validation():
    sol = solve_alpha(10.0, ProblemParams(p=5.0, q=2.0, a1=1.0, a2=0.0))
    with pytest.raises(ValueError):
        dataclasses.replace(sol, alpha=-1.0)
    with pytest.raises(ValueError):
        dataclasses.replace(sol, lam=math.nan)
    with pytest.raises(ValueError):
        dataclasses.replace(sol, regime="sideways")


# -------------------------------------------------------------- invariants


CASES = [
    (5.0, 2.0, 1.0, 0.0, 100.0),
    (5.0, 2.0, 0.0, 1.0, 100.0),
    (5.0, 2.0, 0.5, 0.5, 1e4),
    (5.0, 4.0, 0.3, 0.7, 300.0),
    (2.0, 2.0, 0.0, 1.0, 100.0),
    (2.0, 2.0, 1.0, 1.0, 100.0),
    (2.5, 3.0, 0.7, 0.4, 50.0),
    (3.0, 2.0, 0.5, 0.5, 1.0),
    (3.0, 2.0, 0.5, 0.5, 1000.0),
    (3.0, 4.0, 1.0, 0.5, 25.0),
]


@pytest.mark.parametrize("p,q,a1,a2,alpha", CASES)
def test_solution_invariants(p, q, a1, a2, alpha):
    params = ProblemParams(p=p, q=q, a1=a1, a2=a2)
    sol = solve_alpha(alpha, params)
    assert sol.alpha == alpha
    assert sol.regime == params.regime
    assert_invariants(sol, params)


@pytest.mark.parametrize("p,q,a1,a2,alpha", CASES)
def test_residual_small_on_solutions(p, q, a1, a2, alpha):
    params = ProblemParams(p=p, q=q, a1=a1, a2=a2)
    sol = solve_alpha(alpha, params)
    assert residual_check(sol, 64, params) < 1e-8


def test_residual_flags_wrong_lambda():
    params = ProblemParams(p=5.0, q=2.0, a1=0.5, a2=0.5)
    sol = solve_alpha(100.0, params)
    bad = dataclasses.replace(sol, lam=sol.lam * 1.01)
    assert residual_check(bad, 64, params) > 1e-3


def test_residual_needs_enough_points():
    params = ProblemParams(p=5.0, q=2.0, a1=1.0, a2=0.0)
    sol = solve_alpha(10.0, params)
    with pytest.raises(ValueError):
        residual_check(sol, 4, params)


# ----------------------------------------------------------- scale factor


def test_scale_factor_rejects_critical():
    point = point_from_gamma(15.0, LocalParams(p=3.0))
    for p in (3.0, 3.0 + 1e-10):
        params3 = ProblemParams(p=p, q=2.0, a1=1.0, a2=1.0)
        with pytest.raises(InvalidRegime):
            scale_factor(point, 0.5, params3)


def test_scale_factor_validation():
    params = ProblemParams(p=5.0, q=2.0, a1=1.0, a2=0.0)
    point = point_from_gamma(15.0, LocalParams(p=5.0))
    with pytest.raises(ValueError):
        scale_factor(point, -0.5, params)
    with pytest.raises(ZeroCoefficients):
        scale_factor(point, 0.0, params)  # a2 = 0 and ||w||_q = 0


def test_scale_factor_matches_solver():
    params = ProblemParams(p=5.0, q=2.0, a1=0.5, a2=0.5)
    sol = solve_alpha(100.0, params)
    h = scale_factor(sol.local, wq_of(sol, params), params)
    assert rel(h, sol.h) < 1e-10


# ------------------------------------------------------- curve monotonics


def test_g_of_k_consistency():
    for p, q, a1, a2, alpha in ((5.0, 2.0, 0.5, 0.5, 200.0),
                                (2.0, 2.0, 1.0, 1.0, 80.0)):
        params = ProblemParams(p=p, q=q, a1=a1, a2=a2)
        sol = solve_alpha(alpha, params)
        assert rel(g_of_k(sol.local.k, params), alpha) < 1e-9


def test_g_of_k_validation():
    params = ProblemParams(p=5.0, q=2.0, a1=1.0, a2=0.0)
    with pytest.raises(ValueError):
        g_of_k(0.0, params)
    with pytest.raises(InvalidRegime):
        g_of_k(1.0, ProblemParams(p=3.0, q=2.0, a1=1.0, a2=0.0))


def test_d_monotone_along_curve():
    alphas = [10.0, 30.0, 100.0, 300.0]
    up = ProblemParams(p=5.0, q=2.0, a1=0.5, a2=0.5)
    ds = [solve_alpha(a, up).local.d for a in alphas]
    assert all(x < y for x, y in zip(ds, ds[1:]))
    down = ProblemParams(p=2.0, q=2.0, a1=0.5, a2=0.5)
    ds = [solve_alpha(a, down).local.d for a in alphas]
    assert all(x > y for x, y in zip(ds, ds[1:]))


def test_critical_q2_exact_quadratic_scaling():
    # q = 2 at p = 3: the normalized local point is independent of alpha,
    # so lambda(c alpha) = c^2 lambda(alpha) to rounding.
    params = ProblemParams(p=3.0, q=2.0, a1=0.5, a2=0.5)
    base = solve_alpha(1.0, params)
    for c in (7.3, 120.0):
        sol = solve_alpha(c, params)
        assert sol.local.d == base.local.d
        assert rel(sol.lam, c * c * base.lam) < 1e-14


def test_critical_q4_normalization_root():
    # q != 2 has no closed-form normalization point; the root-found one
    # must still satisfy a1 ||w||_q^2 + a2 d^2 = 1.
    params = ProblemParams(p=3.0, q=4.0, a1=1.0, a2=0.5)
    sol = solve_alpha(25.0, params)
    wq = wq_of(sol, params)
    assert abs(params.a1 * wq * wq + params.a2 * sol.local.d ** 2 - 1.0) < 1e-8


def test_to_record_keys():
    params = ProblemParams(p=2.0, q=2.0, a1=1.0, a2=0.0)
    rec = solve_alpha(50.0, params).to_record()
    assert set(rec) == {"alpha", "k", "d", "gamma", "h", "beta", "lambda"}
    assert rec["lambda"] == pytest.approx(rec["beta"] * rec["gamma"])
