"""Numerical verification of every asymptotic law the curve satisfies.

Each check sweeps the solver over a grid, extracts a limiting coefficient by
two-point Richardson extrapolation, fits the remainder order on a log-log
grid, and compares against the closed-form target from the constants module.
Targets are never hard-coded here; they are recomputed per call so a constants
bug cannot hide behind a stale number.

rel_error convention: |estimate - target| / |target| when the target is away
from zero; checks whose target is exactly zero (identities, residuals) report
the absolute defect against a stated scale instead. pass ⟺ rel_error ≤
tolerance always.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants as consts
from . import local_logistic as ll
from . import nonlocal_curve as nc
from .errors import (AmbiguousReading, BiflogisError, DegenerateFit,
                     WrongRegime)
from .quadrature import QuadSpec

__all__ = [
    "CheckResult",
    "SweepReport",
    "sweep",
    "estimate_order",
    "extrapolate_limit",
    "check_theorem_1",
    "check_theorem_2",
    "check_theorem_3",
    "check_local_large_d",
    "check_local_small_d",
    "DEFAULT_SUPER_ALPHAS",
    "DEFAULT_SUB_ALPHAS",
]

SQRT10 = math.sqrt(10.0)

DEFAULT_SUPER_ALPHAS = tuple(1e3 * SQRT10 ** i for i in range(5))
DEFAULT_SUB_ALPHAS = tuple(1e2 * SQRT10 ** i for i in range(5))


@dataclass(frozen=True)
class CheckResult:
    """One verified asymptotic statement.

    fitted_order is the least-squares slope of log|remainder| vs log of the
    sweep variable (nan when the remainder is too clean to fit, e.g. exact
    identities drowned in roundoff). other_rel_error carries the losing
    E3 reading's mismatch on arbitrated checks, else None.
    """

    name: str
    target: float
    estimate: float
    rel_error: float
    fitted_order: float
    tolerance: float
    passed: bool
    other_rel_error: float | None = None

    def __post_init__(self):
        if self.passed != (self.rel_error <= self.tolerance):
            raise ValueError("pass flag inconsistent with rel_error/tolerance")

    def to_record(self) -> dict:
        rec = {
            "name": self.name,
            "target": self.target,
            "estimate": self.estimate,
            "rel_error": self.rel_error,
            "fitted_order": None if math.isnan(self.fitted_order)
            else self.fitted_order,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.other_rel_error is not None:
            rec["other_rel_error"] = self.other_rel_error
        return rec


def _mk_check(name: str, target: float, estimate: float, rel_error: float,
              fitted_order: float, tolerance: float,
              other_rel_error: float | None = None) -> CheckResult:
    return CheckResult(name=name, target=target, estimate=estimate,
                       rel_error=rel_error, fitted_order=fitted_order,
                       tolerance=tolerance,
                       passed=bool(rel_error <= tolerance),
                       other_rel_error=other_rel_error)


def _rel(estimate: float, target: float, scale: float = 1.0) -> float:
    """Relative error against target, falling back to scale at target zero."""
    denom = abs(target) if target != 0.0 else scale
    return abs(estimate - target) / denom


@dataclass
class SweepReport:
    """Curve rows plus check verdicts for one parameter set.

    solutions runs parallel to rows and keeps the live objects (None where a
    row failed); it is deliberately left out of serialization.
    """

    params: nc.ProblemParams
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    solutions: list = field(default_factory=list)
    chosen_e3_reading: str | None = None

    def to_record(self) -> dict:
        q = self.params.quad
        return {
            "params": {
                "p": self.params.p, "q": self.params.q,
                "a1": self.params.a1, "a2": self.params.a2,
                "root_tol": self.params.root_tol,
                "quad": {"rel_tol": q.rel_tol, "abs_tol": q.abs_tol,
                         "max_refinements": q.max_refinements,
                         "rule": q.rule},
            },
            "rows": self.rows,
            "checks": [c.to_record() for c in self.checks],
            "chosen_e3_reading": self.chosen_e3_reading,
        }


def sweep(params: nc.ProblemParams, alphas) -> SweepReport:
    """Solve the curve on an alpha grid; row failures are recorded, not raised."""
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise ValueError("alpha grid must be nonempty")
    if any(not (math.isfinite(a) and a > 0.0) for a in alphas):
        raise ValueError("alphas must be positive and finite")
    if len(set(alphas)) != len(alphas):
        raise ValueError("alphas must be distinct")
    report = SweepReport(params=params)
    for a in sorted(alphas):
        try:
            sol = nc.solve_alpha(a, params)
        except (BiflogisError, ValueError, OverflowError) as exc:
            report.rows.append(
                {"alpha": a, "error": f"{type(exc).__name__}: {exc}"})
            report.solutions.append(None)
            continue
        report.rows.append(sol.to_record())
        report.solutions.append(sol)
    return report


def estimate_order(xs, rs) -> float:
    """Least-squares slope of log|r| against log x.

    Zero remainders are dropped (they carry no order information); two
    surviving points degrade gracefully to the log-ratio formula, which is
    what the least-squares fit reduces to there.
    """
    xs = np.asarray(list(xs), dtype=float)
    rs = np.asarray(list(rs), dtype=float)
    if xs.shape != rs.shape:
        raise ValueError("xs and rs must have equal length")
    keep = (rs != 0.0) & np.isfinite(rs) & np.isfinite(xs) & (xs > 0.0)
    xs, rs = xs[keep], rs[keep]
    if len(xs) < 2 or len(np.unique(xs)) < 2:
        raise DegenerateFit(
            f"need >= 2 distinct x with nonzero remainders, kept {len(xs)}")
    slope = np.polyfit(np.log(xs), np.log(np.abs(rs)), 1)[0]
    return float(slope)


def _order_or_nan(xs, rs) -> float:
    try:
        return estimate_order(xs, rs)
    except DegenerateFit:
        return math.nan


def extrapolate_limit(xs, ys, order: float, direction: str = "inf") -> float:
    """Two-point Richardson limit of y = L + c x^{-order} (x to infinity)
    or y = L + c x^{order} (x to zero), using the two grid points nearest
    the limit."""
    xs = np.asarray(list(xs), dtype=float)
    ys = np.asarray(list(ys), dtype=float)
    if len(xs) < 2:
        raise DegenerateFit("need >= 2 points to extrapolate")
    if direction not in ("inf", "zero"):
        raise ValueError(f"direction must be 'inf' or 'zero', got {direction}")
    idx = np.argsort(xs)
    if direction == "inf":
        ia, ib = idx[-2], idx[-1]
        pa, pb = xs[ia] ** (-order), xs[ib] ** (-order)
    else:
        ia, ib = idx[1], idx[0]
        pa, pb = xs[ia] ** order, xs[ib] ** order
    if pa == pb:
        raise DegenerateFit("identical extrapolation abscissae")
    c = (ys[ia] - ys[ib]) / (pa - pb)
    return float(ys[ib] - c * pb)


def _valid_rows(report: SweepReport):
    out = [(row["alpha"], sol) for row, sol in
           zip(report.rows, report.solutions) if sol is not None]
    if not out:
        raise ValueError("report contains no valid rows")
    return out


def check_theorem_1(report: SweepReport) -> CheckResult:
    """Supercritical growth law lambda = alpha^{p-1}(1 + C1 sqrt(a1+a2)
    alpha^{-(p-3)/2} + O(alpha^{-(p-3)}))."""
    params = report.params
    p = params.p
    if params.regime != "supercritical":
        raise WrongRegime(f"supercritical law needs p > 3, got p = {p}")
    rows = _valid_rows(report)
    alphas = np.array([a for a, _ in rows])
    if len(rows) < 4 or alphas.max() / alphas.min() < 10.0:
        raise ValueError("need >= 4 points spanning at least a decade")
    lams = np.array([s.lam for _, s in rows])
    resid = lams / alphas ** (p - 1.0) - 1.0
    ys = resid * alphas ** ((p - 3.0) / 2.0)
    estimate = extrapolate_limit(alphas, ys, (p - 3.0) / 2.0, "inf")
    c1 = consts.compute_C1(p, params.quad)
    target = c1 * math.sqrt(params.a1 + params.a2)
    return _mk_check("theorem_1_leading", target, estimate,
                     _rel(estimate, target),
                     _order_or_nan(alphas, resid), 0.02)


def check_theorem_2(report: SweepReport) -> tuple[CheckResult, CheckResult]:
    """Critical exact law lambda(alpha) = (gamma(d1)/d1^2) alpha^2."""
    params = report.params
    if params.regime != "critical":
        raise WrongRegime(f"critical law needs p = 3, got p = {params.p}")
    rows = _valid_rows(report)
    alphas = np.array([a for a, _ in rows])
    ratios = np.array([s.lam for _, s in rows]) / alphas ** 2
    mean = float(np.mean(ratios))
    spread = float((ratios.max() - ratios.min()) / mean)
    constancy = _mk_check("theorem_2_constancy", 0.0, spread, spread,
                          math.nan, 1e-10)
    # Reference value straight from the normalization point (3.1), not from
    # the sweep itself.
    d1_sol = nc.solve_alpha(1.0, params)
    target = d1_sol.local.gamma / d1_sol.local.d ** 2
    ratio_check = _mk_check("theorem_2_ratio", target, mean,
                            _rel(mean, target), math.nan, 1e-10)
    return constancy, ratio_check


def check_theorem_3(report: SweepReport,
                    constants_paper: consts.ConstantSet,
                    constants_variant: consts.ConstantSet):
    """Subcritical law under both E3 readings; numerics arbitrate.

    Returns (leading check, second-order check, chosen reading). The losing
    reading's leading mismatch rides along in other_rel_error. Raises
    AmbiguousReading when neither reading's leading coefficient matches.
    """
    params = report.params
    p = params.p
    if params.regime != "subcritical":
        raise WrongRegime(f"subcritical law needs 1 < p < 3, got p = {p}")
    rows = _valid_rows(report)
    alphas = np.array([a for a, _ in rows])
    if len(rows) < 3 or alphas.max() / alphas.min() < 100.0:
        raise ValueError("need >= 3 points spanning at least two decades")
    lams = np.array([s.lam for _, s in rows])
    ys = lams / alphas ** 2
    estimate = extrapolate_limit(alphas, ys, 3.0 - p, "inf")

    tol_leading = 0.005
    cands = {}
    for cs in (constants_paper, constants_variant):
        if cs.leading_coeff is None:
            raise ValueError(f"ConstantSet for reading {cs.e3_reading!r} "
                             "carries no subcritical coefficients")
        cands[cs.e3_reading] = (cs, _rel(estimate, cs.leading_coeff))
    passing = [r for r, (_, e) in cands.items() if e <= tol_leading]
    if not passing:
        raise AmbiguousReading(
            "neither E3 reading matches the computed curve: "
            + ", ".join(f"{r}: rel_error = {e:.3e}"
                        for r, (_, e) in cands.items()))
    # Both passing cannot genuinely happen (the readings differ by pi powers);
    # if tolerances ever let both through, prefer the closer one. A pinned
    # run may pass the same set twice, leaving no losing reading to report.
    chosen = min(passing, key=lambda r: cands[r][1])
    others = [r for r in cands if r != chosen]
    cs, rel_lead = cands[chosen]
    lam0 = cs.leading_coeff

    remainder = ys / lam0 - 1.0
    order = _order_or_nan(alphas, remainder)
    leading = _mk_check("theorem_3_leading", lam0, estimate, rel_lead,
                        order, tol_leading,
                        other_rel_error=cands[others[0]][1]
                        if others else None)

    y2 = remainder * alphas ** (3.0 - p)
    est2 = extrapolate_limit(alphas, y2, 3.0 - p, "inf")
    target2 = cs.second_coeff
    second = _mk_check("theorem_3_second", target2, est2,
                       _rel(est2, target2), order, 0.05)
    return leading, second, chosen


def _local_states(p: float, q: float, ds, quad: QuadSpec):
    lp = ll.LocalParams(p=p, quad=quad)
    out = []
    for d in ds:
        point = ll.solve_for_d(float(d), lp)
        wq = ll.point_q_norm(point, q, lp)
        out.append((point, wq))
    return out


def check_local_large_d(p: float, q: float, d_grid,
                        quad: QuadSpec = QuadSpec()) -> list[CheckResult]:
    """Large-d laws: eigenvalue shift C1, the q-norm relation residual, and
    the D(d) coefficient (2/(p-1)) C1 - (2/q) Cq."""
    if p <= 3.0:
        raise WrongRegime(f"large-d checks need p > 3, got p = {p}")
    ds = [float(d) for d in d_grid]
    if len(ds) < 2 or any(b <= a for a, b in zip(ds, ds[1:])):
        raise ValueError("d_grid must be increasing with >= 2 points")
    if max(ds) < 1e3:
        raise ValueError("d_grid must reach 1e3")
    states = _local_states(p, q, ds, quad)
    dd = np.array([pt.d for pt, _ in states])
    gammas = np.array([pt.gamma for pt, _ in states])
    wqs = np.array([w for _, w in states])

    c1 = consts.compute_C1(p, quad)
    cq = consts.compute_Cq(p, q, quad)

    y1 = (gammas - dd ** (p - 1.0)) / dd ** ((p - 1.0) / 2.0)
    est1 = extrapolate_limit(dd, y1, (p - 1.0) / 2.0, "inf")
    shift = _mk_check("large_d_gamma_shift", c1, est1, _rel(est1, c1),
                      _order_or_nan(dd, y1 - c1), 0.01)

    model = gammas * (1.0 - cq / np.sqrt(gammas)) ** ((p - 1.0) / q)
    resid = wqs ** (p - 1.0) / model - 1.0
    est2 = float(resid[-1])
    relation = _mk_check("large_d_qnorm_relation", 0.0, est2, abs(est2),
                         _order_or_nan(dd, resid), 1e-6)

    y3 = (wqs ** 2 / dd ** 2 - 1.0) * dd ** ((p - 1.0) / 2.0)
    est3 = extrapolate_limit(dd, y3, (p - 1.0) / 2.0, "inf")
    target3 = (2.0 / (p - 1.0)) * c1 - (2.0 / q) * cq
    rel3 = abs(est3 - target3) / max(abs(target3), cq)
    dcoef = _mk_check("large_d_D_coefficient", target3, est3, rel3,
                      _order_or_nan(dd, y3 - target3), 0.02)
    return [shift, relation, dcoef]


def check_local_small_d(p: float, q: float, d_grid,
                        quad: QuadSpec = QuadSpec(), *,
                        a1: float = 1.0, a2: float = 1.0,
                        reading: str = "proof_variant",
                        alphas=None,
                        include_pipeline: bool | None = None
                        ) -> list[CheckResult]:
    """Small-d laws: the A3, A4, and (2/q) A2/A1 expansion coefficients,
    plus (in the subcritical regime) the d(alpha) pipeline law of the
    growth analysis.

    The A4 target is evaluated at q = 2 regardless of the sweep's q: the
    amplitude ratio k^2/(2 d^2) does not involve q, and its derivation pins
    the norm exponent to 2. include_pipeline defaults to running the
    pipeline check exactly when 1 < p < 3; forcing it outside that band
    raises WrongRegime.
    """
    ds = [float(d) for d in d_grid]
    if len(ds) < 2 or any(b >= a for a, b in zip(ds, ds[1:])):
        raise ValueError("d_grid must be decreasing with >= 2 points")
    if min(ds) > 1e-3:
        raise ValueError("d_grid must reach down to 1e-3")
    subcritical = 1.0 < p < 3.0
    if include_pipeline is None:
        include_pipeline = subcritical
    if include_pipeline and not subcritical:
        raise WrongRegime(
            f"the d(alpha) pipeline law needs 1 < p < 3, got p = {p}")

    states = _local_states(p, q, ds, quad)
    dd = np.array([pt.d for pt, _ in states])
    gammas = np.array([pt.gamma for pt, _ in states])
    ks = np.array([pt.k for pt, _ in states])
    wqs = np.array([w for _, w in states])
    dp = dd ** (p - 1.0)

    A = consts.compute_A(p, q, quad, with_a6=False)
    a3 = A["A3"]
    a4 = consts.compute_A(p, 2.0, quad, with_a6=False)
    a4 = (a4["A3"] - 4.0 * a4["A2"]) / math.pi
    t32 = (2.0 / q) * (A["A2"] / A["A1"])

    y1 = (np.sqrt(gammas) - math.pi) / dp
    est1 = extrapolate_limit(dd, y1, p - 1.0, "zero")
    r1 = _mk_check("small_d_gamma_shift", a3, est1, _rel(est1, a3),
                   _order_or_nan(dd, y1 - a3), 0.01)

    y2 = (ks ** 2 / (2.0 * dd ** 2) - 1.0) / dp
    est2 = extrapolate_limit(dd, y2, p - 1.0, "zero")
    r2 = _mk_check("small_d_amplitude", a4, est2, _rel(est2, a4),
                   _order_or_nan(dd, y2 - a4), 0.02)

    y3 = (wqs ** 2 * gammas ** (1.0 / q)
          / ((2.0 * A["A1"]) ** (2.0 / q) * ks ** 2) - 1.0) / dp
    est3 = extrapolate_limit(dd, y3, p - 1.0, "zero")
    r3 = _mk_check("small_d_qnorm", t32, est3, _rel(est3, t32),
                   _order_or_nan(dd, y3 - t32), 0.02)
    out = [r1, r2, r3]

    if include_pipeline:
        grid = [float(a) for a in (alphas if alphas is not None
                                   else (1e2, 1e3, 1e4))]
        params = nc.ProblemParams(p=p, q=q, a1=a1, a2=a2, quad=quad)
        e3 = consts.compute_E(p, q, a1, a2, reading, quad)["E3"]
        ratios = []
        for a in sorted(grid):
            sol = nc.solve_alpha(a, params)
            ratios.append(sol.local.d ** (p - 1.0) * e3 ** ((p - 3.0) / 2.0)
                          / a ** (p - 3.0))
        est4 = ratios[-1]
        r4 = _mk_check("small_d_pipeline", 1.0, est4, _rel(est4, 1.0),
                       _order_or_nan(sorted(grid),
                                     [r - 1.0 for r in ratios]), 0.02)
        out.append(r4)
    return out
