"""Closed-form asymptotic constants of the bifurcation curve.

The curve's limit laws are governed by a small family of explicit integrals:

- ``C1``: large-d eigenvalue correction, gamma(d) = d^{p-1} + C1 d^{(p-1)/2} + O(1);
- ``Cq``: large-d norm deficit, ||w||_q^{p-1} = gamma (1 - Cq/sqrt(gamma))^{(p-1)/q};
- ``A1..A6``: small-d expansion coefficients (gamma, k, and ||w||_q near the
  bifurcation point pi^2);
- ``E1..E5``: the subcritical (1 < p < 3) growth-law constants assembled from
  the A family and the Kirchhoff weights (a1, a2).

E3 and E5 carry a ``reading`` switch: the source formulas for their pi-powers
circulate in two variants whose exponent denominators differ, (p-1)q versus
(p-3)q. Both are computed; numerical sweeps (verify module) arbitrate. The
composed subcritical growth law implemented by ``theorem3_coefficients`` is

    lambda(alpha) = L0 alpha^2 (1 + S alpha^{p-3} + o(alpha^{p-3})),
    L0 = pi^{2{q(p-3)-(p-1)}/(q(p-3))} E1^{(p-1)/(p-3)} / E3,
    S  = {(p-1)/(p-3) (E2/E1) + E4} E3^{-(p-3)/2} - E5,

the (p-1)/(p-3) powers of E1 and of the E2/E1 term being forced by the exact
reduction lambda = beta gamma, beta = (normalization)^{(p-1)/(p-3)}; dropping
them (a common transcription slip) fails against the computed curve under
every reading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DivisionByZero, InvalidRegime, ZeroCoefficients
from .local_logistic import phi
from .quadrature import DOUBLE_EXPONENTIAL, QuadSpec, integrate

__all__ = [
    "READINGS",
    "ConstantSet",
    "compute_A",
    "compute_C1",
    "compute_Cq",
    "compute_E",
    "theorem3_coefficients",
    "compute_all",
]

PI = math.pi

READINGS = ("paper_definition", "proof_variant")


def _check_pq(p: float, q: float) -> None:
    if not (math.isfinite(p) and p > 1.0):
        raise ValueError(f"p must be finite and > 1, got {p}")
    if not (math.isfinite(q) and q > 0.0):
        raise ValueError(f"q must be finite and positive, got {q}")


def compute_A(p: float, q: float, quad: QuadSpec = QuadSpec(), *,
              with_a6: bool = True) -> dict:
    """The A-family of small-d expansion constants.

    A1 = int_0^1 s^q (1-s^2)^{-1/2} ds and the phi-weighted variants A2, A3,
    A5; A4 and A6 follow algebraically. All integrals are evaluated after
    s = sin(theta), which removes the endpoint square root exactly and
    leaves smooth integrands. A6 has p - 3 in its denominator: request it
    with ``with_a6=False`` at p = 3 (it backs constants that only serve the
    subcritical regime).
    """
    _check_pq(p, q)

    def a1_f(th):
        return np.sin(th) ** q

    def aq_f(th):
        s = np.sin(th)
        return s ** q * phi(s, p)

    def a0_f(th):
        return phi(np.sin(th), p)

    def a2_f(th):
        s = np.sin(th)
        return s * s * phi(s, p)

    half = 0.5 * PI
    a1 = integrate(a1_f, 0.0, half, quad).value
    pref = math.sqrt(2.0) ** (p - 1.0) / ((p + 1.0) * PI ** 2)
    a2 = pref * integrate(aq_f, 0.0, half, quad).value
    a3 = 2.0 * pref * integrate(a0_f, 0.0, half, quad).value
    a4 = (a3 - 4.0 * a2) / PI
    a5 = integrate(a2_f, 0.0, half, quad).value / ((p + 1.0) * PI ** 2)
    out = {"A1": a1, "A2": a2, "A3": a3, "A4": a4, "A5": a5}
    if with_a6:
        if p == 3.0:
            raise DivisionByZero("A6 has p - 3 in its denominator; "
                                 "pass with_a6=False at p = 3")
        out["A6"] = 4.0 * a3 / ((p - 3.0) * q * PI)
    return out


def _de(quad: QuadSpec) -> QuadSpec:
    return quad.with_rule(DOUBLE_EXPONENTIAL)


def compute_C1(p: float, quad: QuadSpec = QuadSpec()) -> float:
    """C1 = (p+3) int_0^1 sqrt(f(s)) ds, f = (p-1)/(p+1) - s^2 + 2s^{p+1}/(p+1).

    f has a double zero at s = 1; sqrt(f) = (1-s) sqrt((p-1) c(1-s)) stays
    analytic, so the integrand is evaluated through the regular factor c.
    """
    _check_pq(p, 2.0)

    def f(s, da, db):
        u = np.asarray(db, dtype=float)
        return u * np.sqrt((p - 1.0) * kernels.c_factor(u, p))

    f.endpoint_aware = True
    return (p + 3.0) * integrate(f, 0.0, 1.0, _de(quad)).value


def compute_Cq(p: float, q: float, quad: QuadSpec = QuadSpec()) -> float:
    """Cq = 2 int_0^1 (1 - s^q)/sqrt(f(s)) ds.

    Numerator and sqrt(f) both vanish linearly at s = 1; the ratio tends to
    q/sqrt(p-1), supplied by a series branch below u = 1 - s = 1e-6.
    """
    _check_pq(p, q)

    def f(s, da, db):
        u = np.asarray(db, dtype=float)
        out = np.empty_like(u)
        near = u < 1e-6
        mid = ~near & (u < 0.5)
        big = u >= 0.5
        if np.any(big):
            ub = u[big]
            num = 1.0 - (1.0 - ub) ** q
            den = ub * np.sqrt((p - 1.0) * kernels.c_factor(ub, p))
            out[big] = num / den
        if np.any(mid):
            um = u[mid]
            num = -np.expm1(q * np.log1p(-um))
            den = um * np.sqrt((p - 1.0) * kernels.c_factor(um, p))
            out[mid] = num / den
        if np.any(near):
            un = u[near]
            out[near] = q / math.sqrt(p - 1.0) \
                * (1.0 + (p / 6.0 - (q - 1.0) / 2.0) * un)
        return out

    f.endpoint_aware = True
    return 2.0 * integrate(f, 0.0, 1.0, _de(quad)).value


def _check_weights(a1: float, a2: float) -> None:
    if a1 < 0.0 or a2 < 0.0:
        raise ValueError(f"a1 and a2 must be nonnegative, got {a1}, {a2}")
    if a1 + a2 <= 0.0:
        raise ZeroCoefficients("a1 + a2 must be positive")


def _check_reading(reading: str) -> None:
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}, got {reading!r}")


def compute_E(p: float, q: float, a1: float, a2: float, reading: str,
              quad: QuadSpec = QuadSpec()) -> dict:
    """The subcritical growth-law constants E1..E5 (valid for 1 < p < 3).

    ``reading`` selects the exponent denominator of the pi-powers inside E3
    and E5: (p-1)q for ``paper_definition``, (p-3)q for ``proof_variant``.
    """
    _check_pq(p, q)
    if not (1.0 < p < 3.0):
        raise InvalidRegime(f"E constants require 1 < p < 3, got p = {p}")
    _check_weights(a1, a2)
    _check_reading(reading)

    A = compute_A(p, q, quad)
    a1q = a1 * 2.0 ** ((q + 2.0) / q) * A["A1"] ** (2.0 / q)
    e1 = a1q + a2 * PI ** (2.0 / q)
    e2 = a1q * (A["A4"] + (2.0 / q) * (A["A2"] / A["A1"])) \
        + (2.0 * a2 * PI ** ((2.0 - q) / q) / q) * A["A3"]
    denom = (p - 1.0) if reading == "paper_definition" else (p - 3.0)
    e3 = PI ** (-4.0 / (denom * q)) * e1 ** (2.0 / (p - 3.0))
    e4 = 2.0 * (q * (p - 3.0) - (p - 1.0)) / (q * (p - 3.0) * PI) * A["A3"]
    e5 = ((2.0 / (p - 3.0)) * (e2 / e1) - A["A6"]) \
        * PI ** (2.0 * (p - 3.0) / (denom * q)) / e1
    return {"E1": e1, "E2": e2, "E3": e3, "E4": e4, "E5": e5}


def theorem3_coefficients(p: float, q: float, a1: float, a2: float,
                          reading: str,
                          quad: QuadSpec = QuadSpec()) -> tuple[float, float]:
    """(leading, second) of the subcritical law lambda = L0 a^2 (1 + S a^{p-3} + o).

    Composition of the E constants per the module docstring; the E1 and
    E2/E1 terms enter with power (p-1)/(p-3) from beta = N^{(p-1)/(p-3)}.
    """
    E = compute_E(p, q, a1, a2, reading, quad)
    expo = (q * (p - 3.0) - (p - 1.0)) / (q * (p - 3.0))
    ratio = (p - 1.0) / (p - 3.0)
    leading = PI ** (2.0 * expo) * E["E1"] ** ratio / E["E3"]
    second = (ratio * (E["E2"] / E["E1"]) + E["E4"]) \
        * E["E3"] ** (-(p - 3.0) / 2.0) - E["E5"]
    return leading, second


@dataclass(frozen=True)
class ConstantSet:
    """Every constant the curve's asymptotics use, for one (p, q, a1, a2).

    E1..E5, leading_coeff, second_coeff are None outside 1 < p < 3, and A6
    is None at p = 3 (undefined there).
    """

    p: float
    q: float
    a1: float
    a2: float
    C1: float
    Cq: float
    A1: float
    A2: float
    A3: float
    A4: float
    A5: float
    A6: float | None
    E1: float | None
    E2: float | None
    E3: float | None
    E4: float | None
    E5: float | None
    e3_reading: str
    leading_coeff: float | None
    second_coeff: float | None

    def to_record(self) -> dict:
        """Flat key/value record with the canonical field names."""
        return {
            "p": self.p, "q": self.q, "a1": self.a1, "a2": self.a2,
            "C1": self.C1, "Cq": self.Cq,
            "A1": self.A1, "A2": self.A2, "A3": self.A3,
            "A4": self.A4, "A5": self.A5, "A6": self.A6,
            "E1": self.E1, "E2": self.E2, "E3": self.E3,
            "E4": self.E4, "E5": self.E5,
            "e3_reading": self.e3_reading,
            "leading_coeff": self.leading_coeff,
            "second_coeff": self.second_coeff,
        }


def compute_all(p: float, q: float, a1: float, a2: float,
                reading: str = "proof_variant",
                quad: QuadSpec = QuadSpec()) -> ConstantSet:
    """Assemble the full ConstantSet; regime-restricted entries become None."""
    _check_pq(p, q)
    _check_weights(a1, a2)
    _check_reading(reading)
    subcritical = 1.0 < p < 3.0
    A = compute_A(p, q, quad, with_a6=(p != 3.0))
    c1 = compute_C1(p, quad)
    cq = compute_Cq(p, q, quad)
    if subcritical:
        E = compute_E(p, q, a1, a2, reading, quad)
        leading, second = theorem3_coefficients(p, q, a1, a2, reading, quad)
    else:
        E = {f"E{i}": None for i in range(1, 6)}
        leading = second = None
    return ConstantSet(
        p=p, q=q, a1=a1, a2=a2, C1=c1, Cq=cq,
        A1=A["A1"], A2=A["A2"], A3=A["A3"], A4=A["A4"], A5=A["A5"],
        A6=A.get("A6"),
        E1=E["E1"], E2=E["E2"], E3=E["E3"], E4=E["E4"], E5=E["E5"],
        e3_reading=reading, leading_coeff=leading, second_coeff=second,
    )
