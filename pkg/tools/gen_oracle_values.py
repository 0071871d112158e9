"""Generate frozen reference values for the test suite with mpmath.

Run from the repository root:

    python3 tools/gen_oracle_values.py > tests/_oracle_values.py

Everything here is computed by direct arbitrary-precision quadrature and
root-finding on the raw integrals in the s (or theta = arcsin s) variable,
deliberately sharing no code with the package (no layer substitution, no
series kernels, different solvers), so the frozen numbers are an independent
oracle. 60 working digits; printed with repr round-trip precision.
"""

import sys

import mpmath as mp

mp.mp.dps = 60


def _quad(f, pts, tol=mp.mpf("1e-25")):
    val, err = mp.quad(f, pts, error=True)
    assert err < tol * (1 + abs(val)), f"quadrature error {err} too large"
    return val


def phi(s, p):
    """(1 - s^{p+1})/(1 - s^2) with a Taylor branch near s = 1."""
    s = mp.mpf(s)
    if s > 1 - mp.mpf("1e-12"):
        u = 1 - s
        return (p + 1) / 2 * (1 - (p - 1) * u / 2
                              + (p - 1) * (2 * p - 3) / 12 * u ** 2)
    return (1 - s ** (p + 1)) / (1 - s ** 2)


def f_inner(s, p):
    """f(s) = (p-1)/(p+1) - s^2 + 2 s^{p+1}/(p+1), evaluated stably via
    f = u(2-u) - (2/(p+1))(1 - (1-u)^{p+1}), u = 1 - s."""
    s = mp.mpf(s)
    u = 1 - s
    return u * (2 - u) - (2 / (p + 1)) * (-mp.expm1((p + 1) * mp.log1p(-u)))


def a1_gamma(q):
    q = mp.mpf(q)
    return mp.sqrt(mp.pi) * mp.gamma((q + 1) / 2) / (2 * mp.gamma(q / 2 + 1))


def a_theta_integral(p, q):
    # int_0^1 s^q phi(s) (1-s^2)^{-1/2} ds via s = sin(theta)
    p, q = mp.mpf(p), mp.mpf(q)
    return _quad(lambda th: mp.sin(th) ** q * phi(mp.sin(th), p),
                 [0, mp.pi / 2])


def compute_A(p, q):
    p, q = mp.mpf(p), mp.mpf(q)
    pref = mp.sqrt(2) ** (p - 1) / ((p + 1) * mp.pi ** 2)
    a1 = _quad(lambda th: mp.sin(th) ** q, [0, mp.pi / 2])
    a2 = pref * a_theta_integral(p, q)
    a3 = 2 * pref * a_theta_integral(p, 0)
    a4 = (a3 - 4 * a2) / mp.pi
    a5 = a_theta_integral(p, 2) / ((p + 1) * mp.pi ** 2)
    out = {"A1": a1, "A2": a2, "A3": a3, "A4": a4, "A5": a5}
    if p != 3:
        out["A6"] = 4 * a3 / ((p - 3) * q * mp.pi)
    return out


def compute_C1(p):
    p = mp.mpf(p)
    return (p + 3) * _quad(lambda s: mp.sqrt(f_inner(s, p)),
                           [0, mp.mpf("0.5"), mp.mpf("0.999999"), 1])


def compute_Cq(p, q):
    p, q = mp.mpf(p), mp.mpf(q)

    def g(s):
        s = mp.mpf(s)
        u = 1 - s
        if u < mp.mpf("1e-25"):
            return q / mp.sqrt(p - 1) * (1 + (p / 6 - (q - 1) / 2) * u)
        return (1 - s ** q) / mp.sqrt(f_inner(s, p))

    return 2 * _quad(g, [0, mp.mpf("0.5"), mp.mpf("0.999"), 1])


def moment(p, eps, q):
    """J_q(eps) = int_0^1 s^q F^{-1/2} ds with
    F = eps (1-s^2) + (1-eps) f(s) = (1-s^2)(1 - mu phi(s)),
    mu = 2(1-eps)/(p+1); computed in theta = arcsin(s), where the integrand
    is smooth with a width-sqrt(eps) shoulder at theta = pi/2."""
    p, eps, q = mp.mpf(p), mp.mpf(eps), mp.mpf(q)
    mu = 2 * (1 - eps) / (p + 1)

    def g(th):
        s = mp.sin(th)
        return s ** q / mp.sqrt(1 - mu * phi(s, p))

    half = mp.pi / 2
    width = mp.sqrt(2 * eps / (p - 1))
    pts = [0, half - mp.mpf("0.3")]
    for c in (30, 3, mp.mpf("0.3"), mp.mpf("0.03")):
        cut = c * width
        if cut < mp.mpf("0.25"):
            pts.append(half - cut)
    pts.append(half)
    return _quad(g, pts)


def gamma_of_eps(p, eps):
    return 4 * moment(p, eps, 0) ** 2


def eps_for_k(p, k, seed):
    p, k = mp.mpf(p), mp.mpf(k)

    def resid(eps):
        return 4 * (1 - eps) * moment(p, eps, 0) ** 2 - k ** (p - 1)

    return mp.findroot(resid, seed)


def eps_for_d(p, d, seed):
    p, d = mp.mpf(p), mp.mpf(d)

    def resid(eps):
        j0 = moment(p, eps, 0)
        j2 = moment(p, eps, 2)
        k2 = (4 * (1 - eps) * j0 ** 2) ** (mp.mpf(2) / (p - 1))
        return k2 * j2 / j0 - d ** 2

    return mp.findroot(resid, seed)


def point_from_eps(p, eps):
    p = mp.mpf(p)
    j0 = moment(p, eps, 0)
    j2 = moment(p, eps, 2)
    gamma = 4 * j0 ** 2
    k = (4 * (1 - eps) * j0 ** 2) ** (1 / (p - 1))
    d = k * mp.sqrt(j2 / j0)
    return k, gamma, d, j0


def time_map_direct(k, gamma, p):
    k, gamma, p = mp.mpf(k), mp.mpf(gamma), mp.mpf(p)
    mu = 2 * k ** (p - 1) / ((p + 1) * gamma)
    return _quad(lambda th: 1 / mp.sqrt(1 - mu * phi(mp.sin(th), p)),
                 [0, mp.pi / 2]) / mp.sqrt(gamma)


def fmt(x):
    return repr(float(x))


def main():
    out = {}

    for q in ("1.5", "2", "3", "4.7"):
        out[f"A1[q={q}]"] = a1_gamma(q)

    for p, q in (("2", "2"), ("3", "2"), ("2.5", "3"), ("5", "2")):
        a = compute_A(p, q)
        for name, val in a.items():
            out[f"{name}[p={p},q={q}]"] = val

    for p in ("2", "2.5", "3", "5"):
        out[f"C1[p={p}]"] = compute_C1(p)

    for p, q in (("5", "2"), ("2", "2"), ("2.5", "3"), ("2", "3"), ("3", "2")):
        out[f"Cq[p={p},q={q}]"] = compute_Cq(p, q)

    for p, eps, q in (("3", "0.5", "0"), ("3", "0.5", "2"), ("3", "0.5", "4"),
                      ("2", "0.9", "0"), ("2", "0.9", "2"),
                      ("5", "1e-6", "0"), ("5", "1e-6", "2")):
        out[f"J[p={p},eps={eps},q={q}]"] = moment(p, eps, q)

    # On-curve anchors: solve 4(1-eps)J0^2 = k^{p-1}, then gamma, d.
    anchors = (("3", "1", mp.mpf("0.9")),
               ("2", "1", mp.mpf("0.91")),
               ("5", "2", mp.mpf("0.25")))
    for p, k, seed in anchors:
        eps = eps_for_k(p, k, seed)
        kk, gamma, d, j0 = point_from_eps(p, eps)
        assert abs(kk - mp.mpf(k)) < mp.mpf("1e-40"), (p, k, kk)
        out[f"gamma[p={p},k={k}]"] = gamma
        out[f"d[p={p},k={k}]"] = d
        out[f"eps[p={p},k={k}]"] = eps
        if p == "3":
            j4 = moment(p, eps, 4)
            out[f"w4[p={p},k={k}]"] = kk * (j4 / j0) ** mp.mpf("0.25")

    # gamma at d = 1 for p = 3 (critical-branch anchor, q = 2).
    eps1 = eps_for_d("3", "1", mp.mpf("0.55"))
    k1, g1, d1, _ = point_from_eps("3", eps1)
    assert abs(d1 - 1) < mp.mpf("1e-40"), d1
    out["gamma[p=3,d=1]"] = g1
    out["k[p=3,d=1]"] = k1

    # Oracle-route anchors at fixed gamma (shooting-comparison targets).
    for p, gamma, seed in (("2", "15", mp.mpf("0.4")), ("3", "20", mp.mpf("0.5"))):
        eps = mp.findroot(lambda e: gamma_of_eps(p, e) - mp.mpf(gamma), seed)
        k, gm, d, j0 = point_from_eps(p, eps)
        out[f"k[p={p},gamma={gamma}]"] = k
        out[f"d[p={p},gamma={gamma}]"] = d

    # Time map away from the solution curve.
    out["T[p=3,k=1,gamma=2]"] = time_map_direct(1, 2, 3)

    # Mid-profile abscissa for p = 3, k = 1: x at s = w/k = 1/2.
    eps = eps_for_k("3", "1", mp.mpf("0.9"))
    _, gamma, _, _ = point_from_eps("3", eps)
    em = 1 - eps
    p3 = mp.mpf(3)
    mu = 2 * em / (p3 + 1)

    def xprime(th):
        return 1 / mp.sqrt(1 - mu * phi(mp.sin(th), p3))

    out["x_at_half[p=3,k=1]"] = _quad(xprime, [0, mp.asin(mp.mpf("0.5"))]) \
        / mp.sqrt(gamma)

    w = sys.stdout.write
    w('"""Frozen high-precision reference values.\n\n')
    w("Generated by tools/gen_oracle_values.py (mpmath, 60 digits) and pasted\n")
    w("verbatim; regenerate with the same command if entries are added. Keys\n")
    w('name the quantity and its parameters.\n"""\n\n')
    w("ORACLE = {\n")
    for key, val in out.items():
        w(f'    "{key}": {fmt(val)},\n')
    w("}\n")


if __name__ == "__main__":
    main()
