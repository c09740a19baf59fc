#!/usr/bin/env python3
"""Independent high-precision oracle for the frozen expected values in the C++ tests.

Every value here is computed from the closed-form definitions with mpmath at
50 significant digits, without touching the C++ implementation. Run it to
regenerate the constants pasted into tests/*.cpp:

    python3 tests/oracles/derived_values.py
"""
import mpmath as mp

mp.mp.dps = 50
log, sqrt, exp = mp.log, mp.sqrt, mp.exp


def psi_wide(x):
    x = mp.mpf(x)
    return log(1 + x + x * x / 2) if x >= 0 else -log(1 - x + x * x / 2)


def psi_narrow(x):
    x = mp.mpf(x)
    if x >= 1:
        return log(2)
    if x >= 0:
        return -log(1 - x + x * x / 2)
    if x >= -1:
        return log(1 + x + x * x / 2)
    return -log(2)


def show(name, value):
    print(f"{name:45s} {mp.nstr(value, 20)}")


# --- influence -------------------------------------------------------------
show("psi_wide(1)", psi_wide(1))
show("psi_narrow(2)", psi_narrow(2))
show("g(1)", 1 - psi_wide(1))
x1 = 1 - sqrt(4 * sqrt(2) - 5)
y1 = -log(2 * (sqrt(2) - 1))
p1 = sqrt(4 * sqrt(2) - 5) / (2 * (sqrt(2) - 1))
chi_sup = y1 + 2 * p1 ** 2
a = 3 * exp(chi_sup) / (4 * log(4))
show("x1", x1)
show("y1", y1)
show("p1", p1)
show("chi_sup", chi_sup)
show("a", a)
show("psi_narrow(x1) (must equal y1)", psi_narrow(x1))

# --- mean criterion / solver ------------------------------------------------
alpha = mp.mpf("0.5")
r = (2 * psi_narrow(alpha * (0 - 1)) + psi_narrow(alpha * (3 - 1))) / (alpha * 3)
show("criterion({0,0,3}, 0.5, narrow, 1)", r)


def r_0_0_100(theta):
    al = mp.mpf("0.1")
    return (2 * psi_narrow(al * (0 - theta)) + psi_narrow(al * (100 - theta))) / (al * 3)


show("root of r on {0,0,100}, alpha=0.1", mp.findroot(r_0_0_100, (mp.mpf(1), mp.mpf(10)), solver="bisect"))


def known_variance(n, v, eps):
    L = log(1 / mp.mpf(eps))
    eta = sqrt(2 * v * L / (n * (1 - 2 * L / n)))
    alpha = sqrt(2 * L / (n * (v + eta ** 2)))
    return alpha, eta


def eps_free(n, v, eps):
    L = log(1 / mp.mpf(eps))
    alpha = sqrt(mp.mpf(2) / (n * v))
    hw = (1 + L) / (mp.mpf(1) / 2 + sqrt(1 - 2 * (1 + L) / n) / 2) * sqrt(mp.mpf(v) / (2 * n))
    return alpha, hw


al, eta = known_variance(100, 1, "0.05")
show("alpha_known_variance(100,1,0.05,dep)", al)
show("halfwidth_known_variance(100,1,0.05,dep)", eta)
al, hw = eps_free(100, 1, "0.05")
show("alpha_known_variance(100,1,0.05,free)", al)
show("halfwidth_known_variance(100,1,0.05,free)", hw)
_, eta = known_variance(10 ** 8, 1, "0.05")
show("halfwidth(1e8,1,0.05,dep)", eta)
show("sqrt(2 log 20 / 1e8)", sqrt(2 * log(20) / mp.mpf(10) ** 8))

# --- lepski -----------------------------------------------------------------


def B(eps, n):
    L = log(1 / mp.mpf(eps))
    return sqrt(2 * L / (n * (1 - 2 * L / n)))


show("adaptive_halfwidth(1,1,1.05,95,0.01,500)", 2 * mp.mpf("1.05") * B(mp.mpf("0.01") / 191, 500))
show("nu_dyadic(V)", mp.mpf(4) / 30)
show("nu_dyadic(3V) s=1 d=1", mp.mpf(1) / (5 * 3 * 4))

# --- variance blocks --------------------------------------------------------
n, p, kappa, e1 = 1000, 4, 3, mp.mpf("0.005")
q = n // p
rr = n - p * q
L1 = log(1 / e1)
chi = kappa - 1 + mp.mpf(2) / (p - 1)
delta = sqrt(2 * p * L1 / (chi * q))
y = 2 * L1 / q
xi_simple = 2 * y * (1 + 2 * y)
zr = chi / p
xi_tight = 4 * y / (1 + zr * delta + sqrt((1 + zr * delta) ** 2 - 4 * (1 + zr) * y))
show("vp(1000,4,3,0.005) chi", chi)
show("vp delta", delta)
show("vp y", y)
show("vp xi simple", xi_simple)
show("vp zeta simple", -log(1 - xi_simple / delta) / 2)
show("vp xi tight", xi_tight)
show("vp zeta tight", -log(1 - xi_tight / delta) / 2)
show("psi_narrow(0.5)", psi_narrow(mp.mpf("0.5")))
show("opt p (1000,3,0.005) raw", sqrt(1000 / ((3 - 1) * (4 * log(200) + mp.mpf(1) / 2))))
show("opt p (100,3,0.005) raw", sqrt(100 / ((3 - 1) * (4 * log(200) + mp.mpf(1) / 2))))


def cor43(n, kappa, e1):
    L = log(1 / mp.mpf(e1))
    inner = 2 * sqrt(2 * (kappa - 1) * L / n) * exp(4 * sqrt((4 * L + mp.mpf(1) / 2) / ((kappa - 1) * n)))
    return -log(1 - inner) / 2


show("zeta_cor(2000,3,0.0025)", cor43(2000, 3, "0.0025"))
show("zeta_cor asymptote", sqrt(2 * 2 * log(400) / 2000))

# --- kurtosis mean ----------------------------------------------------------


def kurt_step(n, zeta, e2):
    s = mp.sinh(mp.mpf(zeta) / 2)
    L2 = log(1 / mp.mpf(e2))
    x = (2 * (a + 1) / 3 * L2) ** (-mp.mpf(1) / 3) * s ** (-mp.mpf(2) / 3)
    den = 1 - (a + 1) / 3 * x ** 2 * s ** 2
    eta = 2 * mp.cosh(mp.mpf(zeta) / 2) ** 2 * (log(1 + 1 / x) + L2) / (n * den)
    gamma = eta / (1 - eta)
    c = 2 * (log(1 + 1 / x) + L2) / (n * den * (1 + gamma))
    return x, eta, gamma, c


x, eta_k, gamma_k, c_k = kurt_step(1000, "0.1", "0.005")
show("kurt step x", x)
show("kurt step eta", eta_k)
show("kurt step c", c_k)
show("kurt step bound sqrt(eta/(1-eta))", sqrt(eta_k / (1 - eta_k)))
show("halfwidth eta=0.01164", sqrt(mp.mpf("0.01164") / (1 - mp.mpf("0.01164"))))

# --- bounds -----------------------------------------------------------------
show("chebyshev(100,1,0.05)", sqrt(mp.mpf(1) / (2 * mp.mpf("0.05") * 100)))


def prop61(n, v, kappa, eps, lam=None):
    n, v, kappa, eps = mp.mpf(n), mp.mpf(v), mp.mpf(kappa), mp.mpf(eps)
    if lam is None:
        arg = log(kappa / (2 * n * eps ** 5))
        lam = min(mp.mpf(1) / 2, 2 ** (mp.mpf(7) / 4) * (n * eps / kappa) ** (mp.mpf(1) / 4) * sqrt(arg))
    L = log(1 / (lam * eps))
    t1 = sqrt(2 * L / n)
    t2 = sqrt(kappa) * L / (3 * n)
    t3 = (kappa / (2 * (1 - lam) * n ** 3 * eps)) ** (mp.mpf(1) / 4) * (
        1 + 3 * (n - 1) * kappa * L ** 2 / (4 ** 3 * (1 + sqrt(2)) ** 4 * n ** 2)) ** (mp.mpf(1) / 4)
    return sqrt(v) * (t1 + t2 + t3), lam


k, lam = prop61(1000, 1, 3, "0.01")
show("kurtosis_halfwidth(1000,1,3,0.01)", k)
show("  default lambda", lam)
show("kurtosis_halfwidth(100,1,3,0.05)", prop61(100, 1, 3, "0.05")[0])
show("fourth(100,1,3,0.05)", (mp.mpf(3 * 99 + 3) / (2 * 100 * mp.mpf("0.05"))) ** (mp.mpf(1) / 4) / 10)
show("Phi^-1(0.95)", mp.sqrt(2) * mp.erfinv(2 * mp.mpf("0.95") - 1))
show("gaussian(100,1,0.05)", mp.sqrt(2) * mp.erfinv(2 * mp.mpf("0.95") - 1) / 10)
show("Phi^-1(0.975)", mp.sqrt(2) * mp.erfinv(2 * mp.mpf("0.975") - 1))
show("Phi^-1(1e-15)", -mp.sqrt(2) * mp.erfinv(1 - 2 * mp.mpf("1e-15")))
show("Phi^-1(1e-300)", -mp.sqrt(2) * mp.erfcinv(2 * mp.mpf("1e-300")) if hasattr(mp, "erfcinv") else mp.nan)
show("Phi^-1(0.02425)", mp.sqrt(2) * mp.erfinv(2 * mp.mpf("0.02425") - 1))


def chi2_quantile(p, k):
    return mp.findroot(lambda t: mp.gammainc(mp.mpf(k) / 2, 0, t / 2, regularized=True) - mp.mpf(p), k)


show("chi2_quantile(0.95,10)", chi2_quantile("0.95", 10))
show("chi2_quantile(0.05,10)", chi2_quantile("0.05", 10))
show("chi2_quantile(0.5,1000)", chi2_quantile("0.5", 1000))
show("chi2_quantile(0.999,3)", chi2_quantile("0.999", 3))


def lower_plain(n, v, eps):
    n, v, eps = mp.mpf(n), mp.mpf(v), mp.mpf(eps)
    return sqrt(v / (2 * n * eps)) * (1 - 2 * mp.e * eps / n) ** ((n - 1) / 2)


show("lower_plain(100,1,0.05)", lower_plain(100, 1, "0.05"))
show("lower_plain/cheb at n=1e6, eps=0.05", lower_plain(10 ** 6, 1, "0.05") / sqrt(1 / (2 * mp.mpf(10) ** 6 * mp.mpf("0.05"))))
show("exp(-e*0.05)", exp(-mp.e * mp.mpf("0.05")))


def lower_kurt(n, v, kappa, eps):
    n, v, kappa, eps = mp.mpf(n), mp.mpf(v), mp.mpf(kappa), mp.mpf(eps)
    A = ((kappa - 1) * (1 - 8 * eps) / (4 * n * eps)) ** (mp.mpf(1) / 4) * sqrt(v / n)
    inner = (kappa - 1) / (2 * n * eps) * (1 - (n * eps / 16) ** (mp.mpf(1) / 4) - 4 * eps)
    Bv = inner ** (mp.mpf(1) / 4) * sqrt(v / n) - sqrt(log(16 / (n * eps)) * v / (2 * n))
    return A, Bv


A, Bv = lower_kurt(100, 1, 3, "0.005")
show("lower_kurtosis(100,1,3,0.005) A", A)
show("lower_kurtosis(100,1,3,0.005) B", Bv)
up = prop61(10 ** 4, 1, 3, "1e-7")[0]
lo = max(lower_kurt(10 ** 4, 1, 3, "1e-7"))
show("prop61/prop73 at (3,1e4,1e-7)", up / lo)
show("(3/2)^(1/4)", (mp.mpf(3) / 2) ** (mp.mpf(1) / 4))

# --- distributions ----------------------------------------------------------


def moments(comps):
    m = sum(w * mu for w, mu, s in comps)
    v = sum(w * (s ** 2 + (mu - m) ** 2) for w, mu, s in comps)
    m4 = sum(w * (3 * s ** 4 + 6 * s ** 2 * (mu - m) ** 2 + (mu - m) ** 4) for w, mu, s in comps)
    return m, v, m4 / v ** 2


F = mp.mpf
for name, comps in [
    ("mix1", [(F("0.7"), 2, 1), (F("0.2"), -2, 1), (F("0.1"), 0, 30)]),
    ("mix2", [(F("0.99"), 0, 1), (F("0.01"), 0, 30)]),
    ("mix3", [(F("0.94"), 0, 1), (F("0.01"), 20, 20), (F("0.05"), -30, 20)]),
    ("mix4", [(F("0.995"), 0, 1), (F("0.005"), 1, 5)]),
]:
    m, v, k = moments(comps)
    show(f"{name} m", m)
    show(f"{name} v", v)
    show(f"{name} kappa", k)


def f_q(x, q):
    return (1 - 2 * q + 2 * q * x ** 4) / (1 - 2 * q + 2 * q * x ** 2) ** 2


qq = F("0.001")
xs = mp.findroot(lambda x: f_q(x, qq) - 3, (F(1), F(100)), solver="bisect")
show("f_q^-1(3), q=0.001", xs)

# Prop 2.2 worst case at n=100, eps=0.05: eta = lower_plain, analytic P(M >= eta)
n, v, eps = 100, F(1), F("0.05")
eta = lower_plain(n, v, eps)
show("worst3 eta", eta)
show("worst3 P(M=eta)", v / (2 * n * eta ** 2) * (1 - v / (n ** 2 * eta ** 2)) ** (n - 1))
