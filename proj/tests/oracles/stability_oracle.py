"""Reference values for sigma_k, omega_{k,tau} and the stability bound.

mpmath at 50 digits; the printed values are frozen into tests/test_stability.cpp.
"""
import mpmath as mp

mp.mp.dps = 50


def Psi(c, r):
    c, r = mp.mpf(c), mp.mpf(r)
    return r * mp.exp(mp.quad(lambda e: mp.expm1(-c * e) / e, [0, r]))


def psi0(c, lam, r):
    return Psi(c, mp.mpf(r) / (2 * mp.sqrt(lam)))


def sigma(k, eps, H, r1, lam):
    C1 = 2 * mp.sqrt(5) / mp.sqrt(lam)
    return 4**k * k * eps**2 + H**2 * k**3 * (C1 * r1) ** (2 * k + 2)


def omega(k, tau, eps, H, r1, st, R, c, lam, C2):
    p = 1 + 2 * tau
    return sigma(k, eps, H, r1, lam) * (psi0(c, lam, st) / psi0(c, lam, r1)) ** p + H**2 * k**3 * 5**k * C2 ** (
        2 * k
    ) * (psi0(c, lam, st) / psi0(c, lam, R)) ** p


def bound(eps, H, rho0, rho, r0, C, alpha):
    th = mp.log(rho0 / (C * rho)) / mp.log(rho0 / r0)
    h1 = H + mp.e * eps
    return C * (rho0 / rho) ** C * h1**2 / (th * mp.log(h1 / eps)) ** alpha


f = lambda s: mp.mpf(s)
print("sigma(k=1, eps=0, H=1, C1 r1=0.1)", mp.nstr(sigma(1, 0, 1, f("0.1") / (2 * mp.sqrt(5)), 1), 17))
print("sigma(8, 1e-3, 1, 0.05, 1)", mp.nstr(sigma(8, f("1e-3"), 1, f("0.05"), 1), 17))
print("sigma(8, 1e-6, 1, 0.1, 1)", mp.nstr(sigma(8, f("1e-6"), 1, f("0.1"), 1), 17))
print("omega(8, 8, 1e-3, 1, 0.05, 0.1, 0.25; C*=4, lambda=1, C2=2)",
      mp.nstr(omega(8, 8, f("1e-3"), 1, f("0.05"), f("0.1"), f("0.25"), 4, 1, 2), 17))
print("bound(1e-6, 1, 1, 0.05, 0.01, 10, 0.25)", mp.nstr(bound(f("1e-6"), 1, 1, f("0.05"), f("0.01"), 10, f("0.25")), 17))
print("theta0(1, 2, 0.1, 0.01)", mp.nstr(mp.log(5) / mp.log(100), 17))
